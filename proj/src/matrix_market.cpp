#include "kaczfact/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "kaczfact/errors.hpp"

namespace kaczfact {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

void write_matrix_market(const SparseMatrix& x, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << x.rows() << " " << x.cols() << " " << x.nnz() << "\n";
    char buf[64];
    for (Index i = 0; i < x.rows(); ++i) {
        const auto row = x.row(i);
        for (Index p = 0; p < row.cols.size(); ++p) {
            std::snprintf(buf, sizeof(buf), "%zu %zu %.17g\n", i + 1, row.cols[p] + 1,
                          row.vals[p]);
            out << buf;
        }
    }
    if (!out) throw IoError("write failed for " + path.string());
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    Index line_no = 0;
    if (!std::getline(in, line)) throw EmptyFile(path.string() + " is empty");
    ++line_no;
    const std::string header = lower(line);
    if (header.rfind("%%matrixmarket", 0) != 0 ||
        header.find("coordinate") == std::string::npos ||
        (header.find("real") == std::string::npos &&
         header.find("integer") == std::string::npos) ||
        header.find("general") == std::string::npos)
        throw ParseError(path.string() + ":1: unsupported Matrix Market header");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] != '%') break;
    }
    Index rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream dims(line);
        if (!(dims >> rows >> cols >> nnz))
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected `rows cols nnz`");
    }

    std::vector<Triplet> entries;
    entries.reserve(nnz);
    while (entries.size() < nnz) {
        if (!std::getline(in, line))
            throw ParseError(path.string() + ": fewer entries than the header declares");
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream fields(line);
        Index i = 0, j = 0;
        double v = 0.0;
        if (!(fields >> i >> j >> v) || i < 1 || j < 1)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected `row col value` with 1-based indices");
        entries.push_back({i - 1, j - 1, v});
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

}  // namespace kaczfact
