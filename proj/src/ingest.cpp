#include "kaczfact/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "kaczfact/datagen.hpp"
#include "kaczfact/errors.hpp"

namespace kaczfact {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

int parse_rating(const std::string& field, const std::string& where) {
    double value = 0.0;
    if (!parse_double(field, value))
        throw ParseError(where + ": rating `" + field + "` is not numeric");
    if (value != std::floor(value) || value < 1.0 || value > 5.0)
        throw InvalidRating(where + ": rating `" + field + "` outside 1..5");
    return static_cast<int>(value);
}

}  // namespace

RatingsData load_ratings(const std::filesystem::path& path, Index limit) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    RatingsData data;
    std::vector<Triplet> triplets;
    std::string line;
    Index line_no = 0;
    Index read = 0;
    bool first_content_line = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::string where = path.filename().string() + ":" + std::to_string(line_no);
        const auto fields = split_csv(line);
        if (fields.size() != 3 && fields.size() != 4)
            throw ParseError(where + ": expected reviewer_id,product_id,rating[,timestamp]");

        if (first_content_line) {
            first_content_line = false;
            double probe = 0.0;
            if (!parse_double(fields[2], probe)) continue;  // header line
        }
        if (fields[0].empty() || fields[1].empty())
            throw ParseError(where + ": empty reviewer or product id");
        const int rating = parse_rating(fields[2], where);

        const auto row_it = data.ids.reviewer_to_row.find(fields[0]);
        Index row;
        if (row_it == data.ids.reviewer_to_row.end()) {
            row = data.ids.row_to_reviewer.size();
            data.ids.reviewer_to_row.emplace(fields[0], row);
            data.ids.row_to_reviewer.push_back(fields[0]);
        } else {
            row = row_it->second;
        }
        const auto col_it = data.ids.product_to_col.find(fields[1]);
        Index col;
        if (col_it == data.ids.product_to_col.end()) {
            col = data.ids.col_to_product.size();
            data.ids.product_to_col.emplace(fields[1], col);
            data.ids.col_to_product.push_back(fields[1]);
        } else {
            col = col_it->second;
        }
        triplets.push_back({row, col, static_cast<double>(rating)});
        ++read;
        if (limit > 0 && read >= limit) break;
    }

    if (triplets.empty()) throw EmptyFile(path.string() + ": no ratings found");

    Index duplicates = 0;
    data.x = SparseMatrix::from_triplets(data.ids.row_to_reviewer.size(),
                                         data.ids.col_to_product.size(), std::move(triplets),
                                         &duplicates);
    data.report.rows = data.x.rows();
    data.report.cols = data.x.cols();
    data.report.nnz = data.x.nnz();
    data.report.sparsity = sparsity(data.x);
    data.report.triples_read = read;
    data.report.duplicates = duplicates;
    return data;
}

MatrixReport matrix_report(const SparseMatrix& x) {
    MatrixReport report;
    report.rows = x.rows();
    report.cols = x.cols();
    report.nnz = x.nnz();
    report.sparsity = sparsity(x);
    if (x.nnz() > 0) {
        const auto [lo, hi] = std::minmax_element(x.values().begin(), x.values().end());
        report.min_stored = *lo;
        report.max_stored = *hi;
    }
    return report;
}

}  // namespace kaczfact
