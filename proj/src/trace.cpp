#include "kaczfact/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "kaczfact/errors.hpp"

namespace kaczfact {

namespace {

constexpr const char* kTraceHeader =
    "trial,iteration,epoch,relative_error,wall_time_s,rows_touched,cols_touched";
constexpr const char* kSummaryHeader = "iteration,epoch,mean_relative_error,mean_wall_time_s";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << kTraceHeader << "\n";
    for (const TraceRecord& r : records) {
        out << r.trial << "," << r.iteration << "," << r.epoch << ","
            << format_double(r.relative_error) << "," << format_double(r.wall_time_s) << ","
            << r.rows_touched << "," << r.cols_touched << "\n";
    }
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw EmptyFile(path.string() + " is empty");
    std::vector<TraceRecord> records;
    Index line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 7)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 7 fields");
        TraceRecord r;
        r.trial = std::stoull(f[0]);
        r.iteration = std::stoull(f[1]);
        r.epoch = std::stoull(f[2]);
        r.relative_error = std::stod(f[3]);
        r.wall_time_s = std::stod(f[4]);
        r.rows_touched = std::stoull(f[5]);
        r.cols_touched = std::stoull(f[6]);
        records.push_back(r);
    }
    return records;
}

std::vector<SummaryRecord> summarize_trials(const std::vector<std::vector<TraceRecord>>& trials) {
    if (trials.empty()) return {};
    const Index rows = trials.front().size();
    for (const auto& t : trials) {
        if (t.size() != rows)
            throw GridMismatch("summarize_trials: trials have different record counts");
        for (Index i = 0; i < rows; ++i)
            if (t[i].iteration != trials.front()[i].iteration)
                throw GridMismatch("summarize_trials: trials have different iteration grids");
    }
    std::vector<SummaryRecord> out(rows);
    for (Index i = 0; i < rows; ++i) {
        SummaryRecord& s = out[i];
        s.iteration = trials.front()[i].iteration;
        s.epoch = trials.front()[i].epoch;
        double err = 0.0, wall = 0.0;
        for (const auto& t : trials) {
            err += t[i].relative_error;
            wall += t[i].wall_time_s;
        }
        s.mean_relative_error = err / static_cast<double>(trials.size());
        s.mean_wall_time_s = wall / static_cast<double>(trials.size());
    }
    return out;
}

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRecord>& records) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << kSummaryHeader << "\n";
    for (const SummaryRecord& r : records) {
        out << r.iteration << "," << r.epoch << "," << format_double(r.mean_relative_error)
            << "," << format_double(r.mean_wall_time_s) << "\n";
    }
    if (!out) throw IoError("write failed for " + path.string());
}

std::vector<SummaryRecord> read_summary_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw EmptyFile(path.string() + " is empty");
    std::vector<SummaryRecord> records;
    Index line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 4)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 4 fields");
        SummaryRecord r;
        r.iteration = std::stoull(f[0]);
        r.epoch = std::stoull(f[1]);
        r.mean_relative_error = std::stod(f[2]);
        r.mean_wall_time_s = std::stod(f[3]);
        records.push_back(r);
    }
    return records;
}

}  // namespace kaczfact
