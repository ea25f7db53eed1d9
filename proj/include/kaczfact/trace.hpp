#pragma once

#include <filesystem>
#include <vector>

#include "kaczfact/dense_matrix.hpp"

namespace kaczfact {

// One benchmark observation. wall_time_s is accumulated algorithm time from a
// monotonic clock; trace evaluation itself is excluded. rows_touched /
// cols_touched count factor rows (columns) read by column (row) updates since
// the trial started.
struct TraceRecord {
    Index trial = 0;
    Index iteration = 0;
    Index epoch = 0;
    double relative_error = 0.0;
    double wall_time_s = 0.0;
    Index rows_touched = 0;
    Index cols_touched = 0;
};

struct SummaryRecord {
    Index iteration = 0;
    Index epoch = 0;
    double mean_relative_error = 0.0;
    double mean_wall_time_s = 0.0;
};

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);

// Per-iteration arithmetic means across trials. All trials must share one
// iteration grid.
std::vector<SummaryRecord> summarize_trials(const std::vector<std::vector<TraceRecord>>& trials);

void write_summary_csv(const std::filesystem::path& path,
                       const std::vector<SummaryRecord>& records);
std::vector<SummaryRecord> read_summary_csv(const std::filesystem::path& path);

}  // namespace kaczfact
