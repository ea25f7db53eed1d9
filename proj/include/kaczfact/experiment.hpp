#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kaczfact/alternating.hpp"
#include "kaczfact/sparse_matrix.hpp"
#include "kaczfact/trace.hpp"

namespace kaczfact {

// dataset: "synthetic-small", "synthetic-large", "csv:<path>" or "mtx:<path>".
struct ExperimentSpec {
    std::string dataset;
    FactorizationConfig config;
    Index trials = 1;
    std::filesystem::path out_dir;
};

struct ExperimentResult {
    std::vector<std::filesystem::path> trace_paths;
    std::filesystem::path summary_path;
    std::vector<SummaryRecord> summary;
    std::vector<double> final_errors;       // per trial
    std::vector<double> final_wall_times;   // per trial
};

// Resolves spec.dataset to a matrix. Synthetic datasets derive from
// spec.config.seed.
SparseMatrix resolve_dataset(const ExperimentSpec& spec);

// Runs `trials` independent factorize runs, trial t seeded with
// seed XOR (t + 1), writes trial_<t>.csv per trial plus summary.csv.
// KACZFACT_THREADS caps trial parallelism.
ExperimentResult run_experiment(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec, const SparseMatrix& x);

// Per-update working-set accounting behind the memory claims: an exact column
// update reads all m rows of the left factor, a block update reads only r1.
struct MemoryFootprint {
    Index exact_column_update_bytes = 0;  // m * k doubles
    Index block_column_update_bytes = 0;  // r1 * k doubles
    Index exact_row_update_bytes = 0;     // n * k doubles
    Index block_row_update_bytes = 0;     // r2 * k doubles
    double row_sample_ratio = 0.0;  // r1 / m, the sampled share of rows
    double col_sample_ratio = 0.0;  // r2 / n
    double combined_ratio = 0.0;    // (r1 + r2) / (m + n)
};

MemoryFootprint memory_footprint(const FactorizationConfig& config, Index m, Index n, Index k);

struct ThresholdCrossing {
    double threshold = 0.0;
    // First iteration at which mean relative error is below threshold;
    // -1 when never crossed.
    long long iteration_a = -1;
    long long iteration_b = -1;
};

struct ComparisonReport {
    double final_error_a = 0.0;
    double final_error_b = 0.0;
    double final_error_gap = 0.0;       // a - b
    double wall_time_ratio = 1.0;       // final a / final b
    std::vector<ThresholdCrossing> crossings;
};

// Compares two summary CSVs; when iteration grids differ the second file is
// interpolated onto the overlap of the grids.
ComparisonReport compare_summaries(const std::filesystem::path& path_a,
                                   const std::filesystem::path& path_b,
                                   const std::vector<double>& thresholds = {});

}  // namespace kaczfact
