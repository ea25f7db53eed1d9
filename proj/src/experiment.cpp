#include "kaczfact/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kaczfact/datagen.hpp"
#include "kaczfact/ingest.hpp"
#include "kaczfact/matrix_market.hpp"

namespace kaczfact {

namespace {

int trial_thread_count(Index trials) {
#ifdef _OPENMP
    int threads = omp_get_max_threads();
    if (const char* env = std::getenv("KACZFACT_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) threads = parsed;
    }
    return static_cast<int>(std::min<Index>(threads, trials));
#else
    (void)trials;
    return 1;
#endif
}

std::filesystem::path trial_path(const std::filesystem::path& dir, Index trial) {
    char name[32];
    std::snprintf(name, sizeof(name), "trial_%03zu.csv", trial);
    return dir / name;
}

// Value of a summary column at `iteration`, linearly interpolated.
double interpolate(const std::vector<SummaryRecord>& records, double iteration,
                   double SummaryRecord::*field) {
    if (iteration <= static_cast<double>(records.front().iteration))
        return records.front().*field;
    for (Index i = 1; i < records.size(); ++i) {
        const double x0 = static_cast<double>(records[i - 1].iteration);
        const double x1 = static_cast<double>(records[i].iteration);
        if (iteration <= x1) {
            if (x1 == x0) return records[i].*field;
            const double w = (iteration - x0) / (x1 - x0);
            return records[i - 1].*field * (1.0 - w) + records[i].*field * w;
        }
    }
    return records.back().*field;
}

}  // namespace

SparseMatrix resolve_dataset(const ExperimentSpec& spec) {
    const std::string& d = spec.dataset;
    if (d == "synthetic-small") return gen_small_synthetic(spec.config.seed).x;
    if (d == "synthetic-large") return gen_large_synthetic(spec.config.seed).x;
    if (d.rfind("csv:", 0) == 0) return load_ratings(d.substr(4)).x;
    if (d.rfind("mtx:", 0) == 0) return read_matrix_market(d.substr(4));
    throw InvalidConfig("unknown dataset `" + d +
                        "` (expected synthetic-small, synthetic-large, csv:<path> or mtx:<path>)");
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    const SparseMatrix x = resolve_dataset(spec);
    return run_experiment(spec, x);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const SparseMatrix& x) {
    if (spec.trials < 1) throw InvalidConfig("run_experiment: need at least one trial");
    std::filesystem::create_directories(spec.out_dir);

    const Index trials = spec.trials;
    std::vector<std::vector<TraceRecord>> traces(trials);
    std::string failure;

    const int threads = trial_thread_count(trials);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long t = 0; t < static_cast<long long>(trials); ++t) {
        try {
            FactorizationConfig config = spec.config;
            config.seed = spec.config.seed ^ static_cast<std::uint64_t>(t + 1);
            FactorizeResult result = factorize(x, config);
            for (TraceRecord& rec : result.trace) rec.trial = static_cast<Index>(t);
            traces[t] = std::move(result.trace);
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw Error("run_experiment: trial failed: " + failure);

    ExperimentResult out;
    for (Index t = 0; t < trials; ++t) {
        const auto path = trial_path(spec.out_dir, t);
        write_trace_csv(path, traces[t]);
        out.trace_paths.push_back(path);
        out.final_errors.push_back(traces[t].back().relative_error);
        out.final_wall_times.push_back(traces[t].back().wall_time_s);
    }
    out.summary = summarize_trials(traces);
    out.summary_path = spec.out_dir / "summary.csv";
    write_summary_csv(out.summary_path, out.summary);
    return out;
}

MemoryFootprint memory_footprint(const FactorizationConfig& config, Index m, Index n, Index k) {
    const bool exact = config.solver.kind == SolverKind::ExactLS;
    const bool single = config.solver.kind == SolverKind::RK;
    const Index r1 =
        exact ? m : (single ? 1 : block_size_from_fraction(config.row_block_fraction, m));
    const Index r2 =
        exact ? n : (single ? 1 : block_size_from_fraction(config.col_block_fraction, n));

    MemoryFootprint f;
    f.exact_column_update_bytes = m * k * sizeof(double);
    f.block_column_update_bytes = r1 * k * sizeof(double);
    f.exact_row_update_bytes = n * k * sizeof(double);
    f.block_row_update_bytes = r2 * k * sizeof(double);
    f.row_sample_ratio = static_cast<double>(r1) / static_cast<double>(m);
    f.col_sample_ratio = static_cast<double>(r2) / static_cast<double>(n);
    f.combined_ratio = static_cast<double>(r1 + r2) / static_cast<double>(m + n);
    return f;
}

ComparisonReport compare_summaries(const std::filesystem::path& path_a,
                                   const std::filesystem::path& path_b,
                                   const std::vector<double>& thresholds) {
    const auto a = read_summary_csv(path_a);
    const auto b = read_summary_csv(path_b);
    if (a.empty() || b.empty()) throw GridMismatch("compare_summaries: empty summary");

    const double lo = std::max(static_cast<double>(a.front().iteration),
                               static_cast<double>(b.front().iteration));
    const double hi = std::min(static_cast<double>(a.back().iteration),
                               static_cast<double>(b.back().iteration));
    if (hi < lo) throw GridMismatch("compare_summaries: iteration grids do not overlap");

    // Common grid: a's iterations clipped to the overlap.
    std::vector<double> grid;
    for (const auto& rec : a) {
        const double it = static_cast<double>(rec.iteration);
        if (it >= lo && it <= hi) grid.push_back(it);
    }
    if (grid.empty()) grid.push_back(hi);

    ComparisonReport report;
    report.final_error_a = interpolate(a, hi, &SummaryRecord::mean_relative_error);
    report.final_error_b = interpolate(b, hi, &SummaryRecord::mean_relative_error);
    report.final_error_gap = report.final_error_a - report.final_error_b;
    const double wall_a = interpolate(a, hi, &SummaryRecord::mean_wall_time_s);
    const double wall_b = interpolate(b, hi, &SummaryRecord::mean_wall_time_s);
    report.wall_time_ratio = wall_b == 0.0 ? (wall_a == 0.0 ? 1.0 : HUGE_VAL) : wall_a / wall_b;

    for (double threshold : thresholds) {
        ThresholdCrossing crossing;
        crossing.threshold = threshold;
        for (double it : grid) {
            if (crossing.iteration_a < 0 &&
                interpolate(a, it, &SummaryRecord::mean_relative_error) < threshold)
                crossing.iteration_a = static_cast<long long>(it);
            if (crossing.iteration_b < 0 &&
                interpolate(b, it, &SummaryRecord::mean_relative_error) < threshold)
                crossing.iteration_b = static_cast<long long>(it);
        }
        report.crossings.push_back(crossing);
    }
    return report;
}

}  // namespace kaczfact
