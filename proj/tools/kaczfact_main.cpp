// kaczfact command line: run factorization experiments, generate synthetic
// data, ingest ratings CSVs, compare traces and report memory footprints.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "kaczfact/alternating.hpp"
#include "kaczfact/datagen.hpp"
#include "kaczfact/experiment.hpp"
#include "kaczfact/ingest.hpp"
#include "kaczfact/matrix_market.hpp"
#include "kaczfact/matrix_ops.hpp"

using namespace kaczfact;

namespace {

SolverKind parse_solver(const std::string& name, SamplingKind& sampling) {
    sampling = SamplingKind::Uniform;
    if (name == "als") return SolverKind::ExactLS;
    if (name == "rk") return SolverKind::RK;
    if (name == "ubrk") return SolverKind::BRK;
    if (name == "wbrk") {
        sampling = SamplingKind::Weighted;
        return SolverKind::BRK;
    }
    throw CLI::ValidationError("--solver", "expected one of als, rk, ubrk, wbrk");
}

void print_report(const MatrixReport& report) {
    std::cout << "dims: " << report.rows << " x " << report.cols << "\n"
              << "nnz: " << report.nnz << "\n"
              << "sparsity: " << report.sparsity << "\n"
              << "stored values: [" << report.min_stored << ", " << report.max_stored << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix factorization with block randomized Kaczmarz inner solvers"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "Run a factorization experiment and write traces");
    std::string dataset;
    std::string solver_name = "als";
    std::string scheme_name = "stochastic";
    std::string out_dir = "experiment_out";
    std::uint64_t seed = 0;
    std::size_t rank = 10, iters = 1000, subiters = 1, trials = 1, trace_interval = 10;
    double row_frac = 1.0, col_frac = 1.0, epsilon = -1.0;
    run->add_option("--dataset", dataset,
                    "synthetic-small | synthetic-large | csv:<path> | mtx:<path>")
        ->required();
    run->add_option("--rank", rank, "factor rank k");
    run->add_option("--solver", solver_name, "als | rk | ubrk | wbrk");
    run->add_option("--row-block-frac", row_frac, "fraction of rows sampled per column update");
    run->add_option("--col-block-frac", col_frac, "fraction of columns sampled per row update");
    run->add_option("--scheme", scheme_name, "stochastic | cyclic");
    run->add_option("--iters", iters, "alternating iterations");
    run->add_option("--subiters", subiters, "inner solver subiterations L");
    run->add_option("--epsilon", epsilon, "subiteration exit tolerance (<0 = 1e-8*||b||)");
    run->add_option("--seed", seed, "base RNG seed");
    run->add_option("--trials", trials, "independent trials to average");
    run->add_option("--trace-interval", trace_interval, "iterations between trace records");
    run->add_option("--out", out_dir, "output directory for trial and summary CSVs");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset and report on it");
    std::string gen_dataset = "synthetic-small";
    std::string gen_out;
    std::uint64_t gen_seed = 0;
    gen->add_option("--dataset", gen_dataset, "synthetic-small | synthetic-large");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "write the matrix in Matrix Market format");

    // ---- ingest ----
    auto* ingest = app.add_subcommand("ingest", "Load a ratings CSV into a sparse matrix");
    std::string ingest_input, ingest_out;
    std::size_t ingest_limit = 0;
    ingest->add_option("--input", ingest_input, "CSV of reviewer_id,product_id,rating[,ts]")
        ->required();
    ingest->add_option("--limit", ingest_limit, "cap on data rows read (0 = all)");
    ingest->add_option("--out", ingest_out, "write the matrix in Matrix Market format");

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "Compare two summary CSVs");
    std::string cmp_a, cmp_b;
    std::vector<double> thresholds{0.5, 0.2};
    compare->add_option("--a", cmp_a, "first summary.csv")->required();
    compare->add_option("--b", cmp_b, "second summary.csv")->required();
    compare->add_option("--threshold", thresholds, "relative-error crossing thresholds");

    // ---- memory ----
    auto* memory = app.add_subcommand("memory", "Per-update working-set estimate");
    std::size_t mem_m = 0, mem_n = 0, mem_k = 0;
    double mem_row_frac = 1.0, mem_col_frac = 1.0;
    memory->add_option("--m", mem_m, "data rows")->required();
    memory->add_option("--n", mem_n, "data columns")->required();
    memory->add_option("--rank", mem_k, "factor rank k")->required();
    memory->add_option("--row-block-frac", mem_row_frac, "fraction of rows sampled");
    memory->add_option("--col-block-frac", mem_col_frac, "fraction of columns sampled");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ExperimentSpec spec;
            spec.dataset = dataset;
            spec.config.rank = rank;
            spec.config.scheme =
                scheme_name == "cyclic" ? Scheme::Cyclic : Scheme::Stochastic;
            if (scheme_name != "cyclic" && scheme_name != "stochastic")
                throw InvalidConfig("--scheme expects stochastic or cyclic");
            spec.config.solver.kind = parse_solver(solver_name, spec.config.solver.sampling);
            spec.config.solver.subiterations = subiters;
            spec.config.solver.epsilon = epsilon;
            spec.config.row_block_fraction = row_frac;
            spec.config.col_block_fraction = col_frac;
            spec.config.alternating_iterations = iters;
            spec.config.seed = seed;
            spec.config.trace_interval = trace_interval;
            spec.trials = trials;
            spec.out_dir = out_dir;

            const auto result = run_experiment(spec);
            std::cout << "wrote " << result.trace_paths.size() << " trial trace(s) and "
                      << result.summary_path.string() << "\n";
            std::cout << "final mean relative error: "
                      << result.summary.back().mean_relative_error << "\n";
            std::cout << "final mean wall time: " << result.summary.back().mean_wall_time_s
                      << " s\n";
        } else if (*gen) {
            SyntheticData data;
            if (gen_dataset == "synthetic-small") {
                data = gen_small_synthetic(gen_seed);
            } else if (gen_dataset == "synthetic-large") {
                data = gen_large_synthetic(gen_seed);
            } else {
                throw InvalidConfig("gen: dataset must be synthetic-small or synthetic-large");
            }
            print_report(matrix_report(data.x));
            // rank of the product is capped by the right factor's rank
            std::cout << "right-factor rank (bounds rank of X): " << numerical_rank(data.s)
                      << "\n";
            if (data.x.rows() <= 1000)
                std::cout << "numerical rank of X: " << numerical_rank(data.x.to_dense())
                          << "\n";
            if (!gen_out.empty()) {
                write_matrix_market(data.x, gen_out);
                std::cout << "wrote " << gen_out << "\n";
            }
        } else if (*ingest) {
            const auto data = load_ratings(ingest_input, ingest_limit);
            std::cout << "triples read: " << data.report.triples_read << "\n"
                      << "duplicates (last occurrence kept): " << data.report.duplicates
                      << "\n";
            print_report(matrix_report(data.x));
            if (!ingest_out.empty()) {
                write_matrix_market(data.x, ingest_out);
                std::cout << "wrote " << ingest_out << "\n";
            }
        } else if (*compare) {
            const auto report = compare_summaries(cmp_a, cmp_b, thresholds);
            std::cout << "final error a: " << report.final_error_a << "\n"
                      << "final error b: " << report.final_error_b << "\n"
                      << "final error gap (a - b): " << report.final_error_gap << "\n"
                      << "wall time ratio (a / b): " << report.wall_time_ratio << "\n";
            for (const auto& crossing : report.crossings) {
                std::cout << "first iteration below " << crossing.threshold << ": a=";
                if (crossing.iteration_a < 0)
                    std::cout << "never";
                else
                    std::cout << crossing.iteration_a;
                std::cout << " b=";
                if (crossing.iteration_b < 0)
                    std::cout << "never";
                else
                    std::cout << crossing.iteration_b;
                std::cout << "\n";
            }
        } else if (*memory) {
            FactorizationConfig config;
            config.solver.kind = SolverKind::BRK;
            config.row_block_fraction = mem_row_frac;
            config.col_block_fraction = mem_col_frac;
            const auto f = memory_footprint(config, mem_m, mem_n, mem_k);
            std::cout << "column update (reads rows of A): exact "
                      << f.exact_column_update_bytes << " B, block "
                      << f.block_column_update_bytes << " B, sampled row share "
                      << f.row_sample_ratio << "\n";
            std::cout << "row update (reads columns of S): exact " << f.exact_row_update_bytes
                      << " B, block " << f.block_row_update_bytes << " B, sampled column share "
                      << f.col_sample_ratio << "\n";
            std::cout << "combined working-set ratio vs exact solver: " << f.combined_ratio
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
