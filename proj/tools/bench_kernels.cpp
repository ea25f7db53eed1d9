// Benchmark: OpenMP kernels against their serial reference implementations.
// Also verifies that both variants return identical results.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#include "kaczfact/datagen.hpp"
#include "kaczfact/kernels.hpp"
#include "kaczfact/matrix_ops.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace kaczfact;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = clock_type::now();
        f();
        best = std::min(best,
                        std::chrono::duration<double>(clock_type::now() - start).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-22s serial %8.4fs  parallel %8.4fs  speedup %5.2fx  identical: %s\n", name,
                serial, parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kaczfact kernel benchmark: serial reference vs OpenMP"};
    std::size_t rows = 20000;
    int reps = 3;
    app.add_option("--rows", rows, "row count of the synthetic instance");
    app.add_option("--reps", reps, "repetitions per measurement (best-of)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel kernels run serially\n");
#endif

    std::printf("instance: %zu x 1000, rank-50 synthetic factors\n", rows);
    const auto data = gen_large_synthetic_rows(rows, 1);

    bool all_identical = true;

    {
        double r_serial = 0.0, r_parallel = 0.0;
        const double t_serial = time_best_of(
            reps, [&] { r_serial = kernels::residual_fro_sq_serial(data.x, data.a, data.s, 1024); });
        const double t_parallel = time_best_of(reps, [&] {
            r_parallel = kernels::residual_fro_sq_parallel(data.x, data.a, data.s, 1024);
        });
        const bool same = r_serial == r_parallel;
        all_identical = all_identical && same;
        report("residual_fro_sq", t_serial, t_parallel, same);
    }

    {
        SparseMatrix p_serial, p_parallel;
        const double t_serial =
            time_best_of(reps, [&] { p_serial = kernels::factor_product_serial(data.a, data.s); });
        const double t_parallel = time_best_of(
            reps, [&] { p_parallel = kernels::factor_product_parallel(data.a, data.s); });
        const bool same = p_serial == p_parallel;
        all_identical = all_identical && same;
        report("factor_product", t_serial, t_parallel, same);
    }

    {
        std::vector<double> n_serial, n_parallel;
        const double t_serial =
            time_best_of(reps, [&] { n_serial = kernels::row_sq_norms_serial(data.a); });
        const double t_parallel =
            time_best_of(reps, [&] { n_parallel = kernels::row_sq_norms_parallel(data.a); });
        const bool same = n_serial == n_parallel;
        all_identical = all_identical && same;
        report("row_sq_norms", t_serial, t_parallel, same);
    }

    {
        std::vector<double> n_serial, n_parallel;
        const double t_serial =
            time_best_of(reps, [&] { n_serial = kernels::col_sq_norms_serial(data.s); });
        const double t_parallel =
            time_best_of(reps, [&] { n_parallel = kernels::col_sq_norms_parallel(data.s); });
        const bool same = n_serial == n_parallel;
        all_identical = all_identical && same;
        report("col_sq_norms", t_serial, t_parallel, same);
    }

    if (!all_identical) {
        std::cerr << "kernel outputs diverged between serial and parallel variants\n";
        return 1;
    }
    return 0;
}
