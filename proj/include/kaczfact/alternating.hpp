#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/rng.hpp"
#include "kaczfact/solvers.hpp"
#include "kaczfact/sparse_matrix.hpp"
#include "kaczfact/trace.hpp"

namespace kaczfact {

enum class Scheme { Stochastic, Cyclic };

struct FactorizationConfig {
    Index rank = 1;
    Scheme scheme = Scheme::Stochastic;
    SolverSpec solver;
    double row_block_fraction = 1.0;  // of m, for column updates of S
    double col_block_fraction = 1.0;  // of n, for row updates of A
    Index alternating_iterations = 0;
    std::uint64_t seed = 0;
    Index trace_interval = 1;
};

struct FactorPair {
    DenseMatrix a;  // m x k
    DenseMatrix s;  // k x n
    Index iteration = 0;
    Index epoch = 0;
};

struct StationarityReport {
    double lhs = 0.0;    // sigma_min(S S^T) * ||row movement||
    double delta = 0.0;  // row gradient norm at the updated row
    bool satisfied = false;
};

struct FactorizeResult {
    FactorPair factors;
    std::vector<TraceRecord> trace;
};

// Fraction -> block size, round half up with a floor of one.
Index block_size_from_fraction(double fraction, Index universe);

// A and S filled with i.i.d. uniform [0,1) entries, row-major fill order.
FactorPair init_factors(Index m, Index n, Index k, Rng& rng);

// Epoch accounting: min(m, n) stochastic iterations per epoch; one cyclic
// iteration is one epoch.
Index epoch_of(Index iteration, Index m, Index n, Scheme scheme);

// The alternating driver. Stochastic mode draws update targets without
// replacement on the proportional schedule; cyclic mode sweeps all rows of A
// then all columns of S per iteration. Emits a trace record at iteration 0,
// every trace_interval iterations, and at the final iteration.
FactorizeResult factorize(const SparseMatrix& x, const FactorizationConfig& config);

// Movement bound at a row update: checks
//   sigma_min(S S^T) * ||a_next_row - A_prev[i, :]|| <= delta + 1e-8 (1 + delta)
// with delta = || S (X[i, :]^T - S^T a_next_row^T) ||.
StationarityReport stationarity_check(const DenseMatrix& a_prev,
                                      std::span<const double> a_next_row, const DenseMatrix& s,
                                      const SparseMatrix& x, Index i);

}  // namespace kaczfact
