#pragma once

#include <span>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/sampling.hpp"
#include "kaczfact/sparse_matrix.hpp"

namespace kaczfact {

enum class SolverKind { ExactLS, RK, BRK };
enum class SamplingKind { Uniform, Weighted };

struct SolverSpec {
    SolverKind kind = SolverKind::ExactLS;
    Index block_size = 1;       // RK is pinned to single-row blocks
    Index subiterations = 1;    // L
    double epsilon = -1.0;      // subiteration exit tolerance; < 0 selects 1e-8 * ||b||
    SamplingKind sampling = SamplingKind::Uniform;

    Index effective_block_size() const { return kind == SolverKind::RK ? 1 : block_size; }
};

// One Kaczmarz projection: y + block^+ (b_block - block * y). Orthogonally
// projects y onto the solution set of the block when it is consistent.
std::vector<double> kaczmarz_project(const DenseMatrix& block, std::span<const double> b_block,
                                     std::span<const double> y);

// The same step phrased on the full system: rows tau of M and entries tau of b.
std::vector<double> brk_step(const DenseMatrix& m, std::span<const double> b,
                             std::span<const double> y, const IndexSample& tau);

// L block steps with a fresh block each subiteration; exits early once the
// full residual ||M y - b|| drops below epsilon.
std::vector<double> brk_solve(const DenseMatrix& m, std::span<const double> b,
                              std::span<const double> y0, const SolverSpec& spec, Rng& rng);

// Updated column S[:, i] using rows tau1 of A and entries X[tau1, i] only.
std::vector<double> brk_update_column(const DenseMatrix& a, const SparseMatrix& x,
                                      const DenseMatrix& s, Index i, const IndexSample& tau1);

// Updated row A[j, :] using columns tau2 of S and entries X[j, tau2] only;
// the transpose dual of brk_update_column.
std::vector<double> brk_update_row(const DenseMatrix& a, const SparseMatrix& x,
                                   const DenseMatrix& s, Index j, const IndexSample& tau2);

// Exact minimum-norm least-squares updates (the ALS inner solver).
std::vector<double> exact_ls_column(const DenseMatrix& a, const SparseMatrix& x, Index i);
std::vector<double> exact_ls_row(const DenseMatrix& s, const SparseMatrix& x, Index j);

}  // namespace kaczfact
