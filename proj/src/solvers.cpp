#include "kaczfact/solvers.hpp"

#include <string>

#include "kaczfact/kernels.hpp"
#include "kaczfact/matrix_ops.hpp"

namespace kaczfact {

namespace {

std::vector<double> gather(std::span<const double> v, std::span<const Index> indices) {
    std::vector<double> out(indices.size());
    for (Index t = 0; t < indices.size(); ++t) {
        if (indices[t] >= v.size()) throw IndexOutOfRange("gather: index out of range");
        out[t] = v[indices[t]];
    }
    return out;
}

}  // namespace

std::vector<double> kaczmarz_project(const DenseMatrix& block, std::span<const double> b_block,
                                     std::span<const double> y) {
    if (b_block.size() != block.rows() || y.size() != block.cols())
        throw DimensionMismatch("kaczmarz_project: shapes do not conform");
    // residual of the sampled equations at the current iterate
    std::vector<double> r(block.rows());
    for (Index t = 0; t < block.rows(); ++t) r[t] = b_block[t] - dot(block.row(t), y);
    const std::vector<double> d = least_squares_solve(block, r);
    std::vector<double> out(y.begin(), y.end());
    for (Index l = 0; l < out.size(); ++l) out[l] += d[l];
    return out;
}

std::vector<double> brk_step(const DenseMatrix& m, std::span<const double> b,
                             std::span<const double> y, const IndexSample& tau) {
    if (b.size() != m.rows() || y.size() != m.cols())
        throw DimensionMismatch("brk_step: shapes do not conform");
    const DenseMatrix block = row_slice(m, tau.indices);
    const std::vector<double> b_block = gather(b, tau.indices);
    return kaczmarz_project(block, b_block, y);
}

std::vector<double> brk_solve(const DenseMatrix& m, std::span<const double> b,
                              std::span<const double> y0, const SolverSpec& spec, Rng& rng) {
    if (spec.kind == SolverKind::ExactLS)
        throw InvalidConfig("brk_solve: solver kind must be RK or BRK");
    if (spec.subiterations < 1) throw InvalidConfig("brk_solve: need at least one subiteration");
    const Index r = spec.effective_block_size();
    if (r > m.rows())
        throw BlockTooLarge("brk_solve: block size " + std::to_string(r) + " exceeds " +
                            std::to_string(m.rows()) + " equations");

    std::vector<double> weights;
    if (spec.sampling == SamplingKind::Weighted) weights = kernels::row_sq_norms_serial(m);

    const Index L = spec.subiterations;
    const double epsilon = spec.epsilon < 0.0 ? 1e-8 * norm2(b) : spec.epsilon;
    std::vector<double> y(y0.begin(), y0.end());
    for (Index l = 0; l < L; ++l) {
        const IndexSample tau = spec.sampling == SamplingKind::Weighted
                                    ? weighted_block(weights, r, rng)
                                    : uniform_block(m.rows(), r, rng);
        y = brk_step(m, b, y, tau);
        if (l + 1 < L && system_residual_norm(m, y, b) < epsilon) break;
    }
    return y;
}

std::vector<double> brk_update_column(const DenseMatrix& a, const SparseMatrix& x,
                                      const DenseMatrix& s, Index i, const IndexSample& tau1) {
    if (i >= x.cols()) throw IndexOutOfRange("brk_update_column: column out of range");
    if (a.rows() != x.rows() || s.rows() != a.cols() || s.cols() != x.cols())
        throw DimensionMismatch("brk_update_column: shapes do not conform");
    const DenseMatrix block = row_slice(a, tau1.indices);
    const std::vector<double> b_block = sparse_entry_slice(x, tau1.indices, i);
    return kaczmarz_project(block, b_block, s.col(i));
}

std::vector<double> brk_update_row(const DenseMatrix& a, const SparseMatrix& x,
                                   const DenseMatrix& s, Index j, const IndexSample& tau2) {
    if (j >= x.rows()) throw IndexOutOfRange("brk_update_row: row out of range");
    if (a.rows() != x.rows() || s.rows() != a.cols() || s.cols() != x.cols())
        throw DimensionMismatch("brk_update_row: shapes do not conform");
    const DenseMatrix block = col_slice_transposed(s, tau2.indices);
    const std::vector<double> b_block = sparse_row_gather(x, j, tau2.indices);
    return kaczmarz_project(block, b_block, a.row(j));
}

std::vector<double> exact_ls_column(const DenseMatrix& a, const SparseMatrix& x, Index i) {
    if (i >= x.cols()) throw IndexOutOfRange("exact_ls_column: column out of range");
    if (a.rows() != x.rows()) throw DimensionMismatch("exact_ls_column: row counts differ");
    return least_squares_solve(a, sparse_dense_column(x, i));
}

std::vector<double> exact_ls_row(const DenseMatrix& s, const SparseMatrix& x, Index j) {
    if (j >= x.rows()) throw IndexOutOfRange("exact_ls_row: row out of range");
    if (s.cols() != x.cols()) throw DimensionMismatch("exact_ls_row: column counts differ");
    const IndexSample all = IndexSample::full(s.cols());
    const DenseMatrix st = col_slice_transposed(s, all.indices);
    return least_squares_solve(st, sparse_dense_row(x, j));
}

}  // namespace kaczfact
