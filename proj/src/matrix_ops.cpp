#include "kaczfact/matrix_ops.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kaczfact/kernels.hpp"

namespace kaczfact {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> map_of(const DenseMatrix& m) {
    return {m.data().data(), static_cast<Eigen::Index>(m.rows()),
            static_cast<Eigen::Index>(m.cols())};
}

double kahan_sum_of_squares(std::span<const double> values) {
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double term = v * v;
        const double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

}  // namespace

double frobenius_norm(const DenseMatrix& m) {
    return std::sqrt(kahan_sum_of_squares(m.data()));
}

double frobenius_norm(const SparseMatrix& m) {
    return std::sqrt(kahan_sum_of_squares(m.values()));
}

double relative_error(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                      Index panel_rows) {
    if (a.rows() != x.rows() || s.cols() != x.cols() || a.cols() != s.rows())
        throw DimensionMismatch("relative_error: shapes do not conform");
    const double x_norm = frobenius_norm(x);
    if (x_norm == 0.0) throw ZeroDataMatrix("relative_error: data matrix is zero");
    const double residual_sq = kernels::residual_fro_sq_parallel(x, a, s, panel_rows);
    return std::sqrt(residual_sq) / x_norm;
}

std::vector<double> least_squares_solve(const DenseMatrix& m, std::span<const double> b) {
    if (b.size() != m.rows())
        throw DimensionMismatch("least_squares_solve: rhs length does not match row count");
    const Index q = m.cols();
    if (m.rows() == 0 || q == 0) return std::vector<double>(q, 0.0);
    Eigen::MatrixXd mat = map_of(m);
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
    // Complete orthogonal decomposition: rank-revealing, returns the
    // minimum-norm solution also for rank-deficient systems.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(mat);
    Eigen::VectorXd y = cod.solve(rhs);
    return {y.data(), y.data() + y.size()};
}

std::vector<double> singular_values(const DenseMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::MatrixXd mat = map_of(m);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(mat);
    const auto& sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

Index numerical_rank(const DenseMatrix& m, double tol) {
    const auto sv = singular_values(m);
    if (sv.empty()) return 0;
    if (tol == 0.0)
        tol = static_cast<double>(std::max(m.rows(), m.cols())) *
              std::numeric_limits<double>::epsilon();
    const double cutoff = tol * sv.front();
    Index rank = 0;
    for (double s : sv)
        if (s > cutoff) ++rank;
    return rank;
}

double smallest_singular_value(const DenseMatrix& m) {
    if (m.is_zero()) throw ZeroMatrix("smallest_singular_value: matrix is zero");
    const auto sv = singular_values(m);
    return sv.back();
}

DenseMatrix row_slice(const DenseMatrix& m, std::span<const Index> indices) {
    DenseMatrix out(indices.size(), m.cols());
    for (Index t = 0; t < indices.size(); ++t) {
        if (indices[t] >= m.rows()) throw IndexOutOfRange("row_slice: index out of range");
        out.set_row(t, m.row(indices[t]));
    }
    return out;
}

DenseMatrix col_slice(const DenseMatrix& m, std::span<const Index> indices) {
    DenseMatrix out(m.rows(), indices.size());
    for (Index t = 0; t < indices.size(); ++t)
        if (indices[t] >= m.cols()) throw IndexOutOfRange("col_slice: index out of range");
    for (Index i = 0; i < m.rows(); ++i) {
        const auto src = m.row(i);
        auto dst = out.row(i);
        for (Index t = 0; t < indices.size(); ++t) dst[t] = src[indices[t]];
    }
    return out;
}

DenseMatrix col_slice_transposed(const DenseMatrix& m, std::span<const Index> indices) {
    const Index k = m.rows();
    DenseMatrix block(indices.size(), k);
    for (Index t = 0; t < indices.size(); ++t) {
        if (indices[t] >= m.cols())
            throw IndexOutOfRange("col_slice_transposed: index out of range");
        for (Index l = 0; l < k; ++l) block(t, l) = m(l, indices[t]);
    }
    return block;
}

std::vector<double> sparse_dense_column(const SparseMatrix& x, Index col) {
    if (col >= x.cols()) throw IndexOutOfRange("sparse_dense_column: column out of range");
    std::vector<double> out(x.rows(), 0.0);
    for (Index i = 0; i < x.rows(); ++i) {
        const auto r = x.row(i);
        const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), col);
        if (it != r.cols.end() && *it == col)
            out[i] = r.vals[static_cast<Index>(it - r.cols.begin())];
    }
    return out;
}

std::vector<double> sparse_dense_row(const SparseMatrix& x, Index row) {
    if (row >= x.rows()) throw IndexOutOfRange("sparse_dense_row: row out of range");
    std::vector<double> out(x.cols(), 0.0);
    const auto r = x.row(row);
    for (Index p = 0; p < r.cols.size(); ++p) out[r.cols[p]] = r.vals[p];
    return out;
}

std::vector<double> sparse_entry_slice(const SparseMatrix& x, std::span<const Index> rows,
                                       Index col) {
    if (col >= x.cols()) throw IndexOutOfRange("sparse_entry_slice: column out of range");
    std::vector<double> out(rows.size(), 0.0);
    for (Index t = 0; t < rows.size(); ++t) {
        if (rows[t] >= x.rows()) throw IndexOutOfRange("sparse_entry_slice: row out of range");
        const auto r = x.row(rows[t]);
        const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), col);
        if (it != r.cols.end() && *it == col)
            out[t] = r.vals[static_cast<Index>(it - r.cols.begin())];
    }
    return out;
}

std::vector<double> sparse_row_gather(const SparseMatrix& x, Index row,
                                      std::span<const Index> cols) {
    if (row >= x.rows()) throw IndexOutOfRange("sparse_row_gather: row out of range");
    const auto r = x.row(row);
    std::vector<double> out(cols.size(), 0.0);
    for (Index t = 0; t < cols.size(); ++t) {
        if (cols[t] >= x.cols()) throw IndexOutOfRange("sparse_row_gather: column out of range");
        const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), cols[t]);
        if (it != r.cols.end() && *it == cols[t])
            out[t] = r.vals[static_cast<Index>(it - r.cols.begin())];
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    double sum = 0.0;
    for (Index i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

double norm2(std::span<const double> v) { return std::sqrt(kahan_sum_of_squares(v)); }

double system_residual_norm(const DenseMatrix& m, std::span<const double> y,
                            std::span<const double> b) {
    if (y.size() != m.cols() || b.size() != m.rows())
        throw DimensionMismatch("system_residual_norm: shapes do not conform");
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
    return (map_of(m) * yv - bv).norm();
}

}  // namespace kaczfact
