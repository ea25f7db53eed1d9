#include "kaczfact/kernels.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

namespace kaczfact::kernels {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;

ConstMap map_of(const DenseMatrix& m) {
    return ConstMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                    static_cast<Eigen::Index>(m.cols()));
}

// Residual contribution of rows [begin, end): ||X_panel - A_panel * S||_F^2,
// compensated summation.
double panel_residual_sq(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                         Index begin, Index end) {
    const Index h = end - begin;
    const Index n = s.cols();
    RowMajor panel(h, n);
    panel.noalias() =
        map_of(a).middleRows(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(h)) *
        map_of(s);
    double sum = 0.0, comp = 0.0;
    for (Index local = 0; local < h; ++local) {
        double* prow = panel.data() + local * n;
        const auto xrow = x.row(begin + local);
        for (Index p = 0; p < xrow.cols.size(); ++p) prow[xrow.cols[p]] -= xrow.vals[p];
        for (Index j = 0; j < n; ++j) {
            const double term = prow[j] * prow[j];
            const double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
    }
    return sum + comp;
}

double combine_partials(const std::vector<double>& partials) {
    double sum = 0.0;
    for (double p : partials) sum += p;
    return sum;
}

std::vector<Index> panel_bounds(Index rows, Index panel_rows) {
    std::vector<Index> bounds{0};
    for (Index b = 0; b < rows; b += panel_rows) bounds.push_back(std::min(rows, b + panel_rows));
    return bounds;
}

// Dense accumulation of one product row, then compression. `buffer` has
// length n and is zeroed on entry and exit.
void product_row(const DenseMatrix& a, const DenseMatrix& s, Index i, std::vector<double>& buffer,
                 std::vector<Index>& out_cols, std::vector<double>& out_vals) {
    const Index k = a.cols();
    const Index n = s.cols();
    const auto arow = a.row(i);
    for (Index l = 0; l < k; ++l) {
        const double w = arow[l];
        if (w == 0.0) continue;
        const auto srow = s.row(l);
        for (Index j = 0; j < n; ++j) buffer[j] += w * srow[j];
    }
    out_cols.clear();
    out_vals.clear();
    for (Index j = 0; j < n; ++j) {
        if (buffer[j] != 0.0) {
            out_cols.push_back(j);
            out_vals.push_back(buffer[j]);
        }
        buffer[j] = 0.0;
    }
}

SparseMatrix assemble_rows(Index rows, Index cols, const std::vector<std::vector<Index>>& row_cols,
                           const std::vector<std::vector<double>>& row_vals) {
    std::vector<Index> offsets(rows + 1, 0);
    for (Index i = 0; i < rows; ++i) offsets[i + 1] = offsets[i] + row_cols[i].size();
    std::vector<Index> col_indices;
    std::vector<double> values;
    col_indices.reserve(offsets[rows]);
    values.reserve(offsets[rows]);
    for (Index i = 0; i < rows; ++i) {
        col_indices.insert(col_indices.end(), row_cols[i].begin(), row_cols[i].end());
        values.insert(values.end(), row_vals[i].begin(), row_vals[i].end());
    }
    return SparseMatrix::from_csr(rows, cols, std::move(offsets), std::move(col_indices),
                                  std::move(values));
}

void check_product_dims(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s) {
    if (a.rows() != x.rows() || s.cols() != x.cols() || a.cols() != s.rows())
        throw DimensionMismatch("residual: shapes do not conform");
}

}  // namespace

double residual_fro_sq_serial(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                              Index panel_rows) {
    check_product_dims(x, a, s);
    const auto bounds = panel_bounds(x.rows(), panel_rows);
    std::vector<double> partials(bounds.size() - 1, 0.0);
    for (Index p = 0; p + 1 < bounds.size(); ++p)
        partials[p] = panel_residual_sq(x, a, s, bounds[p], bounds[p + 1]);
    return combine_partials(partials);
}

double residual_fro_sq_parallel(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                                Index panel_rows) {
    check_product_dims(x, a, s);
    const auto bounds = panel_bounds(x.rows(), panel_rows);
    const long long num_panels = static_cast<long long>(bounds.size()) - 1;
    std::vector<double> partials(num_panels, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (long long p = 0; p < num_panels; ++p)
        partials[p] = panel_residual_sq(x, a, s, bounds[p], bounds[p + 1]);
    return combine_partials(partials);
}

SparseMatrix factor_product_serial(const DenseMatrix& a, const DenseMatrix& s) {
    if (a.cols() != s.rows()) throw DimensionMismatch("factor product: inner dims differ");
    const Index m = a.rows();
    const Index n = s.cols();
    std::vector<std::vector<Index>> row_cols(m);
    std::vector<std::vector<double>> row_vals(m);
    std::vector<double> buffer(n, 0.0);
    for (Index i = 0; i < m; ++i) product_row(a, s, i, buffer, row_cols[i], row_vals[i]);
    return assemble_rows(m, n, row_cols, row_vals);
}

SparseMatrix factor_product_parallel(const DenseMatrix& a, const DenseMatrix& s) {
    if (a.cols() != s.rows()) throw DimensionMismatch("factor product: inner dims differ");
    const Index m = a.rows();
    const Index n = s.cols();
    std::vector<std::vector<Index>> row_cols(m);
    std::vector<std::vector<double>> row_vals(m);
#pragma omp parallel
    {
        std::vector<double> buffer(n, 0.0);
#pragma omp for schedule(static)
        for (long long i = 0; i < static_cast<long long>(m); ++i)
            product_row(a, s, static_cast<Index>(i), buffer, row_cols[i], row_vals[i]);
    }
    return assemble_rows(m, n, row_cols, row_vals);
}

std::vector<double> row_sq_norms_serial(const DenseMatrix& m) {
    std::vector<double> out(m.rows(), 0.0);
    for (Index i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        double sum = 0.0;
        for (double v : r) sum += v * v;
        out[i] = sum;
    }
    return out;
}

std::vector<double> row_sq_norms_parallel(const DenseMatrix& m) {
    std::vector<double> out(m.rows(), 0.0);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(m.rows()); ++i) {
        const auto r = m.row(static_cast<Index>(i));
        double sum = 0.0;
        for (double v : r) sum += v * v;
        out[i] = sum;
    }
    return out;
}

std::vector<double> col_sq_norms_serial(const DenseMatrix& m) {
    std::vector<double> out(m.cols(), 0.0);
    for (Index i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        for (Index j = 0; j < m.cols(); ++j) out[j] += r[j] * r[j];
    }
    return out;
}

std::vector<double> col_sq_norms_parallel(const DenseMatrix& m) {
    const Index cols = m.cols();
    const Index rows = m.rows();
    std::vector<double> out(cols, 0.0);
    // Each thread owns whole columns; accumulation order per column matches
    // the serial row order, so results are bit-identical and repeatable.
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < static_cast<long long>(cols); ++j) {
        double sum = 0.0;
        for (Index i = 0; i < rows; ++i) {
            const double v = m(i, static_cast<Index>(j));
            sum += v * v;
        }
        out[j] = sum;
    }
    return out;
}

}  // namespace kaczfact::kernels
