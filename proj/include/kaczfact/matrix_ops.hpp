#pragma once

#include <span>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/sparse_matrix.hpp"

namespace kaczfact {

double frobenius_norm(const DenseMatrix& m);
double frobenius_norm(const SparseMatrix& m);

// ||X - A*S||_F / ||X||_F, evaluated over row panels so the dense m x n
// product is never materialized. Panel height is `panel_rows`.
double relative_error(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                      Index panel_rows = 1024);

// Minimum-norm least-squares solution of min ||M y - b||_2. Routed through a
// rank-revealing orthogonal factorization; the pseudoinverse is never formed.
std::vector<double> least_squares_solve(const DenseMatrix& m, std::span<const double> b);

// Number of singular values exceeding tol * sigma_max. tol = 0 selects the
// conventional default max(rows, cols) * machine epsilon.
Index numerical_rank(const DenseMatrix& m, double tol = 0.0);

std::vector<double> singular_values(const DenseMatrix& m);

double smallest_singular_value(const DenseMatrix& m);

// Selected rows/columns in sample order; indices need not be contiguous.
DenseMatrix row_slice(const DenseMatrix& m, std::span<const Index> indices);
DenseMatrix col_slice(const DenseMatrix& m, std::span<const Index> indices);

// Columns `indices` of M transposed into rows, in sample order.
DenseMatrix col_slice_transposed(const DenseMatrix& m, std::span<const Index> indices);

// Full column / row of a CSR matrix, densified.
std::vector<double> sparse_dense_column(const SparseMatrix& x, Index col);
std::vector<double> sparse_dense_row(const SparseMatrix& x, Index row);

// Entries X[rows[t], col] in sample order; absent entries read as zero.
std::vector<double> sparse_entry_slice(const SparseMatrix& x, std::span<const Index> rows,
                                       Index col);

// Row i of X restricted to `cols`, in sample order.
std::vector<double> sparse_row_gather(const SparseMatrix& x, Index row,
                                      std::span<const Index> cols);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

// ||M y - b||_2
double system_residual_norm(const DenseMatrix& m, std::span<const double> y,
                            std::span<const double> b);

}  // namespace kaczfact
