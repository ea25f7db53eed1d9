#pragma once

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/sparse_matrix.hpp"

namespace kaczfact::kernels {

// ||X - A*S||_F^2 accumulated over row panels of height `panel_rows`. The
// parallel variant distributes panels across OpenMP threads; per-panel partial
// sums are combined in panel order, so both variants return identical bits.
double residual_fro_sq_serial(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                              Index panel_rows);
double residual_fro_sq_parallel(const SparseMatrix& x, const DenseMatrix& a, const DenseMatrix& s,
                                Index panel_rows);

// X = A*S assembled row by row into CSR, pruning exact zeros. Row results are
// independent, which is what the parallel variant exploits.
SparseMatrix factor_product_serial(const DenseMatrix& a, const DenseMatrix& s);
SparseMatrix factor_product_parallel(const DenseMatrix& a, const DenseMatrix& s);

// Squared 2-norms of all rows / columns.
std::vector<double> row_sq_norms_serial(const DenseMatrix& m);
std::vector<double> row_sq_norms_parallel(const DenseMatrix& m);
std::vector<double> col_sq_norms_serial(const DenseMatrix& m);
std::vector<double> col_sq_norms_parallel(const DenseMatrix& m);

}  // namespace kaczfact::kernels
