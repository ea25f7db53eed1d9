#pragma once

#include <cstdint>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/rng.hpp"
#include "kaczfact/sparse_matrix.hpp"

namespace kaczfact {

// Categorical factor generator: each entry drawn i.i.d. from `values` with
// the matching `probabilities`.
struct FactorRecipe {
    Index rows = 0;
    Index cols = 0;
    std::vector<double> values;
    std::vector<double> probabilities;

    void validate() const;
};

struct SyntheticData {
    SparseMatrix x;
    DenseMatrix a;  // left factor, m x k
    DenseMatrix s;  // right factor, k x n
};

DenseMatrix gen_factor(const FactorRecipe& recipe, Rng& rng);

// X = A*S from categorical factors; the product is assembled sparsely, one
// row panel at a time.
SyntheticData gen_synthetic(const FactorRecipe& left, const FactorRecipe& right,
                            std::uint64_t seed);

// 1000 x 1000 data matrix from 1000x50 {0,1,2,3} / 50x1000 {0,1} factors.
SyntheticData gen_small_synthetic(std::uint64_t seed);

// 1e5 x 1000 data matrix; the right factor's nonzero probability drops to
// 0.001.
SyntheticData gen_large_synthetic(std::uint64_t seed);

// Same recipe as gen_large_synthetic with a caller-chosen row count.
SyntheticData gen_large_synthetic_rows(Index rows, std::uint64_t seed);

// Fraction of exactly-zero entries.
double sparsity(const SparseMatrix& x);

}  // namespace kaczfact
