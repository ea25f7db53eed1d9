#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/errors.hpp"

namespace kaczfact {

struct Triplet {
    Index row;
    Index col;
    double value;
};

// Compressed sparse row matrix. Stores no explicit zeros; column indices are
// strictly increasing within each row.
class SparseMatrix {
public:
    SparseMatrix() = default;

    // Builds from coordinate entries. Duplicate (row, col) pairs resolve to the
    // last occurrence; exact zeros are pruned. `duplicates`, when given,
    // receives the number of overwritten entries.
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> entries,
                                      Index* duplicates = nullptr);

    // Adopts pre-assembled CSR arrays after validating the invariants.
    static SparseMatrix from_csr(Index rows, Index cols, std::vector<Index> row_offsets,
                                 std::vector<Index> col_indices, std::vector<double> values);

    static SparseMatrix from_dense(const DenseMatrix& dense);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index nnz() const { return values_.size(); }

    const std::vector<Index>& row_offsets() const { return row_offsets_; }
    const std::vector<Index>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    struct RowView {
        std::span<const Index> cols;
        std::span<const double> vals;
    };

    RowView row(Index i) const {
        const Index begin = row_offsets_[i];
        const Index end = row_offsets_[i + 1];
        return {{col_indices_.data() + begin, end - begin},
                {values_.data() + begin, end - begin}};
    }

    // Stored value at (i, j); absent entries read as zero.
    double at(Index i, Index j) const;

    DenseMatrix to_dense() const;

    bool operator==(const SparseMatrix& other) const = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Index> row_offsets_{0};
    std::vector<Index> col_indices_;
    std::vector<double> values_;
};

}  // namespace kaczfact
