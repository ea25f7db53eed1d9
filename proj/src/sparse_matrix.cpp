#include "kaczfact/sparse_matrix.hpp"

#include <algorithm>
#include <string>

namespace kaczfact {

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> entries,
                                         Index* duplicates) {
    for (const Triplet& t : entries) {
        if (t.row >= rows || t.col >= cols)
            throw IndexOutOfRange("triplet (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") outside " + std::to_string(rows) +
                                  "x" + std::to_string(cols));
    }
    // Stable sort keeps insertion order within equal keys, so the last
    // occurrence of a duplicate pair wins.
    std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    Index dup_count = 0;
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_.assign(rows + 1, 0);
    m.col_indices_.reserve(entries.size());
    m.values_.reserve(entries.size());

    for (Index i = 0; i < entries.size();) {
        Index j = i;
        while (j + 1 < entries.size() && entries[j + 1].row == entries[i].row &&
               entries[j + 1].col == entries[i].col)
            ++j;
        dup_count += j - i;
        const Triplet& keep = entries[j];
        if (keep.value != 0.0) {
            m.col_indices_.push_back(keep.col);
            m.values_.push_back(keep.value);
            ++m.row_offsets_[keep.row + 1];
        }
        i = j + 1;
    }
    for (Index r = 0; r < rows; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];
    if (duplicates) *duplicates = dup_count;
    return m;
}

SparseMatrix SparseMatrix::from_csr(Index rows, Index cols, std::vector<Index> row_offsets,
                                    std::vector<Index> col_indices, std::vector<double> values) {
    if (row_offsets.size() != rows + 1 || row_offsets.front() != 0 ||
        row_offsets.back() != values.size() || col_indices.size() != values.size())
        throw DimensionMismatch("csr: offset/index/value arrays are inconsistent");
    for (Index r = 0; r < rows; ++r) {
        if (row_offsets[r] > row_offsets[r + 1])
            throw DimensionMismatch("csr: row offsets must be non-decreasing");
        for (Index p = row_offsets[r]; p < row_offsets[r + 1]; ++p) {
            if (col_indices[p] >= cols)
                throw IndexOutOfRange("csr: column index out of range");
            if (p > row_offsets[r] && col_indices[p] <= col_indices[p - 1])
                throw DimensionMismatch("csr: column indices must be strictly increasing per row");
            if (values[p] == 0.0)
                throw DimensionMismatch("csr: explicit zeros are not stored");
        }
    }
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_offsets_ = std::move(row_offsets);
    m.col_indices_ = std::move(col_indices);
    m.values_ = std::move(values);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
    SparseMatrix m;
    m.rows_ = dense.rows();
    m.cols_ = dense.cols();
    m.row_offsets_.assign(m.rows_ + 1, 0);
    for (Index i = 0; i < m.rows_; ++i) {
        for (Index j = 0; j < m.cols_; ++j) {
            const double v = dense(i, j);
            if (v != 0.0) {
                m.col_indices_.push_back(j);
                m.values_.push_back(v);
            }
        }
        m.row_offsets_[i + 1] = m.values_.size();
    }
    return m;
}

double SparseMatrix::at(Index i, Index j) const {
    if (i >= rows_ || j >= cols_) throw IndexOutOfRange("sparse at: index out of range");
    const RowView r = row(i);
    const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), j);
    if (it == r.cols.end() || *it != j) return 0.0;
    return r.vals[static_cast<Index>(it - r.cols.begin())];
}

DenseMatrix SparseMatrix::to_dense() const {
    DenseMatrix d(rows_, cols_);
    for (Index i = 0; i < rows_; ++i) {
        const RowView r = row(i);
        for (Index p = 0; p < r.cols.size(); ++p) d(i, r.cols[p]) = r.vals[p];
    }
    return d;
}

}  // namespace kaczfact
