#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "kaczfact/errors.hpp"

namespace kaczfact {

using Index = std::size_t;

// Row-major dense matrix of doubles. Houses the factor matrices and any
// sampled blocks; entries are expected to stay finite.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(Index rows, Index cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    DenseMatrix(Index rows, Index cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw DimensionMismatch("dense matrix: data length does not match rows*cols");
    }

    static DenseMatrix identity(Index n) {
        DenseMatrix m(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const Index r = rows.size();
        const Index c = r == 0 ? 0 : rows.begin()->size();
        DenseMatrix m(r, c);
        Index i = 0;
        for (const auto& row : rows) {
            if (row.size() != c)
                throw DimensionMismatch("dense matrix: ragged initializer rows");
            Index j = 0;
            for (double v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index size() const { return data_.size(); }

    double operator()(Index i, Index j) const { return data_[i * cols_ + j]; }
    double& operator()(Index i, Index j) { return data_[i * cols_ + j]; }

    std::span<const double> row(Index i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(Index i) {
        return {data_.data() + i * cols_, cols_};
    }

    std::vector<double> col(Index j) const {
        std::vector<double> out(rows_);
        for (Index i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    void set_row(Index i, std::span<const double> values) {
        if (values.size() != cols_)
            throw DimensionMismatch("set_row: length does not match column count");
        double* dst = data_.data() + i * cols_;
        for (Index j = 0; j < cols_; ++j) dst[j] = values[j];
    }

    void set_col(Index j, std::span<const double> values) {
        if (values.size() != rows_)
            throw DimensionMismatch("set_col: length does not match row count");
        for (Index i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    DenseMatrix transposed() const {
        DenseMatrix t(cols_, rows_);
        for (Index i = 0; i < rows_; ++i)
            for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    bool is_zero() const {
        for (double v : data_)
            if (v != 0.0) return false;
        return true;
    }

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<double> data_;
};

}  // namespace kaczfact
