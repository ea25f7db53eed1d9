#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/rng.hpp"
#include "kaczfact/sparse_matrix.hpp"

namespace testutil {

using kaczfact::DenseMatrix;
using kaczfact::Index;
using kaczfact::Rng;
using kaczfact::SparseMatrix;

inline DenseMatrix random_dense(Index rows, Index cols, Rng& rng, double lo = -1.0,
                                double hi = 1.0) {
    DenseMatrix m(rows, cols);
    for (double& v : m.data()) v = lo + (hi - lo) * rng.next_double();
    return m;
}

inline std::vector<double> random_vector(Index n, Rng& rng, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) x = lo + (hi - lo) * rng.next_double();
    return v;
}

// Random sparse matrix with the given nonzero density.
inline SparseMatrix random_sparse(Index rows, Index cols, double density, Rng& rng) {
    std::vector<kaczfact::Triplet> entries;
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            if (rng.next_double() < density)
                entries.push_back({i, j, 2.0 * rng.next_double() - 1.0});
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
}

inline Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline DenseMatrix from_eigen(const Eigen::MatrixXd& m) {
    DenseMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < out.rows(); ++i)
        for (Index j = 0; j < out.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

// Independent oracle: explicit SVD pseudoinverse application (Jacobi SVD, not
// the orthogonal-decomposition route the library uses).
inline std::vector<double> svd_pinv_solve(const DenseMatrix& m, std::span<const double> b) {
    const Eigen::MatrixXd a = to_eigen(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(m.rows(), m.cols()) *
                       std::numeric_limits<double>::epsilon() * (sv.size() ? sv(0) : 0.0);
    Eigen::VectorXd bv(b.size());
    for (Index i = 0; i < b.size(); ++i) bv(static_cast<Eigen::Index>(i)) = b[i];
    Eigen::VectorXd ut_b = svd.matrixU().transpose() * bv;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        ut_b(i) = sv(i) > tol ? ut_b(i) / sv(i) : 0.0;
    Eigen::VectorXd y = svd.matrixV() * ut_b;
    return {y.data(), y.data() + y.size()};
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (Index i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& tag) {
    static std::mt19937_64 gen{std::random_device{}()};
    const auto dir = std::filesystem::current_path() /
                     ("scratch_" + tag + "_" + std::to_string(gen()));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testutil
