#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "kaczfact/matrix_ops.hpp"
#include "kaczfact/solvers.hpp"

using namespace kaczfact;
using testutil::random_dense;
using testutil::random_sparse;
using testutil::random_vector;

namespace {

// Oracle form of one block step: y + pinv(M_tau)(b_tau - M_tau y) with the
// pseudoinverse applied through an explicit SVD.
std::vector<double> brk_step_oracle(const DenseMatrix& m, std::span<const double> b,
                                    std::span<const double> y, const IndexSample& tau) {
    const DenseMatrix block = row_slice(m, tau.indices);
    std::vector<double> residual(tau.indices.size());
    for (Index t = 0; t < tau.indices.size(); ++t)
        residual[t] = b[tau.indices[t]] - dot(block.row(t), y);
    const auto d = testutil::svd_pinv_solve(block, residual);
    std::vector<double> out(y.begin(), y.end());
    for (Index l = 0; l < out.size(); ++l) out[l] += d[l];
    return out;
}

std::vector<double> matvec(const DenseMatrix& m, std::span<const double> y) {
    std::vector<double> out(m.rows(), 0.0);
    for (Index i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), y);
    return out;
}

}  // namespace

TEST_CASE("brk_step: fixed point, full-block solve, oracle agreement") {
    Rng rng(101);

    // y already solves the sampled block -> unchanged
    const auto m = random_dense(6, 3, rng);
    const auto y_star = random_vector(3, rng);
    const auto b = matvec(m, y_star);
    IndexSample tau;
    tau.universe = 6;
    tau.indices = {1, 4};
    const auto fixed = brk_step(m, b, y_star, tau);
    CHECK(testutil::max_abs_diff(fixed, y_star) < 1e-12);

    // full block on an invertible square system solves in one step
    const auto sq = random_dense(4, 4, rng);
    const auto bx = random_vector(4, rng);
    const auto any_y = random_vector(4, rng);
    const auto solved = brk_step(sq, bx, any_y, IndexSample::full(4));
    const auto direct = least_squares_solve(sq, bx);
    CHECK(testutil::max_abs_diff(solved, direct) < 1e-9);

    // random partial block vs the SVD pseudoinverse oracle
    for (int trial = 0; trial < 30; ++trial) {
        const auto mm = random_dense(6, 3, rng);
        const auto bb = random_vector(6, rng);
        const auto yy = random_vector(3, rng);
        IndexSample t2;
        t2.universe = 6;
        t2.indices = {static_cast<Index>(rng.next_below(6)), 0};
        if (t2.indices[0] == 0) t2.indices[1] = 5;
        const auto got = brk_step(mm, bb, yy, t2);
        const auto oracle = brk_step_oracle(mm, bb, yy, t2);
        CHECK(testutil::max_abs_diff(got, oracle) < 1e-10);
    }
}

TEST_CASE("brk_step: projection property and orthogonality of the move") {
    Rng rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_dense(8, 5, rng);
        const auto b = random_vector(8, rng);
        const auto y = random_vector(5, rng);
        auto tau = uniform_block(8, 3, rng);  // 3 < 5, generically full row rank
        const auto next = brk_step(m, b, y, tau);

        // sampled block residual vanishes
        const DenseMatrix block = row_slice(m, tau.indices);
        std::vector<double> b_tau(3);
        for (Index t = 0; t < 3; ++t) b_tau[t] = b[tau.indices[t]];
        const double block_residual = system_residual_norm(block, next, b_tau);
        CHECK(block_residual <= 1e-8 * (1.0 + norm2(b_tau)));

        // the move lies in the block's row space: orthogonal to its null space
        Eigen::MatrixXd blk = testutil::to_eigen(block);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(blk);
        const Eigen::MatrixXd null_basis = lu.kernel();
        Eigen::VectorXd move(5);
        for (Index l = 0; l < 5; ++l) move(static_cast<Eigen::Index>(l)) = next[l] - y[l];
        if (null_basis.cols() > 0)
            CHECK((null_basis.transpose() * move).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("brk_step non-expansive toward any solution of a consistent system") {
    Rng rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        const Index p = 4 + rng.next_below(8);
        const Index q = 2 + rng.next_below(5);
        const auto m = random_dense(p, q, rng);
        const auto y_star = random_vector(q, rng);
        const auto b = matvec(m, y_star);
        const auto y0 = random_vector(q, rng);
        const Index r = 1 + rng.next_below(p);
        const auto tau = uniform_block(p, r, rng);
        const auto y1 = brk_step(m, b, y0, tau);

        double d0 = 0.0, d1 = 0.0;
        for (Index l = 0; l < q; ++l) {
            d0 += (y0[l] - y_star[l]) * (y0[l] - y_star[l]);
            d1 += (y1[l] - y_star[l]) * (y1[l] - y_star[l]);
        }
        CHECK(std::sqrt(d1) <= std::sqrt(d0) + 1e-12 * (1.0 + std::sqrt(d0)));
    }
}

TEST_CASE("brk_step with a single row reproduces the classical RK update") {
    Rng rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_dense(7, 4, rng);
        const auto b = random_vector(7, rng);
        const auto y = random_vector(4, rng);
        IndexSample tau;
        tau.universe = 7;
        tau.indices = {static_cast<Index>(rng.next_below(7))};
        const auto got = brk_step(m, b, y, tau);

        const auto row = m.row(tau.indices[0]);
        const double row_sq = dot(row, row);
        std::vector<double> rk(y.begin(), y.end());
        const double scale = (b[tau.indices[0]] - dot(row, y)) / row_sq;
        for (Index l = 0; l < 4; ++l) rk[l] += scale * row[l];
        CHECK(testutil::max_abs_diff(got, rk) < 1e-12);
    }

    // zero-norm sampled row leaves the iterate unchanged
    DenseMatrix z(3, 2, 0.0);
    z(1, 0) = 1.0;
    const std::vector<double> b{1.0, 2.0, 3.0};
    const std::vector<double> y{5.0, -4.0};
    IndexSample tau;
    tau.universe = 3;
    tau.indices = {2};  // all-zero row
    const auto out = brk_step(z, b, y, tau);
    CHECK(testutil::max_abs_diff(out, y) < 1e-15);
}

TEST_CASE("brk_solve: full-block collapse and fixed point") {
    Rng rng(113);

    // consistent square; r = p, L = 1 solves exactly
    const auto m = random_dense(5, 5, rng);
    const auto y_star = random_vector(5, rng);
    const auto b = matvec(m, y_star);
    SolverSpec spec;
    spec.kind = SolverKind::BRK;
    spec.block_size = 5;
    spec.subiterations = 1;
    Rng solver_rng(1);
    const auto y = brk_solve(m, b, std::vector<double>(5, 0.0), spec, solver_rng);
    CHECK(testutil::max_abs_diff(y, y_star) < 1e-9);

    // starting from the exact solution: unchanged for any L
    spec.block_size = 2;
    spec.subiterations = 12;
    const auto still = brk_solve(m, b, y_star, spec, solver_rng);
    CHECK(testutil::max_abs_diff(still, y_star) < 1e-10);

    // full-block collapse agrees with exact LS on an inconsistent system too
    const auto tall = random_dense(8, 3, rng);
    const auto rhs = random_vector(8, rng);
    SolverSpec full;
    full.kind = SolverKind::BRK;
    full.block_size = 8;
    full.subiterations = 1;
    const auto via_brk = brk_solve(tall, rhs, std::vector<double>(3, 0.0), full, solver_rng);
    const auto via_ls = least_squares_solve(tall, rhs);
    CHECK(testutil::max_abs_diff(via_brk, via_ls) < 1e-10);

    CHECK_THROWS_AS(brk_solve(tall, rhs, std::vector<double>(3, 0.0), SolverSpec{}, solver_rng),
                    InvalidConfig);
}

TEST_CASE("brk_solve: more subiterations shrink the residual (median over seeds)") {
    Rng data_rng(127);
    const auto m = random_dense(40, 6, data_rng);
    const auto y_star = random_vector(6, data_rng);
    const auto b = matvec(m, y_star);

    const auto median_residual = [&](Index L) {
        std::vector<double> residuals;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            SolverSpec spec;
            spec.kind = SolverKind::RK;
            spec.subiterations = L;
            spec.epsilon = 0.0;  // disable early exit
            Rng rng(seed);
            const auto y = brk_solve(m, b, std::vector<double>(6, 0.0), spec, rng);
            residuals.push_back(system_residual_norm(m, y, b));
        }
        std::sort(residuals.begin(), residuals.end());
        return residuals[residuals.size() / 2];
    };
    CHECK(median_residual(500) < median_residual(50));
}

TEST_CASE("brk_update_column: fixed point, full-block ALS collapse, brk_step cross-check") {
    Rng rng(131);
    const auto a = random_dense(10, 3, rng);
    const auto s_true = random_dense(3, 6, rng);
    const auto x = SparseMatrix::from_dense(
        testutil::from_eigen(testutil::to_eigen(a) * testutil::to_eigen(s_true)));

    // exact factorization: column unchanged
    auto tau = uniform_block(10, 4, rng);
    const auto col = brk_update_column(a, x, s_true, 2, tau);
    CHECK(testutil::max_abs_diff(col, s_true.col(2)) < 1e-10);

    // full block reduces to the exact LS column update
    DenseMatrix s_perturbed = s_true;
    for (double& v : s_perturbed.data()) v += 0.3;
    const auto full = brk_update_column(a, x, s_perturbed, 1, IndexSample::full(10));
    const auto exact = exact_ls_column(a, x, 1);
    CHECK(testutil::max_abs_diff(full, exact) < 1e-10);

    // cross-check against brk_step on the gathered system
    const auto tau2 = uniform_block(10, 5, rng);
    const auto got = brk_update_column(a, x, s_perturbed, 4, tau2);
    const auto dense_col = sparse_dense_column(x, 4);
    const auto ref = brk_step(a, dense_col, s_perturbed.col(4), tau2);
    CHECK(testutil::max_abs_diff(got, ref) == 0.0);

    CHECK_THROWS_AS(brk_update_column(a, x, s_true, 6, tau), IndexOutOfRange);
}

TEST_CASE("brk_update_row equals brk_update_column on the transposed problem") {
    Rng rng(137);
    const auto a = random_dense(9, 3, rng);
    const auto s = random_dense(3, 7, rng);
    const auto x = random_sparse(9, 7, 0.5, rng);

    for (int trial = 0; trial < 20; ++trial) {
        const Index j = rng.next_below(9);
        const auto tau2 = uniform_block(7, 3, rng);

        const auto row = brk_update_row(a, x, s, j, tau2);

        // transposed problem: factor pair (S^T, A^T), data X^T
        const auto xt = SparseMatrix::from_dense(x.to_dense().transposed());
        const auto st = s.transposed();
        const auto at = a.transposed();
        const auto col = brk_update_column(st, xt, at, j, tau2);
        CHECK(testutil::max_abs_diff(row, col) < 1e-14);
    }

    // exact factorization: row unchanged
    const auto x_exact = SparseMatrix::from_dense(
        testutil::from_eigen(testutil::to_eigen(a) * testutil::to_eigen(s)));
    const auto tau_full = IndexSample::full(7);
    const auto same = brk_update_row(a, x_exact, s, 3, tau_full);
    std::vector<double> prev(a.row(3).begin(), a.row(3).end());
    CHECK(testutil::max_abs_diff(same, prev) < 1e-10);

    // full block reduces to the exact LS row update
    DenseMatrix a_perturbed = a;
    for (double& v : a_perturbed.data()) v -= 0.2;
    const auto full = brk_update_row(a_perturbed, x_exact, s, 5, tau_full);
    const auto exact = exact_ls_row(s, x_exact, 5);
    CHECK(testutil::max_abs_diff(full, exact) < 1e-10);
}

TEST_CASE("exact LS updates: identity dictionary and orthonormal columns") {
    Rng rng(139);

    // A = I: the column comes back exactly
    const auto eye = DenseMatrix::identity(5);
    const auto x = random_sparse(5, 4, 0.6, rng);
    const auto col = exact_ls_column(eye, x, 2);
    const auto expected = sparse_dense_column(x, 2);
    CHECK(testutil::max_abs_diff(col, expected) < 1e-14);

    // orthonormal columns: solution is A^T X[:, i]
    Eigen::MatrixXd g = Eigen::MatrixXd::Random(8, 3);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(8, 3);
    const auto a = testutil::from_eigen(q);
    const auto x2 = random_sparse(8, 5, 0.7, rng);
    const auto got = exact_ls_column(a, x2, 3);
    const auto bx = sparse_dense_column(x2, 3);
    std::vector<double> closed(3, 0.0);
    for (Index l = 0; l < 3; ++l)
        for (Index i = 0; i < 8; ++i) closed[l] += a(i, l) * bx[i];
    CHECK(testutil::max_abs_diff(got, closed) < 1e-12);

    // random instance vs SVD oracle
    const auto m = random_dense(12, 4, rng);
    const auto x3 = random_sparse(12, 6, 0.5, rng);
    const auto sol = exact_ls_column(m, x3, 5);
    const auto oracle = testutil::svd_pinv_solve(m, sparse_dense_column(x3, 5));
    CHECK(testutil::max_abs_diff(sol, oracle) < 1e-10);
}
