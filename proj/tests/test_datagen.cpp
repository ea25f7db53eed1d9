#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "helpers.hpp"
#include "kaczfact/datagen.hpp"
#include "kaczfact/matrix_ops.hpp"

using namespace kaczfact;

TEST_CASE("gen_factor: degenerate recipe and nonzero fraction") {
    Rng rng(1);
    const FactorRecipe zeros{4, 6, {0.0}, {1.0}};
    const auto z = gen_factor(zeros, rng);
    CHECK(z.is_zero());

    const FactorRecipe sparse01{50, 1000, {0.0, 1.0}, {0.99, 0.01}};
    const auto m = gen_factor(sparse01, rng);
    double nonzero = 0.0;
    for (double v : m.data()) nonzero += v != 0.0 ? 1.0 : 0.0;
    const double fraction = nonzero / static_cast<double>(m.size());
    CHECK(fraction > 0.008);
    CHECK(fraction < 0.012);
}

TEST_CASE("gen_factor: empirical histogram matches the probabilities") {
    Rng rng(2);
    const FactorRecipe recipe{1000, 1000, {0.0, 1.0, 2.0, 3.0}, {0.97, 0.01, 0.01, 0.01}};
    const auto m = gen_factor(recipe, rng);
    std::array<double, 4> counts{0, 0, 0, 0};
    for (double v : m.data()) counts[static_cast<int>(v)] += 1.0;
    for (int c = 0; c < 4; ++c) {
        const double freq = counts[c] / static_cast<double>(m.size());
        CHECK(std::abs(freq - recipe.probabilities[c]) < 0.01);
    }
}

TEST_CASE("gen_factor rejects malformed recipes") {
    Rng rng(3);
    CHECK_THROWS_AS(gen_factor({4, 4, {0.0, 1.0}, {0.5}}, rng), InvalidRecipe);
    CHECK_THROWS_AS(gen_factor({4, 4, {0.0, 1.0}, {0.6, 0.6}}, rng), InvalidRecipe);
    CHECK_THROWS_AS(gen_factor({4, 4, {0.0, 1.0}, {-0.1, 1.1}}, rng), InvalidRecipe);
    CHECK_THROWS_AS(gen_factor({0, 4, {0.0}, {1.0}}, rng), InvalidRecipe);
}

TEST_CASE("sparsity") {
    CHECK(sparsity(SparseMatrix::from_triplets(4, 4, {})) == 1.0);
    CHECK(sparsity(SparseMatrix::from_dense(DenseMatrix(3, 3, 1.0))) == 0.0);
    const auto x =
        SparseMatrix::from_triplets(3, 4, {{0, 0, 1.0}, {1, 2, 2.0}, {2, 3, 3.0}});
    CHECK(sparsity(x) == doctest::Approx(0.75));
}

TEST_CASE("small synthetic: dims, product oracle, integrality, sparsity band") {
    const auto data = gen_small_synthetic(7);
    CHECK(data.x.rows() == 1000);
    CHECK(data.x.cols() == 1000);
    CHECK(data.a.rows() == 1000);
    CHECK(data.a.cols() == 50);
    CHECK(data.s.rows() == 50);
    CHECK(data.s.cols() == 1000);

    // X equals the dense product entrywise
    const Eigen::MatrixXd product = testutil::to_eigen(data.a) * testutil::to_eigen(data.s);
    const auto dense = data.x.to_dense();
    double worst = 0.0;
    for (Index i = 0; i < 1000; ++i)
        for (Index j = 0; j < 1000; ++j)
            worst = std::max(worst, std::abs(dense(i, j) - product(i, j)));
    CHECK(worst == 0.0);

    // entries are nonnegative integers
    for (double v : data.x.values()) {
        CHECK(v > 0.0);
        CHECK(v == std::floor(v));
    }

    CHECK(sparsity(data.x) > 0.9858 - 0.005);
    CHECK(sparsity(data.x) < 0.9858 + 0.005);

    // rank of a product never exceeds the inner dimension
    CHECK(numerical_rank(data.a) <= 50);
    CHECK(numerical_rank(data.s) <= 50);
}

TEST_CASE("sparsity concentrates near the analytic prediction") {
    // 1 - (1 - p_A * p_S)^k with p_A = 0.03, p_S = 0.01, k = 50
    const double predicted = 1.0 - std::pow(1.0 - 0.03 * 0.01, 50.0);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto data = gen_small_synthetic(seed);
        CHECK(std::abs(sparsity(data.x) - (1.0 - predicted)) < 0.005);
    }
}

TEST_CASE("large synthetic recipe at reduced row count") {
    const auto data = gen_large_synthetic_rows(2000, 5);
    CHECK(data.x.rows() == 2000);
    CHECK(data.x.cols() == 1000);
    CHECK(data.a.cols() == 50);

    CHECK(sparsity(data.x) > 0.9986 - 0.0005);
    CHECK(sparsity(data.x) < 0.9986 + 0.0005);

    // sparse right factor usually has all-zero rows, capping the product rank
    const Index s_rank = numerical_rank(data.s);
    CHECK(s_rank <= 50);

    // determinism
    const auto again = gen_large_synthetic_rows(2000, 5);
    CHECK(again.x == data.x);
}
