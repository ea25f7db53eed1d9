#include "kaczfact/datagen.hpp"

#include <cmath>
#include <numeric>

#include "kaczfact/errors.hpp"
#include "kaczfact/kernels.hpp"

namespace kaczfact {

void FactorRecipe::validate() const {
    if (rows < 1 || cols < 1) throw InvalidRecipe("recipe: dimensions must be positive");
    if (values.empty() || values.size() != probabilities.size())
        throw InvalidRecipe("recipe: values and probabilities must match and be nonempty");
    double sum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw InvalidRecipe("recipe: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidRecipe("recipe: probabilities must sum to 1");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidRecipe("recipe: non-finite support value");
}

DenseMatrix gen_factor(const FactorRecipe& recipe, Rng& rng) {
    recipe.validate();
    DenseMatrix m(recipe.rows, recipe.cols);
    for (double& out : m.data()) {
        const double u = rng.next_double();
        double acc = 0.0;
        out = recipe.values.back();
        for (Index c = 0; c < recipe.probabilities.size(); ++c) {
            acc += recipe.probabilities[c];
            if (u < acc) {
                out = recipe.values[c];
                break;
            }
        }
    }
    return m;
}

SyntheticData gen_synthetic(const FactorRecipe& left, const FactorRecipe& right,
                            std::uint64_t seed) {
    if (left.cols != right.rows) throw InvalidRecipe("gen_synthetic: inner dimensions differ");
    Rng rng(seed);
    SyntheticData data;
    data.a = gen_factor(left, rng);
    data.s = gen_factor(right, rng);
    data.x = kernels::factor_product_parallel(data.a, data.s);
    return data;
}

namespace {

FactorRecipe left_recipe(Index rows) {
    return {rows, 50, {0.0, 1.0, 2.0, 3.0}, {0.97, 0.01, 0.01, 0.01}};
}

FactorRecipe right_recipe(double nonzero_prob) {
    return {50, 1000, {0.0, 1.0}, {1.0 - nonzero_prob, nonzero_prob}};
}

}  // namespace

SyntheticData gen_small_synthetic(std::uint64_t seed) {
    return gen_synthetic(left_recipe(1000), right_recipe(0.01), seed);
}

SyntheticData gen_large_synthetic(std::uint64_t seed) {
    return gen_large_synthetic_rows(100000, seed);
}

SyntheticData gen_large_synthetic_rows(Index rows, std::uint64_t seed) {
    return gen_synthetic(left_recipe(rows), right_recipe(0.001), seed);
}

double sparsity(const SparseMatrix& x) {
    const double total = static_cast<double>(x.rows()) * static_cast<double>(x.cols());
    if (total == 0.0) return 1.0;
    return 1.0 - static_cast<double>(x.nnz()) / total;
}

}  // namespace kaczfact
