#include "kaczfact/sampling.hpp"

#include <string>
#include <unordered_map>

#include "kaczfact/errors.hpp"

namespace kaczfact {

IndexSample uniform_block(Index universe, Index r, Rng& rng) {
    if (r < 1 || universe < 1) throw InvalidConfig("uniform_block: need 1 <= r <= universe");
    if (r > universe)
        throw BlockTooLarge("uniform_block: r = " + std::to_string(r) + " exceeds universe " +
                            std::to_string(universe));
    if (r == universe) return IndexSample::full(universe);

    // Lazy Fisher-Yates: only the touched slots of the virtual identity
    // permutation are stored.
    IndexSample sample;
    sample.universe = universe;
    sample.indices.reserve(r);
    std::unordered_map<Index, Index> moved;
    moved.reserve(2 * r);
    for (Index t = 0; t < r; ++t) {
        const Index pick = t + static_cast<Index>(rng.next_below(universe - t));
        const auto pick_it = moved.find(pick);
        const Index value = pick_it == moved.end() ? pick : pick_it->second;
        const auto slot_it = moved.find(t);
        moved[pick] = slot_it == moved.end() ? t : slot_it->second;
        sample.indices.push_back(value);
    }
    return sample;
}

IndexSample weighted_block(std::span<const double> sq_norms, Index r, Rng& rng) {
    Index positive = 0;
    double total = 0.0;
    for (double w : sq_norms) {
        if (w < 0.0) throw DegenerateWeights("weighted_block: negative weight");
        if (w > 0.0) ++positive;
        total += w;
    }
    if (r > positive)
        throw DegenerateWeights("weighted_block: only " + std::to_string(positive) +
                                " positive weights for r = " + std::to_string(r));

    std::vector<double> weights(sq_norms.begin(), sq_norms.end());
    IndexSample sample;
    sample.universe = sq_norms.size();
    sample.indices.reserve(r);
    for (Index t = 0; t < r; ++t) {
        total = 0.0;
        for (double w : weights) total += w;
        const double u = rng.next_double() * total;
        double acc = 0.0;
        Index chosen = sample.universe;  // sentinel
        for (Index i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            acc += weights[i];
            if (u < acc) {
                chosen = i;
                break;
            }
        }
        if (chosen == sample.universe) {
            // Rounding pushed u past the last positive bucket.
            for (Index i = weights.size(); i-- > 0;) {
                if (weights[i] > 0.0) {
                    chosen = i;
                    break;
                }
            }
        }
        sample.indices.push_back(chosen);
        weights[chosen] = 0.0;
    }
    return sample;
}

WithoutReplacementPool::WithoutReplacementPool(Index universe)
    : universe_(universe), remaining_(universe), pool_(universe) {
    if (universe < 1) throw InvalidConfig("pool: universe must be at least 1");
    for (Index i = 0; i < universe; ++i) pool_[i] = i;
}

Index WithoutReplacementPool::next(Rng& rng) {
    if (remaining_ == 0) remaining_ = universe_;
    const Index pick = static_cast<Index>(rng.next_below(remaining_));
    const Index value = pool_[pick];
    std::swap(pool_[pick], pool_[remaining_ - 1]);
    --remaining_;
    return value;
}

UpdateSchedule update_schedule(Index m, Index n) {
    if (m < 1 || n < 1) throw InvalidConfig("update_schedule: dimensions must be positive");
    if (m >= n) return {(m + n - 1) / n, 1};
    return {1, (n + m - 1) / m};
}

}  // namespace kaczfact
