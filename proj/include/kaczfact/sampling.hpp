#pragma once

#include <span>
#include <vector>

#include "kaczfact/dense_matrix.hpp"
#include "kaczfact/rng.hpp"

namespace kaczfact {

// Ordered set of distinct indices drawn from [0, universe).
struct IndexSample {
    std::vector<Index> indices;
    Index universe = 0;

    Index size() const { return indices.size(); }

    static IndexSample full(Index universe) {
        IndexSample s;
        s.universe = universe;
        s.indices.resize(universe);
        for (Index i = 0; i < universe; ++i) s.indices[i] = i;
        return s;
    }
};

// r distinct indices, every size-r subset equally likely. A full block
// (r == universe) returns the identity order without consuming draws.
IndexSample uniform_block(Index universe, Index r, Rng& rng);

// r distinct indices drawn sequentially without replacement, each draw
// proportional to sq_norms among the remaining candidates.
IndexSample weighted_block(std::span<const double> sq_norms, Index r, Rng& rng);

// Without-replacement target pool: every index in [0, universe) is returned
// exactly once per pass, then the pool refills.
class WithoutReplacementPool {
public:
    explicit WithoutReplacementPool(Index universe);

    Index universe() const { return universe_; }
    Index draws_since_refill() const { return universe_ - remaining_; }

    Index next(Rng& rng);

private:
    Index universe_;
    Index remaining_;
    std::vector<Index> pool_;
};

inline Index next_target(WithoutReplacementPool& pool, Rng& rng) { return pool.next(rng); }

struct UpdateSchedule {
    Index row_updates_per_step;
    Index col_updates_per_step;
};

// Proportional schedule: ceil(m/n) row updates per column update when m >= n,
// and the mirror image otherwise.
UpdateSchedule update_schedule(Index m, Index n);

}  // namespace kaczfact
