#pragma once

#include <cstdint>

#include "arw/jumps.hpp"

namespace arw {

struct TaggiStagedResult {
    std::int64_t n_l = 0;               // particles accumulated at the origin
    std::int64_t initial_particles = 0;
    std::int64_t stage1_losses = 0;     // fell asleep during stage 1
    std::int64_t stage2_losses = 0;     // fell asleep during stage 2
    std::int64_t overflow = 0;          // walks that left [-2L, 0] on the left
    std::int32_t leftmost_visited = 0;
    bool conserved = false;  // initial == n_l + losses + overflow + sleepers retained
};

// Two-stage legal toppling schedule on [-2L, 0] for a right-drifting 1D walk:
// stage 1 spreads the particles of [-L, -1] into singletons (stopping any
// that reach the origin, moving freely over [-2L, -L]); stage 2 sweeps
// x = -L..-1, routing each remaining singleton rightward until it sleeps on
// (-inf, x], parks at an empty site of [x+1, -1], or reaches the origin.
// A particle that falls asleep stays lost: it is never rewoken, so n_l
// undercounts what the full dynamics would deliver.
TaggiStagedResult taggi_staged_run(std::int32_t big_l, double mu, double lambda,
                                   const JumpDistribution& jumps, std::uint64_t seed);

}  // namespace arw
