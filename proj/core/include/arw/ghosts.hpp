#pragma once

#include <cstdint>
#include <vector>

#include "arw/jumps.hpp"

namespace arw {

struct GhostCounts {
    std::int64_t w = 0;        // walks visiting the origin before leaving the ball
    std::int64_t l = 0;        // ...that do so only as ghosts
    std::int64_t l_tilde = 0;  // ghosts (real or artificial) visiting the origin
};

struct GhostReport {
    std::int32_t radius = 0;
    std::uint64_t reps = 0;
    std::vector<GhostCounts> per_rep;
    double w_mean = 0.0;
    double l_mean = 0.0;
    double lt_mean = 0.0;
    double w_var = 0.0;   // sample variance
    double lt_var = 0.0;
    double ratio = 0.0;   // w_mean / lt_mean
    bool l_le_lt = true;  // L <= L~ held in every replicate
};

// One-ghost-per-site counting on the discrete ball of the given radius,
// Poisson(mu) start, symmetric nearest-neighbor 2D walks, settle-when-alone
// semantics.  Particles are processed in lexicographic (x, y, index) order;
// each settlement spawns the walk's ghost continuation, and an artificial
// ghost starts at every site that produced no real one.
GhostReport ghost_experiment(std::int32_t radius, double mu, std::uint64_t seed,
                             std::uint64_t reps, int threads = 1);

}  // namespace arw
