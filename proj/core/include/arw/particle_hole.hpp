#pragma once

#include <cstdint>
#include <vector>

#include "arw/initial_law.hpp"
#include "arw/jumps.hpp"
#include "arw/lattice.hpp"

namespace arw {

struct ParticleLabel {
    Site site;             // origin x
    std::int32_t index;    // j in {0, ..., eta_0(x)-1}
};

struct ParticleHoleHorizon {
    enum class Kind { all_settled_or_stuck, max_events };
    Kind kind = Kind::all_settled_or_stuck;
    std::uint64_t max_events = ~std::uint64_t{0};

    static ParticleHoleHorizon settled() { return {}; }
    static ParticleHoleHorizon events(std::uint64_t n) { return {Kind::max_events, n}; }
};

struct ParticleHoleResult {
    std::vector<std::uint8_t> filled;          // per torus cell: hole filled
    std::vector<ParticleLabel> settler;        // per torus cell (valid where filled)
    std::uint64_t filled_count = 0;
    std::uint64_t settled_count = 0;
    std::uint64_t free_count = 0;              // particles still walking at the end
    std::uint64_t events = 0;
    bool finished = false;                     // all settled, or no unfilled hole left
    bool bijection_ok = true;                  // settled == filled held at every event
};

// Particle-hole model on a torus: labeled particles walk independently at
// rate 1; a particle alone at a site whose hole is unfilled settles there
// forever and fills it, after which the site is transparent to others.  At
// t = 0 every occupied site picks a uniform settler among its particles.
ParticleHoleResult particle_hole_run(const InitialLaw& law, const Arena& torus,
                                     const JumpDistribution& jumps, std::uint64_t seed,
                                     ParticleHoleHorizon horizon = ParticleHoleHorizon::settled());

}  // namespace arw
