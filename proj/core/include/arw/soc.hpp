#pragma once

#include <cstdint>
#include <vector>

#include "arw/engine.hpp"
#include "arw/initial_law.hpp"
#include "arw/instruction_field.hpp"

namespace arw {

struct SocSample {
    std::uint64_t additions = 0;
    double bulk_density = 0.0;        // particles in window / |window|
    std::uint64_t dissipated = 0;     // running total
};

struct SocTrace {
    std::vector<SocSample> samples;
    std::uint64_t additions = 0;
    std::uint64_t dissipated = 0;
    std::uint64_t topplings = 0;
    bool mass_balance_ok = true;      // initial + added == in window + dissipated
    bool converged = false;           // plateau detected over the last 20%
    double plateau_density = 0.0;     // mean density over the last 20%
    double plateau_slope = 0.0;       // per addition, from a linear fit
};

struct SocParams {
    std::int32_t side = 1024;   // window is {0,...,side-1}^d
    int dim = 1;
    double lambda = 1.0;
    std::uint64_t additions = 100000;
    std::uint64_t sample_every = 100;
    std::uint64_t relax_cap = 0;   // per-relaxation toppling budget; 0 = default
    double initial_density = 0.0;  // Poisson start when > 0; empty otherwise
};

// Driven-dissipative loop: add one active particle at a uniformly random bulk
// site (window minus a boundary layer of width one), stabilize the whole box
// (particles crossing the boundary are deleted), repeat.  The instruction
// field is consumed through a persistent odometer, so every relaxation sees
// fresh instructions.
SocTrace soc_run(const SocParams& params, const JumpDistribution& jumps, std::uint64_t seed);

}  // namespace arw
