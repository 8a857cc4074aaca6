#pragma once

#include <cstdint>
#include <vector>

#include "arw/instruction_field.hpp"
#include "arw/lattice.hpp"

namespace arw {

struct CtmcEvent {
    double time = 0.0;
    Site site;
    bool sleep_attempt = false;
    Site offset;  // valid when !sleep_attempt
};

struct CtmcHorizon {
    enum class Kind { absorption, max_events };
    Kind kind = Kind::absorption;
    std::uint64_t max_events = 0;

    static CtmcHorizon absorption() { return {Kind::absorption, ~std::uint64_t{0}}; }
    static CtmcHorizon events(std::uint64_t n) { return {Kind::max_events, n}; }
};

struct CtmcResult {
    Configuration final;
    std::vector<CtmcEvent> log;  // populated when record_log
    bool absorbed = false;       // no active particles left in the window
    std::uint64_t events = 0;
    double time = 0.0;
};

// Exact continuous-time chain: each window site rings at rate
// (1+lambda) * (number of active particles); on a ring the site sleeps with
// probability lambda/(1+lambda) (a no-op unless the particle is alone),
// otherwise emits one particle along a p-distributed jump.  Uses its own
// event-sequential randomness, not the instruction field: agreement with the
// Diaconis-Fulton engine is distributional.
CtmcResult ctmc_run(Configuration config, double lambda, const JumpDistribution& jumps,
                    std::uint64_t seed, CtmcHorizon horizon = CtmcHorizon::absorption(),
                    bool record_log = false);

}  // namespace arw
