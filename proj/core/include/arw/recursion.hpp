#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arw/engine.hpp"

namespace arw {

// One realization of the reflected counting walk for directed 1D
// stabilization of [-L, 0]: N_0 = 0, N_{i+1} = max(N_i + eta_i - Y_i, 0),
// where eta_i is the initial count at site -L+i and Y_i indicates that the
// last particle there fell asleep.  N_L is the number of particles that jump
// into the origin.
struct RecursionTrace {
    std::vector<std::int64_t> n;     // N_0 .. N_L
    std::vector<std::uint8_t> y;     // Y_0 .. Y_{L-1}
    std::vector<std::int32_t> eta;   // eta at -L .. -1

    std::int64_t n_final() const { return n.back(); }
    bool self_consistent() const;
};

// Pure recursion from given inputs.
RecursionTrace run_recursion(std::span<const std::int32_t> eta, std::span<const std::uint8_t> y);

// Samples eta ~ Poisson(mu) and Y ~ Bernoulli(lambda/(1+lambda)) i.i.d. and
// iterates; one trace per replicate.
std::vector<RecursionTrace> directed_recursion(std::int32_t big_l, double mu, double lambda,
                                               std::uint64_t seed, std::uint64_t reps);

struct RecursionEngineReport {
    bool exact = true;
    std::int64_t recursion_count = 0;   // N_L replayed from the field's outcomes
    std::int64_t engine_count = 0;      // particles frozen at the origin by the engine
};

// Stabilizes [-L, -1] with a left-to-right sweep over the instruction field,
// then replays the recursion with the Y_i read off the final states; the two
// origin counts must agree exactly (any legal order gives the same result).
RecursionEngineReport recursion_vs_engine(std::int32_t big_l, double mu, double lambda,
                                          std::uint64_t seed);

struct ExcessReport {
    std::uint64_t reps = 0;
    std::uint64_t excess_hits = 0;              // total mass >= L + 2 sqrt(L)
    std::uint64_t boundary_hits = 0;            // m(0) >= sqrt(L) or m(L) >= sqrt(L)
    std::uint64_t checked = 0;                  // excess instances stabilized
    std::uint64_t confirmed = 0;                // ... whose boundary odometers confirm it
    double excess_probability() const {
        return reps ? static_cast<double>(excess_hits) / static_cast<double>(reps) : 0.0;
    }
};

// Estimates P(total initial mass on [0, L] >= L + 2 sqrt(L)) and, on excess
// instances (up to max_checks of them), verifies that stabilizing [0, L]
// tops a boundary odometer past sqrt(L).
ExcessReport excess_statistic(std::int32_t big_l, double mu, double lambda,
                              const JumpDistribution& jumps, std::uint64_t seed,
                              std::uint64_t reps, std::uint64_t max_checks = 50);

}  // namespace arw
