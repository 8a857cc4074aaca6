#pragma once

#include <cstdint>

#include "arw/jumps.hpp"

namespace arw {

struct FEstimate {
    double f_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t samples = 0;
    double truncation_bound = 0.0;  // per-sample upward bias bound, folded into ci_low
};

// Monte Carlo estimate of F(lambda) = E[(1/(1+lambda))^T], where T counts how
// many steps a discrete-time walk started at 0 spends on (-infinity, 0].
// Walks with positive drift are truncated once a return to the nonpositive
// half-line has probability below 1e-9 (supermartingale bound); driftless
// walks require an explicit cutoff height and the unresolved mass is folded
// into the interval.
FEstimate estimate_f(double lambda, const JumpDistribution& jumps, std::uint64_t samples,
                     std::uint64_t seed, std::int32_t cutoff = 0);

struct GoodWalkEstimate {
    double k_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t good = 0;
    std::uint64_t bad = 0;
    std::uint64_t undecided = 0;  // horizon hit; counted in ci_high only
    std::uint64_t samples = 0;
};

// K = P[(X_n - X_0) . e1 > 0 for all n >= 1], estimated by simulation with
// the same truncation rule on the e1 marginal.
GoodWalkEstimate good_walk_fraction(const JumpDistribution& jumps, std::uint64_t samples,
                                    std::uint64_t seed, std::uint64_t horizon = 0);

struct Taggi2dVerdict {
    bool active = false;  // predicted non-fixation
    double margin = 0.0;  // lhs - rhs of the displayed inequality
    double lhs = 0.0;
    double rhs = 0.0;
};

// Evaluates [mu - lambda/(1+lambda) (1 - e^-mu)] K > e^-mu.
Taggi2dVerdict taggi2d_condition(double mu, double lambda, double k_hat);

}  // namespace arw
