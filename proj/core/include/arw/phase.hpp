#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arw/jumps.hpp"

namespace arw {

class no_separation : public std::runtime_error {
  public:
    explicit no_separation(const std::string& what) : std::runtime_error(what) {}
};

struct PhaseProtocol {
    std::vector<std::int32_t> radii = {256, 1024, 4096};
    std::uint64_t reps = 40;
    std::uint64_t cap = 0;  // per stabilization; 0 = engine default
    double lo = 0.05;
    double hi = 0.95;
    double target_width = 0.1;
    int max_rep_doublings = 2;

    std::string describe() const;
};

enum class PhaseVerdict { active, fixating, undecided };

struct PhaseEvaluation {
    double mu = 0.0;
    PhaseVerdict verdict = PhaseVerdict::undecided;
    std::vector<double> medians;  // median origin odometer per radius
    std::uint64_t reps_used = 0;
};

struct PhaseEstimate {
    double lambda = 0.0;
    double mu_c_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::string protocol;
    std::vector<PhaseEvaluation> evaluations;
};

// Bisection over mu with the finite-volume activity proxy: a density is
// Active when the median origin odometer at the largest window exceeds
// sqrt(L) (a capped run counts as unbounded), Fixating when the median is
// constant across the top two windows; otherwise the evaluation is repeated
// with doubled replication and finally settled by the growth trend.  Throws
// no_separation when the proxy cannot classify the bracket endpoints.
PhaseEstimate estimate_mu_c(double lambda, int dim, const JumpDistribution& jumps,
                            const PhaseProtocol& protocol, std::uint64_t seed, int threads = 1);

}  // namespace arw
