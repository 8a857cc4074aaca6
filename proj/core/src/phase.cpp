#include "arw/phase.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "arw/engine.hpp"
#include "arw/parallel.hpp"
#include "arw/stats.hpp"

namespace arw {

std::string PhaseProtocol::describe() const {
    std::ostringstream os;
    os << "radii=";
    for (std::size_t i = 0; i < radii.size(); ++i) os << (i ? "," : "") << radii[i];
    os << " reps=" << reps << " rule=median-origin-odometer>sqrt(L)|flat-top-two";
    return os.str();
}

namespace {

PhaseEvaluation classify(double mu, double lambda, int dim, const JumpDistribution& jumps,
                         const PhaseProtocol& protocol, std::uint64_t seed,
                         std::uint64_t eval_index, int threads) {
    PhaseEvaluation eval;
    eval.mu = mu;
    const InitialLaw law = InitialLaw::poisson(mu);
    const std::size_t nl = protocol.radii.size();
    std::uint64_t reps = protocol.reps;

    for (int attempt = 0; attempt <= protocol.max_rep_doublings; ++attempt) {
        std::vector<std::vector<double>> values(nl, std::vector<double>(reps));
        parallel_for(reps, threads, [&](std::uint64_t r) {
            const std::uint64_t s =
                rng::combine(seed, rng::salt_experiment, eval_index * 131 + attempt, r);
            const auto profile =
                odometer_profile(law, lambda, jumps, dim, protocol.radii, s, protocol.cap);
            for (std::size_t k = 0; k < nl; ++k)
                values[k][r] = profile[k].status == StabStatus::cap_exceeded
                                   ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(profile[k].origin_odometer);
        });
        eval.medians.clear();
        for (std::size_t k = 0; k < nl; ++k) eval.medians.push_back(stats::median(values[k]));
        eval.reps_used = reps;

        const double top = eval.medians.back();
        const double root = std::sqrt(static_cast<double>(protocol.radii.back()));
        if (top > root) {
            eval.verdict = PhaseVerdict::active;
            return eval;
        }
        if (nl >= 2 && top == eval.medians[nl - 2]) {
            eval.verdict = PhaseVerdict::fixating;
            return eval;
        }
        if (nl < 2) {
            eval.verdict = PhaseVerdict::fixating;
            return eval;
        }
        reps *= 2;
    }
    // Persistent middle ground: near criticality the median grows like
    // sqrt(L), while below it the medians are flat up to integer noise, so
    // demand a quarter of the critical growth before calling it active.
    const std::size_t last = eval.medians.size() - 1;
    const double growth = eval.medians[last] - eval.medians[last - 1];
    const double critical_growth = std::sqrt(static_cast<double>(protocol.radii[last])) -
                                   std::sqrt(static_cast<double>(protocol.radii[last - 1]));
    eval.verdict = growth > std::max(2.0, 0.25 * critical_growth) ? PhaseVerdict::active
                                                                  : PhaseVerdict::fixating;
    return eval;
}

}  // namespace

PhaseEstimate estimate_mu_c(double lambda, int dim, const JumpDistribution& jumps,
                            const PhaseProtocol& protocol, std::uint64_t seed, int threads) {
    if (protocol.radii.empty()) throw std::invalid_argument("protocol needs window radii");
    if (!(protocol.lo > 0.0) || !(protocol.hi > protocol.lo))
        throw std::invalid_argument("protocol needs 0 < lo < hi");

    PhaseEstimate est;
    est.lambda = lambda;
    est.protocol = protocol.describe();
    std::uint64_t evals = 0;

    auto run = [&](double mu) {
        PhaseEvaluation e = classify(mu, lambda, dim, jumps, protocol, seed, evals++, threads);
        est.evaluations.push_back(e);
        return e.verdict;
    };

    if (run(protocol.lo) != PhaseVerdict::fixating)
        throw no_separation("lower endpoint does not fixate under the proxy");
    if (run(protocol.hi) != PhaseVerdict::active)
        throw no_separation("upper endpoint is not active under the proxy");

    double lo = protocol.lo, hi = protocol.hi;
    while (hi - lo > protocol.target_width) {
        const double mid = 0.5 * (lo + hi);
        if (run(mid) == PhaseVerdict::active)
            hi = mid;
        else
            lo = mid;
    }
    est.ci_low = lo;
    est.ci_high = hi;
    est.mu_c_hat = 0.5 * (lo + hi);
    return est;
}

}  // namespace arw
