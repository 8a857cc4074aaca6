#include "arw/recursion.hpp"

#include <cmath>
#include <stdexcept>

namespace arw {

bool RecursionTrace::self_consistent() const {
    if (n.empty() || n[0] != 0) return false;
    if (y.size() != eta.size() || n.size() != eta.size() + 1) return false;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const std::int64_t next = std::max<std::int64_t>(n[i] + eta[i] - y[i], 0);
        if (n[i + 1] != next) return false;
    }
    return true;
}

RecursionTrace run_recursion(std::span<const std::int32_t> eta,
                             std::span<const std::uint8_t> y) {
    if (eta.size() != y.size()) throw std::invalid_argument("eta/Y length mismatch");
    RecursionTrace t;
    t.eta.assign(eta.begin(), eta.end());
    t.y.assign(y.begin(), y.end());
    t.n.reserve(eta.size() + 1);
    t.n.push_back(0);
    for (std::size_t i = 0; i < eta.size(); ++i)
        t.n.push_back(std::max<std::int64_t>(t.n.back() + eta[i] - y[i], 0));
    return t;
}

std::vector<RecursionTrace> directed_recursion(std::int32_t big_l, double mu, double lambda,
                                               std::uint64_t seed, std::uint64_t reps) {
    if (big_l < 1) throw std::invalid_argument("L must be >= 1");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw std::invalid_argument("lambda must be finite and > 0");
    const double sleep_prob = lambda / (1.0 + lambda);
    std::vector<RecursionTrace> out;
    out.reserve(reps);
    for (std::uint64_t r = 0; r < reps; ++r) {
        rng::Stream s(rng::combine(seed, rng::salt_experiment, r));
        std::vector<std::int32_t> eta(static_cast<std::size_t>(big_l));
        std::vector<std::uint8_t> y(static_cast<std::size_t>(big_l));
        for (std::int32_t i = 0; i < big_l; ++i) {
            eta[static_cast<std::size_t>(i)] = s.poisson(mu);
            y[static_cast<std::size_t>(i)] = s.bernoulli(sleep_prob) ? 1 : 0;
        }
        out.push_back(run_recursion(eta, y));
    }
    return out;
}

RecursionEngineReport recursion_vs_engine(std::int32_t big_l, double mu, double lambda,
                                          std::uint64_t seed) {
    const JumpDistribution jumps = JumpDistribution::directed_1d();
    const InstructionField field(seed, lambda, jumps);
    // Window [-L, -1]; the origin sits in the frozen halo and collects the
    // particles that jump into it.
    const Arena arena(1, Box::interval(-big_l, -1), 1, BoundaryMode::frozen);
    const InitialLaw law = InitialLaw::poisson(mu);
    Configuration cfg = sample_initial(law, arena, seed);

    std::vector<std::int32_t> eta(static_cast<std::size_t>(big_l));
    for (std::int32_t i = 0; i < big_l; ++i)
        eta[static_cast<std::size_t>(i)] = cfg.at(Site(-big_l + i)).particle_count();

    const StabilizationResult r = stabilize(
        std::move(cfg), field, TopplingPolicy::sweep(),
        default_cap(arena, mu) + 16 * static_cast<std::uint64_t>(big_l));
    if (r.status != StabStatus::stable)
        throw std::runtime_error("recursion_vs_engine: directed stabilization hit its cap");

    // Y_i is read off the final state: the site kept its last particle
    // exactly when it ended sleeping.  Where no particle was ever present the
    // value is irrelevant to the recursion.
    std::vector<std::uint8_t> y(static_cast<std::size_t>(big_l));
    for (std::int32_t i = 0; i < big_l; ++i)
        y[static_cast<std::size_t>(i)] = r.final.at(Site(-big_l + i)).is_sleeping() ? 1 : 0;

    RecursionEngineReport report;
    report.recursion_count = run_recursion(eta, y).n_final();
    report.engine_count = r.final.at(origin).particle_count();
    report.exact = report.recursion_count == report.engine_count;
    return report;
}

ExcessReport excess_statistic(std::int32_t big_l, double mu, double lambda,
                              const JumpDistribution& jumps, std::uint64_t seed,
                              std::uint64_t reps, std::uint64_t max_checks) {
    if (big_l < 4) throw std::invalid_argument("L must be >= 4");
    const double threshold = static_cast<double>(big_l) + 2.0 * std::sqrt(big_l);
    const double root = std::sqrt(big_l);
    const InitialLaw law = InitialLaw::poisson(mu);
    const Arena arena(1, Box::interval(0, big_l), 1, BoundaryMode::frozen);

    ExcessReport report;
    report.reps = reps;
    for (std::uint64_t r = 0; r < reps; ++r) {
        const std::uint64_t rep_seed = rng::replicate_seed(seed, r);
        Configuration cfg = sample_initial(law, arena, rep_seed);
        const std::uint64_t total = cfg.total_particles();
        if (static_cast<double>(total) < threshold) continue;
        ++report.excess_hits;
        if (report.checked >= max_checks) continue;
        ++report.checked;
        const InstructionField field(rep_seed, lambda, jumps);
        const StabilizationResult sr =
            stabilize(std::move(cfg), field, TopplingPolicy::fifo(),
                      default_cap(arena, mu) * (1 + static_cast<std::uint64_t>(big_l)));
        if (sr.status != StabStatus::stable) continue;
        const std::uint64_t m0 = sr.odometer.at_index(arena.index_of(Site(0)));
        const std::uint64_t ml = sr.odometer.at_index(arena.index_of(Site(big_l)));
        const bool hit = static_cast<double>(m0) >= root || static_cast<double>(ml) >= root;
        if (hit) {
            ++report.boundary_hits;
            ++report.confirmed;
        }
    }
    return report;
}

}  // namespace arw
