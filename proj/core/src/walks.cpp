#include "arw/walks.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "arw/rng.hpp"
#include "arw/stats.hpp"

namespace arw {

namespace {

struct Marginal {
    std::vector<std::int32_t> step;  // e1 component per entry
    bool has_negative = false;
    double drift = 0.0;
};

Marginal e1_marginal(const JumpDistribution& jumps) {
    Marginal m;
    for (const JumpEntry& e : jumps.entries()) {
        m.step.push_back(e.offset[0]);
        if (e.offset[0] < 0) m.has_negative = true;
        m.drift += e.prob * e.offset[0];
    }
    return m;
}

// Root r in (0,1) of sum_z p(z) r^(z.e1) = 1 for a positive-drift marginal
// with some negative step; r^h bounds the probability of ever returning to
// the nonpositive half-line from height h.
double decay_root(const JumpDistribution& jumps) {
    auto f = [&](double r) {
        double s = 0.0;
        for (const JumpEntry& e : jumps.entries()) s += e.prob * std::pow(r, e.offset[0]);
        return s;
    };
    double lo = 0.5;
    while (f(lo) <= 1.0) lo *= 0.5;
    double hi = 1.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace

FEstimate estimate_f(double lambda, const JumpDistribution& jumps, std::uint64_t samples,
                     std::uint64_t seed, std::int32_t cutoff) {
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw std::invalid_argument("estimate_f requires finite lambda > 0");
    if (jumps.dim() != 1) throw std::invalid_argument("estimate_f requires a 1D walk");
    if (samples == 0) throw std::invalid_argument("estimate_f requires samples > 0");
    const Marginal m = e1_marginal(jumps);

    double per_sample_bias = 0.0;
    std::int64_t stop_height;
    if (!m.has_negative) {
        stop_height = 1;  // no step ever goes left; one positive step is final
    } else if (m.drift > 0.0) {
        const double r = decay_root(jumps);
        stop_height = static_cast<std::int64_t>(std::ceil(std::log(1e-9) / std::log(r)));
        per_sample_bias += 1e-9;
    } else {
        if (cutoff <= 0)
            throw std::invalid_argument(
                "estimate_f: driftless walk needs an explicit cutoff height");
        stop_height = std::int64_t{cutoff} * std::max<std::int64_t>(1, jumps.max_range());
        per_sample_bias = 0.0;  // accumulated per truncated path below
    }

    const double survive = 1.0 / (1.0 + lambda);
    // Steps beyond this never move the estimate by more than 1e-12.
    const std::int64_t t_max =
        static_cast<std::int64_t>(std::ceil(std::log(1e-12) / std::log(survive)));

    std::vector<double> values;
    values.reserve(samples);
    double truncated_mass = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        rng::Stream s(rng::combine(seed, rng::salt_walk, i));
        std::int64_t pos = 0;
        std::int64_t t = 0;
        while (t <= t_max) {
            if (pos <= 0) ++t;
            if (pos >= stop_height) break;
            pos += m.step[jumps.pick(s.next_u01())];
        }
        const double v = std::pow(survive, static_cast<double>(t));
        if (m.drift <= 0.0 && m.has_negative && pos >= stop_height) {
            // Driftless truncation: the path may still return; v is an upper value.
            truncated_mass += v;
        }
        values.push_back(v);
    }
    const stats::MeanCI ci = stats::mean_ci95(values);
    FEstimate est;
    est.f_hat = ci.mean;
    est.samples = samples;
    est.truncation_bound =
        per_sample_bias + truncated_mass / static_cast<double>(samples);
    est.ci_low = ci.lo - est.truncation_bound;
    est.ci_high = ci.hi;
    return est;
}

GoodWalkEstimate good_walk_fraction(const JumpDistribution& jumps, std::uint64_t samples,
                                    std::uint64_t seed, std::uint64_t horizon) {
    if (samples == 0) throw std::invalid_argument("good_walk_fraction requires samples > 0");
    const Marginal m = e1_marginal(jumps);
    std::int64_t stop_height;
    if (!m.has_negative) {
        stop_height = 1;
    } else if (m.drift > 0.0) {
        stop_height = static_cast<std::int64_t>(std::ceil(std::log(1e-9) / std::log(decay_root(jumps))));
    } else {
        if (horizon == 0)
            throw std::invalid_argument("good_walk_fraction: driftless walk needs a horizon");
        stop_height = std::numeric_limits<std::int64_t>::max();
    }
    if (horizon == 0) horizon = 100'000'000;

    GoodWalkEstimate est;
    est.samples = samples;
    for (std::uint64_t i = 0; i < samples; ++i) {
        rng::Stream s(rng::combine(seed, rng::salt_walk, i));
        std::int64_t disp = 0;
        bool decided = false;
        for (std::uint64_t n = 0; n < horizon; ++n) {
            disp += m.step[jumps.pick(s.next_u01())];
            if (disp <= 0) {
                ++est.bad;
                decided = true;
                break;
            }
            if (disp >= stop_height) {
                ++est.good;
                decided = true;
                break;
            }
        }
        if (!decided) ++est.undecided;
    }
    const double n = static_cast<double>(samples);
    est.k_hat = static_cast<double>(est.good) / n;
    const stats::MeanCI ci = stats::proportion_ci95(est.good, samples);
    est.ci_low = ci.lo;
    est.ci_high = ci.hi + static_cast<double>(est.undecided) / n + (m.has_negative ? 1e-9 : 0.0);
    return est;
}

Taggi2dVerdict taggi2d_condition(double mu, double lambda, double k_hat) {
    if (!(mu > 0.0)) throw std::invalid_argument("taggi2d_condition requires mu > 0");
    if (lambda < 0.0) throw std::invalid_argument("taggi2d_condition requires lambda >= 0");
    if (!(k_hat >= 0.0) || !(k_hat <= 1.0))
        throw std::invalid_argument("taggi2d_condition requires K in [0,1]");
    const double sleep_frac = std::isinf(lambda) ? 1.0 : lambda / (1.0 + lambda);
    Taggi2dVerdict v;
    v.lhs = (mu - sleep_frac * (1.0 - std::exp(-mu))) * k_hat;
    v.rhs = std::exp(-mu);
    v.margin = v.lhs - v.rhs;
    v.active = v.margin > 0.0;
    return v;
}

}  // namespace arw
