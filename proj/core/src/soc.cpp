#include "arw/soc.hpp"

#include <stdexcept>

namespace arw {

namespace {

// Least-squares slope of density against addition count.
double fit_slope(const std::vector<SocSample>& samples, std::size_t from) {
    const std::size_t n = samples.size() - from;
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = from; i < samples.size(); ++i) {
        mx += static_cast<double>(samples[i].additions);
        my += samples[i].bulk_density;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = from; i < samples.size(); ++i) {
        const double dx = static_cast<double>(samples[i].additions) - mx;
        sxx += dx * dx;
        sxy += dx * (samples[i].bulk_density - my);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

SocTrace soc_run(const SocParams& params, const JumpDistribution& jumps, std::uint64_t seed) {
    if (params.side < 3) throw std::invalid_argument("soc window side must be >= 3");
    const Arena arena(params.dim, Box::cube(params.side, params.dim),
                      std::max(1, static_cast<int>(jumps.max_range())),
                      BoundaryMode::dissipative);
    const InstructionField field(seed, params.lambda, jumps);
    const TopplingPolicy policy = TopplingPolicy::fifo();
    // Budget sized for a boundary-spanning avalanche, diffusive or directed.
    const std::uint64_t relax_cap =
        params.relax_cap
            ? params.relax_cap
            : default_cap(arena, std::max(1.0, params.initial_density)) +
                  4 * static_cast<std::uint64_t>(arena.window_cells()) *
                      static_cast<std::uint64_t>(params.side);

    Configuration cfg(arena);
    std::uint64_t initial_particles = 0;
    if (params.initial_density > 0.0) {
        cfg = sample_initial(InitialLaw::poisson(params.initial_density), arena, seed);
        initial_particles = cfg.total_particles();
    }

    Odometer odometer(arena);
    SocTrace trace;

    // Settle the starting configuration before driving; a dense start can
    // need far more topplings than any driven relaxation.
    const std::uint64_t initial_cap =
        std::max(relax_cap, (initial_particles + 1) *
                                static_cast<std::uint64_t>(arena.window_cells()) * 4);
    if (stabilize_in_place(cfg, odometer, field, policy, initial_cap, &trace.topplings) !=
        StabStatus::stable)
        throw std::runtime_error("soc_run: initial relaxation exceeded its cap");

    rng::Stream addsite(rng::combine(seed, rng::salt_experiment));
    const Box& win = arena.window();
    const double window_cells = static_cast<double>(arena.window_cells());
    std::uint64_t in_window = cfg.window_particles();

    for (std::uint64_t a = 1; a <= params.additions; ++a) {
        Site s;
        for (int axis = 0; axis < params.dim; ++axis) {
            const std::int64_t bulk = win.extent(axis) - 2;
            s[axis] = win.lo[axis] + 1 + static_cast<std::int32_t>(addsite.below(
                                             static_cast<std::uint64_t>(bulk)));
        }
        const std::int64_t i = arena.index_of(s);
        cfg.set_index(i, plus_one(cfg.at_index(i)));
        ++in_window;
        ++trace.additions;
        const std::uint64_t dissipated_before = cfg.outside_count();
        if (stabilize_in_place(cfg, odometer, field, policy, relax_cap, &trace.topplings) !=
            StabStatus::stable)
            throw std::runtime_error("soc_run: relaxation exceeded its cap");
        in_window -= cfg.outside_count() - dissipated_before;

        if (a % params.sample_every == 0 || a == params.additions) {
            // Exact recount at sampling instants; the running total must agree.
            const std::uint64_t counted = cfg.window_particles();
            if (counted != in_window ||
                initial_particles + trace.additions != counted + cfg.outside_count())
                trace.mass_balance_ok = false;
            trace.samples.push_back(
                SocSample{a, static_cast<double>(counted) / window_cells, cfg.outside_count()});
        }
    }

    trace.dissipated = cfg.outside_count();
    if (trace.samples.size() >= 5) {
        const std::size_t from = trace.samples.size() - trace.samples.size() / 5;
        double mean = 0.0;
        for (std::size_t i = from; i < trace.samples.size(); ++i)
            mean += trace.samples[i].bulk_density;
        mean /= static_cast<double>(trace.samples.size() - from);
        trace.plateau_density = mean;
        trace.plateau_slope = fit_slope(trace.samples, from);
        trace.converged = std::abs(trace.plateau_slope) < 1e-6;
    }
    return trace;
}

}  // namespace arw
