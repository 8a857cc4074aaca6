#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "arw/arw.hpp"
#include "result_table.hpp"

namespace arw::cli {

namespace {

std::int32_t default_window(const RunConfig& cfg) {
    if (cfg.window > 0) return cfg.window;
    if (cfg.command == "animals") return 64;
    return 1024;
}

std::vector<std::int32_t> default_radii(const RunConfig& cfg) {
    return cfg.l_list.empty() ? std::vector<std::int32_t>{256, 1024, 4096} : cfg.l_list;
}

// ---------------------------------------------------------------------------
// check

struct SuiteOutcome {
    std::uint64_t ok = 0;
    std::uint64_t total = 0;
    bool passed() const { return ok == total; }
};

SuiteOutcome suite_abelian(const RunConfig& cfg, std::uint64_t n) {
    SuiteOutcome s{0, n};
    const double inf = std::numeric_limits<double>::infinity();
    const double lambdas[3] = {0.5, 1.0, inf};
    std::vector<std::uint8_t> ok(n, 0);
    parallel_for(n, cfg.threads, [&](std::uint64_t i) {
        rng::Stream gen(rng::replicate_seed(cfg.seed, i));
        const double lambda = lambdas[i % 3];
        const double mu = 0.05 + 1.95 * gen.next_u01();
        InstanceSpec spec = [&]() -> InstanceSpec {
            if (i % 2 == 0) {
                const std::int32_t len = 4 + static_cast<std::int32_t>(gen.below(29));
                const JumpDistribution jumps = std::isinf(lambda) || (i % 4 == 1)
                                                   ? JumpDistribution::symmetric_1d()
                                                   : JumpDistribution::directed_1d();
                return InstanceSpec{Arena(1, Box::interval(0, len - 1), 1, BoundaryMode::frozen),
                                    InitialLaw::poisson(mu), lambda, jumps, 2'000'000};
            }
            const std::int32_t side = 3 + static_cast<std::int32_t>(gen.below(6));
            return InstanceSpec{Arena(2, Box::cube(side, 2), 1, BoundaryMode::frozen),
                                InitialLaw::poisson(mu), lambda,
                                JumpDistribution::symmetric_2d(), 2'000'000};
        }();
        const std::vector<TopplingPolicy> policies{TopplingPolicy::fifo(), TopplingPolicy::lifo(),
                                                   TopplingPolicy::uniform_random(gen.next())};
        const AbelianReport r = check_abelian(spec, policies, gen.next());
        ok[i] = r.all_stable && r.all_equal && r.max_odometer_discrepancy == 0;
    });
    for (std::uint64_t i = 0; i < n; ++i) s.ok += ok[i];
    return s;
}

SuiteOutcome suite_least_action(const RunConfig& cfg, std::uint64_t n) {
    SuiteOutcome s{0, n};
    std::vector<std::uint8_t> ok(n, 0);
    parallel_for(n, cfg.threads, [&](std::uint64_t i) {
        rng::Stream gen(rng::replicate_seed(cfg.seed ^ 0x6c61, i));
        const std::int32_t len = 6 + static_cast<std::int32_t>(gen.below(19));
        const double mu = 0.3 + 1.2 * gen.next_u01();
        const InstanceSpec spec{Arena(1, Box::interval(0, len - 1), 1, BoundaryMode::frozen),
                                InitialLaw::poisson(mu), (i % 2) ? 0.5 : 1.0,
                                (i % 3) ? JumpDistribution::symmetric_1d()
                                        : JumpDistribution::directed_1d(),
                                2'000'000};
        const LeastActionReport r = check_least_action(spec, gen.next(), 3);
        ok[i] = r.constructed && r.dominated;
    });
    for (std::uint64_t i = 0; i < n; ++i) s.ok += ok[i];
    return s;
}

SuiteOutcome suite_recursion(const RunConfig& cfg, std::uint64_t n) {
    SuiteOutcome s{0, n};
    std::vector<std::uint8_t> ok(n, 0);
    parallel_for(n, cfg.threads, [&](std::uint64_t i) {
        rng::Stream gen(rng::replicate_seed(cfg.seed ^ 0x7263, i));
        const double lambdas[3] = {0.5, 1.0, 2.0};
        const std::int32_t l = 4 + static_cast<std::int32_t>(gen.below(125));
        const double mu = 0.05 + 0.95 * gen.next_u01();
        ok[i] = recursion_vs_engine(l, mu, lambdas[i % 3], gen.next()).exact;
    });
    for (std::uint64_t i = 0; i < n; ++i) s.ok += ok[i];
    return s;
}

SuiteOutcome suite_conservation(const RunConfig& cfg, std::uint64_t n) {
    SuiteOutcome s{0, n};
    std::vector<std::uint8_t> ok(n, 0);
    parallel_for(n, cfg.threads, [&](std::uint64_t i) {
        rng::Stream gen(rng::replicate_seed(cfg.seed ^ 0x636f, i));
        const double mu = 0.2 + 1.3 * gen.next_u01();
        const std::uint64_t seed = gen.next();
        const BoundaryMode mode = i % 3 == 0   ? BoundaryMode::frozen
                                  : i % 3 == 1 ? BoundaryMode::dissipative
                                               : BoundaryMode::torus;
        const int halo = mode == BoundaryMode::torus ? 0 : 1;
        const Arena arena(1, Box::interval(0, 15 + static_cast<std::int32_t>(gen.below(17))),
                          halo, mode);
        const InstructionField field(seed, 1.0, JumpDistribution::symmetric_1d());
        const Configuration cfg0 = sample_initial(InitialLaw::poisson(mu), arena, seed);
        const std::uint64_t before = cfg0.total_particles();
        const StabilizationResult r =
            stabilize(cfg0, field, TopplingPolicy::fifo(), 4'000'000);
        ok[i] = r.status == StabStatus::stable &&
                r.final.total_particles() + r.final.outside_count() == before;
    });
    for (std::uint64_t i = 0; i < n; ++i) s.ok += ok[i];
    return s;
}

SuiteOutcome suite_monotonicity(const RunConfig& cfg, std::uint64_t n) {
    SuiteOutcome s{0, n};
    const std::vector<std::int32_t> radii{4, 8, 16, 32};
    std::vector<std::uint8_t> ok(n, 0);
    parallel_for(n, cfg.threads, [&](std::uint64_t i) {
        const auto profile =
            odometer_profile(InitialLaw::poisson(0.6), 1.0, JumpDistribution::symmetric_1d(), 1,
                             radii, rng::replicate_seed(cfg.seed ^ 0x6d6f, i), 4'000'000);
        bool good = true;
        for (std::size_t k = 0; k < profile.size(); ++k) {
            if (profile[k].status != StabStatus::stable) good = false;
            if (k && profile[k].origin_odometer < profile[k - 1].origin_odometer) good = false;
        }
        ok[i] = good;
    });
    for (std::uint64_t i = 0; i < n; ++i) s.ok += ok[i];
    return s;
}

int cmd_check(const RunConfig& cfg, ResultTable& table) {
    const std::vector<std::string> all{"abelian", "least-action", "recursion", "conservation",
                                       "monotonicity"};
    std::vector<std::string> suites;
    if (cfg.suite == "all")
        suites = all;
    else
        suites.push_back(cfg.suite);
    bool violation = false;
    for (const std::string& name : suites) {
        SuiteOutcome s;
        if (name == "abelian")
            s = suite_abelian(cfg, cfg.reps);
        else if (name == "least-action")
            s = suite_least_action(cfg, cfg.reps);
        else if (name == "recursion")
            s = suite_recursion(cfg, cfg.reps);
        else if (name == "conservation")
            s = suite_conservation(cfg, cfg.reps);
        else if (name == "monotonicity")
            s = suite_monotonicity(cfg, cfg.reps);
        else
            throw std::invalid_argument("unknown check suite: " + name);
        std::printf("%s: %llu/%llu exact\n", name.c_str(),
                    static_cast<unsigned long long>(s.ok),
                    static_cast<unsigned long long>(s.total));
        table.add(-1, name + "_ok", static_cast<double>(s.ok));
        table.add(-1, name + "_total", static_cast<double>(s.total));
        violation = violation || !s.passed();
    }
    const int write_code = table.write();
    if (write_code != exit_ok) return write_code;
    return violation ? exit_property_violation : exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_stabilize(RunConfig cfg, ResultTable& table) {
    cfg.window = default_window(cfg);
    const JumpDistribution jumps = JumpDistribution::parse(cfg.jumps);
    const Arena arena(cfg.dim, Box::cube(cfg.window, cfg.dim),
                      std::max(1, static_cast<int>(jumps.max_range())), BoundaryMode::frozen);
    const std::uint64_t cap = cfg.cap ? cfg.cap : default_cap(arena, cfg.mu);
    struct Out {
        double stable, topplings, origin, particles, density;
    };
    std::vector<Out> outs(cfg.reps);
    parallel_for(cfg.reps, cfg.threads, [&](std::uint64_t r) {
        const std::uint64_t seed = rng::replicate_seed(cfg.seed, r);
        const InstructionField field(seed, cfg.lambda, jumps);
        const StabilizationResult res =
            stabilize(sample_initial(InitialLaw::poisson(cfg.mu), arena, seed), field,
                      TopplingPolicy::parse(cfg.policy, seed), cap);
        const double particles = static_cast<double>(res.final.window_particles());
        outs[r] = Out{res.status == StabStatus::stable ? 1.0 : 0.0,
                      static_cast<double>(res.topplings_total),
                      static_cast<double>(res.origin_odometer), particles,
                      particles / static_cast<double>(arena.window_cells())};
    });
    for (std::uint64_t r = 0; r < cfg.reps; ++r) {
        const auto i = static_cast<std::int64_t>(r);
        table.add_at(cfg.window, i, "stable", outs[r].stable);
        table.add_at(cfg.window, i, "topplings", outs[r].topplings);
        table.add_at(cfg.window, i, "origin_odometer", outs[r].origin);
        table.add_at(cfg.window, i, "window_particles", outs[r].particles);
        table.add_at(cfg.window, i, "density_final", outs[r].density);
    }
    return table.write();
}

int cmd_directed(RunConfig cfg, ResultTable& table) {
    cfg.window = default_window(cfg);
    const auto traces = directed_recursion(cfg.window, cfg.mu, cfg.lambda, cfg.seed, cfg.reps);
    std::vector<double> finals;
    for (std::size_t r = 0; r < traces.size(); ++r) {
        table.add_at(cfg.window, static_cast<std::int64_t>(r), "N_L",
                     static_cast<double>(traces[r].n_final()));
        finals.push_back(static_cast<double>(traces[r].n_final()));
    }
    table.add_at(cfg.window, -1, "N_L_median", stats::median(finals));
    table.add_at(cfg.window, -1, "N_L_mean", stats::mean(finals));
    return table.write();
}

int cmd_traps(const RunConfig& cfg, ResultTable& table) {
    const JumpDistribution jumps = JumpDistribution::parse(cfg.jumps);
    struct Out {
        int status;
        bool verified;
        std::vector<std::int32_t> gaps;
    };
    std::vector<Out> outs(cfg.reps);
    parallel_for(cfg.reps, cfg.threads, [&](std::uint64_t r) {
        const TrapReport rep = trap_certify(cfg.mu, cfg.lambda, jumps, cfg.n_particles,
                                            rng::replicate_seed(cfg.seed, r));
        outs[r] = Out{static_cast<int>(rep.status),
                      rep.success() && rep.replay_ok && rep.engine_verified &&
                          rep.engine_origin_odometer == 0,
                      rep.success() ? rep.gaps : std::vector<std::int32_t>{}};
    });
    std::uint64_t successes = 0, verified = 0;
    double gap_sum = 0.0;
    std::uint64_t gap_count = 0;
    for (std::uint64_t r = 0; r < cfg.reps; ++r) {
        const bool success = outs[r].status == static_cast<int>(TrapReport::Status::success);
        table.add(static_cast<std::int64_t>(r), "success", success ? 1.0 : 0.0);
        table.add(static_cast<std::int64_t>(r), "failure_stage",
                  static_cast<double>(outs[r].status));
        if (success) {
            ++successes;
            verified += outs[r].verified;
            for (std::int32_t g : outs[r].gaps) {
                gap_sum += g;
                ++gap_count;
            }
        }
    }
    table.add(-1, "success_rate",
              static_cast<double>(successes) / static_cast<double>(cfg.reps));
    table.add(-1, "verified", static_cast<double>(verified));
    table.add(-1, "gap_count", static_cast<double>(gap_count));
    table.add(-1, "gap_mean", gap_count ? gap_sum / static_cast<double>(gap_count) : 0.0);
    return table.write();
}

int cmd_ghosts(RunConfig cfg, ResultTable& table) {
    cfg.window = cfg.radius;
    const GhostReport r =
        ghost_experiment(cfg.radius, cfg.mu, cfg.seed, cfg.reps, cfg.threads);
    for (std::size_t i = 0; i < r.per_rep.size(); ++i) {
        const auto k = static_cast<std::int64_t>(i);
        table.add_at(cfg.radius, k, "W", static_cast<double>(r.per_rep[i].w));
        table.add_at(cfg.radius, k, "L", static_cast<double>(r.per_rep[i].l));
        table.add_at(cfg.radius, k, "L_tilde", static_cast<double>(r.per_rep[i].l_tilde));
    }
    table.add_at(cfg.radius, -1, "W_mean", r.w_mean);
    table.add_at(cfg.radius, -1, "L_mean", r.l_mean);
    table.add_at(cfg.radius, -1, "L_tilde_mean", r.lt_mean);
    table.add_at(cfg.radius, -1, "W_var", r.w_var);
    table.add_at(cfg.radius, -1, "L_tilde_var", r.lt_var);
    table.add_at(cfg.radius, -1, "ratio", r.ratio);
    table.add_at(cfg.radius, -1, "l_le_lt", r.l_le_lt ? 1.0 : 0.0);
    return table.write();
}

int cmd_soc(RunConfig cfg, ResultTable& table) {
    cfg.window = default_window(cfg);
    SocParams p;
    p.side = cfg.window;
    p.dim = cfg.dim;
    p.lambda = cfg.lambda;
    p.additions = cfg.additions;
    p.sample_every = cfg.sample_every;
    p.relax_cap = cfg.cap;
    p.initial_density = cfg.initial_density;
    const SocTrace t = soc_run(p, JumpDistribution::parse(cfg.jumps), cfg.seed);
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        const auto k = static_cast<std::int64_t>(i);
        table.add_at(cfg.window, k, "additions", static_cast<double>(t.samples[i].additions));
        table.add_at(cfg.window, k, "density", t.samples[i].bulk_density);
        table.add_at(cfg.window, k, "dissipated", static_cast<double>(t.samples[i].dissipated));
    }
    table.add_at(cfg.window, -1, "plateau_density", t.plateau_density);
    table.add_at(cfg.window, -1, "plateau_slope", t.plateau_slope);
    table.add_at(cfg.window, -1, "converged", t.converged ? 1.0 : 0.0);
    table.add_at(cfg.window, -1, "mass_balance_ok", t.mass_balance_ok ? 1.0 : 0.0);
    table.add_at(cfg.window, -1, "topplings", static_cast<double>(t.topplings));
    if (!t.mass_balance_ok) return exit_property_violation;
    return table.write();
}

int cmd_mu_c(const RunConfig& cfg, ResultTable& table) {
    PhaseProtocol protocol;
    protocol.radii = default_radii(cfg);
    protocol.reps = cfg.reps;
    protocol.cap = cfg.cap;
    protocol.lo = cfg.mu_min;
    protocol.hi = cfg.mu_max;
    protocol.target_width = cfg.target_width;
    const PhaseEstimate est = estimate_mu_c(cfg.lambda, cfg.dim,
                                            JumpDistribution::parse(cfg.jumps), protocol,
                                            cfg.seed, cfg.threads);
    for (std::size_t i = 0; i < est.evaluations.size(); ++i) {
        const PhaseEvaluation& e = est.evaluations[i];
        const auto k = static_cast<std::int64_t>(i);
        table.add_mu(e.mu, protocol.radii.back(), k, "verdict_active",
                     e.verdict == PhaseVerdict::active ? 1.0 : 0.0);
        table.add_mu(e.mu, protocol.radii.back(), k, "median_origin_odometer",
                     e.medians.back());
        table.add_mu(e.mu, protocol.radii.back(), k, "reps_used",
                     static_cast<double>(e.reps_used));
    }
    table.add(-1, "mu_c_hat", est.mu_c_hat);
    table.add(-1, "ci_low", est.ci_low);
    table.add(-1, "ci_high", est.ci_high);
    return table.write();
}

int cmd_sweep(const RunConfig& cfg, ResultTable& table) {
    const std::vector<std::int32_t> radii = default_radii(cfg);
    const JumpDistribution jumps = JumpDistribution::parse(cfg.jumps);
    const int steps = std::max(2, cfg.mu_steps);
    std::vector<double> mus;
    for (int i = 0; i < steps; ++i)
        mus.push_back(cfg.mu_min +
                      (cfg.mu_max - cfg.mu_min) * static_cast<double>(i) /
                          static_cast<double>(steps - 1));
    // cell x replicate grid, deterministically seeded by flat task id
    std::vector<std::vector<std::vector<double>>> values(
        mus.size(), std::vector<std::vector<double>>(radii.size(),
                                                     std::vector<double>(cfg.reps, 0.0)));
    parallel_for(mus.size() * cfg.reps, cfg.threads, [&](std::uint64_t task) {
        const std::size_t m = static_cast<std::size_t>(task / cfg.reps);
        const std::uint64_t r = task % cfg.reps;
        const auto profile =
            odometer_profile(InitialLaw::poisson(mus[m]), cfg.lambda, jumps, cfg.dim, radii,
                             rng::replicate_seed(cfg.seed ^ (0x5357 + m), r), cfg.cap);
        for (std::size_t k = 0; k < radii.size(); ++k)
            values[m][k][r] = profile[k].status == StabStatus::cap_exceeded
                                  ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(profile[k].origin_odometer);
    });
    for (std::size_t m = 0; m < mus.size(); ++m) {
        for (std::size_t k = 0; k < radii.size(); ++k) {
            const double med = stats::median(values[m][k]);
            table.add_mu(mus[m], radii[k], -1, "median_origin_odometer", med);
            if (k + 1 == radii.size())
                table.add_mu(mus[m], radii[k], -1, "active",
                             med > std::sqrt(static_cast<double>(radii[k])) ? 1.0 : 0.0);
        }
    }
    return table.write();
}

int cmd_f_lambda(const RunConfig& cfg, ResultTable& table) {
    const FEstimate f = estimate_f(cfg.lambda, JumpDistribution::parse(cfg.jumps), cfg.samples,
                                   cfg.seed, cfg.cutoff);
    table.add(-1, "F_hat", f.f_hat);
    table.add(-1, "ci_low", f.ci_low);
    table.add(-1, "ci_high", f.ci_high);
    table.add(-1, "truncation_bound", f.truncation_bound);
    table.add(-1, "mu_c_upper", 1.0 - f.f_hat);
    table.add(-1, "samples", static_cast<double>(f.samples));
    return table.write();
}

int cmd_animals(RunConfig cfg, ResultTable& table) {
    cfg.window = default_window(cfg);
    const std::int32_t half = cfg.window / 2;
    const Arena arena(2, Box::rect(Site(-half, -half), Site(cfg.window - half - 1, cfg.window - half - 1), 2),
                      0, BoundaryMode::frozen);
    std::vector<std::vector<double>> ratios(cfg.reps);
    parallel_for(cfg.reps, cfg.threads, [&](std::uint64_t r) {
        const Configuration sample = sample_initial(InitialLaw::poisson(cfg.mu), arena,
                                                    rng::replicate_seed(cfg.seed, r));
        ratios[r] = greedy_animal_max(sample, cfg.size_cap).max_ratio;
    });
    std::uint64_t small_at_cap = 0;
    for (std::uint64_t r = 0; r < cfg.reps; ++r) {
        for (std::size_t s = 0; s < ratios[r].size(); ++s)
            table.add_at(static_cast<std::int64_t>(s + 1), static_cast<std::int64_t>(r),
                         "max_ratio", ratios[r][s]);
        if (ratios[r].back() < 1.0) ++small_at_cap;
    }
    table.add_at(cfg.size_cap, -1, "frac_below_one",
                 static_cast<double>(small_at_cap) / static_cast<double>(cfg.reps));
    return table.write();
}

}  // namespace

int run_command(const RunConfig& cfg) {
    ResultTable table(cfg);
    try {
        if (cfg.command == "check") return cmd_check(cfg, table);
        if (cfg.command == "stabilize") return cmd_stabilize(cfg, table);
        if (cfg.command == "directed") return cmd_directed(cfg, table);
        if (cfg.command == "traps") return cmd_traps(cfg, table);
        if (cfg.command == "ghosts") return cmd_ghosts(cfg, table);
        if (cfg.command == "soc") return cmd_soc(cfg, table);
        if (cfg.command == "mu-c") return cmd_mu_c(cfg, table);
        if (cfg.command == "sweep") return cmd_sweep(cfg, table);
        if (cfg.command == "f-lambda") return cmd_f_lambda(cfg, table);
        if (cfg.command == "animals") return cmd_animals(cfg, table);
        std::fprintf(stderr, "arw: unknown command %s\n", cfg.command.c_str());
        return exit_usage;
    } catch (const invalid_density& e) {
        std::fprintf(stderr, "arw %s: %s\n", cfg.command.c_str(), e.what());
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "arw %s: %s\n", cfg.command.c_str(), e.what());
        return exit_usage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "arw %s: %s\n", cfg.command.c_str(), e.what());
        return exit_runtime;
    }
}

int arw_main(const std::vector<std::string>& args) {
    const ParseOutcome out = parse_config(args);
    if (out.done) return out.exit_code;
    return run_command(out.config);
}

}  // namespace arw::cli
