#include "run_config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>

#include "arw/jumps.hpp"

namespace arw::cli {

namespace {

double parse_lambda(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF")
        return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters in --lambda");
    return v;
}

}  // namespace

ParseOutcome parse_config(const std::vector<std::string>& args) {
    ParseOutcome out;
    RunConfig& cfg = out.config;

    CLI::App app{"arw: activated random walk simulation toolkit"};
    app.set_config("--config", "", "flat key=value config file, '#' comments; flags override it");
    app.get_config_formatter_base()->comment('#');
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::string lambda_str = "1";
    app.add_option("--dim", cfg.dim, "lattice dimension, 1..3")->capture_default_str();
    app.add_option("--lambda", lambda_str, "sleep rate, positive real or 'inf'")
        ->capture_default_str();
    app.add_option("--mu", cfg.mu, "initial Poisson density")->capture_default_str();
    app.add_option("--jumps", cfg.jumps,
                   "jump distribution: directed|sym1d|biased1d:q|sym2d|biased2d:q|sym3d or "
                   "an explicit table like '1:0.7;-1:0.3'")
        ->capture_default_str();
    app.add_option("--L", cfg.window, "window size (command-specific default when 0)");
    app.add_option("--L-list", cfg.l_list, "window radii for profiles (mu-c, sweep)")
        ->delimiter(',');
    app.add_option("--reps", cfg.reps, "replicates (or seeds scanned)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "master seed; replicate r uses hash(seed, r)")
        ->capture_default_str();
    app.add_option("--cap", cfg.cap, "toppling budget per stabilization (0: default rule)");
    app.add_option("--out", cfg.out, "output file (stdout when empty)");
    app.add_option("--format", cfg.format, "csv|json")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0: hardware)")
        ->capture_default_str();
    app.add_option("--suite", cfg.suite,
                   "check: abelian|least-action|recursion|conservation|monotonicity|brute|all")
        ->capture_default_str();
    app.add_option("--policy", cfg.policy, "stabilize: fifo|lifo|sweep|random")
        ->capture_default_str();
    app.add_option("--additions", cfg.additions, "soc: particles to add")->capture_default_str();
    app.add_option("--sample-every", cfg.sample_every, "soc: sampling stride")
        ->capture_default_str();
    app.add_option("--initial-density", cfg.initial_density, "soc: Poisson start density")
        ->capture_default_str();
    app.add_option("--samples", cfg.samples, "f-lambda: Monte Carlo samples")
        ->capture_default_str();
    app.add_option("--cutoff", cfg.cutoff, "f-lambda: cutoff height for driftless walks");
    app.add_option("--n", cfg.n_particles, "traps: particles per side")->capture_default_str();
    app.add_option("--radius", cfg.radius, "ghosts: ball radius")->capture_default_str();
    app.add_option("--size-cap", cfg.size_cap, "animals: largest cluster size, <= 12")
        ->capture_default_str();
    app.add_option("--mu-min", cfg.mu_min, "sweep/mu-c: lower density")->capture_default_str();
    app.add_option("--mu-max", cfg.mu_max, "sweep/mu-c: upper density")->capture_default_str();
    app.add_option("--mu-steps", cfg.mu_steps, "sweep: grid points")->capture_default_str();
    app.add_option("--width", cfg.target_width, "mu-c: bracket width target")
        ->capture_default_str();

    const std::pair<const char*, const char*> commands[] = {
        {"check", "run exact property suites (abelianness, least action, ...); exit 1 on violation"},
        {"stabilize", "stabilize one sampled configuration and report the outcome"},
        {"directed", "1D directed counting recursion: N_L per replicate"},
        {"traps", "instruction-exploration fixation certifier over seeds"},
        {"ghosts", "one-ghost-per-site counting on a 2D ball"},
        {"soc", "driven-dissipative loop with full relaxation between additions"},
        {"mu-c", "bisection estimate of the critical density"},
        {"sweep", "density sweep of the activity proxy (phase-diagram data)"},
        {"f-lambda", "Monte Carlo estimate of the half-line survival functional F"},
        {"animals", "exhaustive internally-fillable cluster maxima per size"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
    }
    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("arw");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        out.done = true;
        out.exit_code = exit_ok;
        return out;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        out.done = true;
        out.exit_code = exit_ok;
        return out;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        out.done = true;
        out.exit_code = exit_usage;
        return out;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    auto usage_error = [&](const std::string& message) {
        std::fprintf(stderr, "arw %s: %s\n", cfg.command.c_str(), message.c_str());
        out.done = true;
        out.exit_code = exit_usage;
        return out;
    };

    try {
        cfg.lambda = parse_lambda(lambda_str);
    } catch (const std::exception&) {
        return usage_error("--lambda must be a positive real or 'inf'");
    }
    if (!(cfg.lambda > 0.0)) return usage_error("--lambda must be > 0");
    if (cfg.dim < 1 || cfg.dim > 3) return usage_error("--dim must be 1..3");
    if (cfg.format != "csv" && cfg.format != "json")
        return usage_error("--format must be csv or json");
    if (!(cfg.mu > 0.0)) return usage_error("--mu must be > 0 (InvalidDensity)");
    if (cfg.threads < 0) return usage_error("--threads must be >= 0");
    try {
        (void)JumpDistribution::parse(cfg.jumps);
    } catch (const std::exception& e) {
        return usage_error(std::string("--jumps: ") + e.what());
    }
    const bool finite_lambda_required = cfg.command == "directed" || cfg.command == "traps" ||
                                        cfg.command == "f-lambda";
    if (finite_lambda_required && std::isinf(cfg.lambda))
        return usage_error("this command requires a finite --lambda");
    if (cfg.command == "mu-c" || cfg.command == "sweep") {
        if (!(cfg.mu_min > 0.0) || !(cfg.mu_max > cfg.mu_min))
            return usage_error("need 0 < --mu-min < --mu-max");
    }
    if (cfg.command == "animals" && (cfg.size_cap < 1 || cfg.size_cap > 12))
        return usage_error("--size-cap must be 1..12");
    return out;
}

}  // namespace arw::cli
