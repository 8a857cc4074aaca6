#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arw::cli {

// Exit codes shared across the tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_property_violation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_runtime = 3;

struct RunConfig {
    std::string command;

    int dim = 1;
    double lambda = 1.0;  // "inf" accepted on the command line
    double mu = 0.5;
    std::string jumps = "directed";
    std::int32_t window = 0;  // --L
    std::vector<std::int32_t> l_list;
    std::uint64_t reps = 100;
    std::uint64_t seed = 1;
    std::uint64_t cap = 0;
    std::string out;  // empty: stdout
    std::string format = "csv";
    int threads = 1;

    // command-specific
    std::string suite = "all";        // check
    std::string policy = "fifo";      // stabilize
    std::uint64_t additions = 100000; // soc
    std::uint64_t sample_every = 100;
    double initial_density = 0.0;
    std::uint64_t samples = 100000;   // f-lambda
    std::int32_t cutoff = 0;
    std::int32_t n_particles = 20;    // traps
    std::int32_t radius = 24;         // ghosts
    int size_cap = 10;                // animals
    double mu_min = 0.05;
    double mu_max = 0.95;
    int mu_steps = 10;                // sweep
    double target_width = 0.1;        // mu-c
};

struct ParseOutcome {
    RunConfig config;
    int exit_code = exit_ok;
    bool done = false;  // --help or a parse error already handled
};

// Parses command-line arguments (argv[1:]) plus an optional key=value config
// file (--config); explicit flags override file values, unknown keys are
// rejected.  On error, prints a message to stderr and returns done with
// exit code 2.
ParseOutcome parse_config(const std::vector<std::string>& args);

}  // namespace arw::cli
