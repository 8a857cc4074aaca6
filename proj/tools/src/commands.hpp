#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace arw::cli {

// Dispatches a validated RunConfig; returns the process exit code
// (0 ok, 1 property violation, 2 usage, 3 runtime failure).
int run_command(const RunConfig& cfg);

// Full entry point: parse then run.
int arw_main(const std::vector<std::string>& args);

}  // namespace arw::cli
