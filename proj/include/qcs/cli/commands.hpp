// commands.hpp: Subcommand drivers for the qcs tool

#pragma once

#include "qcs/cli/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qcs::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_threshold_unmet = 1,
    exit_usage = 2,
    exit_failure = 3,  // I/O or solver
};

struct CommandResult {
    bool thresholds_met{true};
    std::vector<std::string> files;  // relative to the output directory
    nlohmann::ordered_json metadata;
};

// Each driver expects a resolved config and writes into config.out_dir,
// always including config.json (the resolved echo) and metadata.json.
CommandResult run_bands(const RunConfig& config);
CommandResult run_fluxonium_modes(const RunConfig& config);
CommandResult run_evolve(const RunConfig& config);
CommandResult run_protocol(const RunConfig& config);

// Resolves, dispatches and maps failures to exit codes; diagnostics go to
// stderr.
int run(const RunConfig& config);

}  // namespace qcs::cli
