// commands.hpp — Subcommand implementations behind the CLI front end.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqed/cli/config.hpp"

namespace cqed::cli {

// Exit codes shared by all subcommands.
inline constexpr int ExitOk = 0;
inline constexpr int ExitConfigError = 1;
inline constexpr int ExitIoError = 2;
inline constexpr int ExitDiverged = 3;
inline constexpr int ExitStepLimit = 4;

// Integrates one configuration and writes the trajectory CSV. Returns 0 on
// completion, 3 when the run diverged (truncated CSV still written), 4 on
// step-limit exhaustion.
int cmd_run(const RunConfig& cfg);

// One population column per method plus an optional oracle column; prints a
// pairwise max-deviation summary to stdout.
int cmd_compare(const RunConfig& cfg, const std::vector<std::string>& methods,
                const std::string& oracle, const std::string& out_path);

// Reruns the base config with `axis` set to each value; writes run_###.csv
// files plus manifest.json into out_dir, up to `jobs` runs concurrently.
int cmd_sweep(const json& base_config, const std::string& axis,
              const std::vector<double>& values, const std::string& out_dir, int jobs);

// Validation suites: "residual" (exact-moment equation check), "oracles"
// (cross checks between the reference solvers), "symmetry" (invariants along
// a trajectory). Empty suite list is an error.
int cmd_validate(const std::vector<std::string>& suites);

int default_jobs();

} // namespace cqed::cli
