#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace spiraldim::cli {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

enum ExitCode { ok = 0, usage = 2, precondition = 3, numerical = 4 };

/// Global keys: out, eps_max, eps_min, scales, seed.
json global_defaults();
/// Defaults of one subcommand (global keys not included).
json command_defaults(const std::string& command);
const std::vector<std::string>& command_names();

/// Named scenarios: {"command": ..., "config": {...}}.
json paper_case(const std::string& id);
std::vector<std::string> paper_case_ids();

/// Each command takes a fully merged config (defaults < paper case < config
/// file < flags), writes its files under config["out"] and returns the report.
json cmd_spiral(const json& config);
json cmd_integrate(const json& config);
json cmd_dim(const json& config);
json cmd_sweep(const json& config);
json cmd_string(const json& config);
json cmd_oracle(const json& config);

json run_command(const std::string& command, const json& config);

/// Whole front end: parses argv, prints the report to stdout, returns the
/// exit code. Errors go to stderr.
int run(int argc, char** argv);

}  // namespace spiraldim::cli
