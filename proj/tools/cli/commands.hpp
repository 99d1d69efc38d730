// SPDX-License-Identifier: Apache-2.0
//
// The lindyn subcommands. Each returns the process exit code:
// 0 when every check passes, 1 on an expectation failure, 2 on a usage or
// configuration error.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace lindyn::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct CommandLine {
  std::optional<std::string> config_path;
  std::optional<std::string> preset;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool inverse = false;
  std::vector<std::string> ids;  // positional ids for the examples command
};

/// Loads the config (empty when no path is given) and applies the overrides.
ExperimentConfig resolve_config(const CommandLine& line);

int cmd_classify(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_orbit(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_porosity(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_adjoint(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_examples(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches by name and maps library errors to exit code 2.
int run_command(const std::string& name, const CommandLine& line, std::ostream& out, std::ostream& err);

}  // namespace lindyn::cli
