// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <utility>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Linear dynamics of weighted composition operators"};
  app.require_subcommand(1);
  lindyn::cli::CommandLine line;
  std::string config;
  std::string preset;
  std::string out_dir;
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"classify", "evaluate criterion verdicts for an operator"},
      {"orbit", "trace orbit norms and best approximations to targets"},
      {"porosity", "run the porosity constructions and probes"},
      {"adjoint", "evaluate the adjoint criteria on atomic measures"},
      {"examples", "check the golden verdict registry"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "experiment config (JSON)");
    sub->add_option("--preset", preset, "operator preset id");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "root seed");
    sub->add_flag("--inverse", line.inverse, "use the inverse operator S");
    if (std::string(name) == "examples") sub->add_option("ids", line.ids, "example ids (default: all)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lindyn::cli::kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--config")) line.config_path = config;
  if (sub->count("--preset")) line.preset = preset;
  if (sub->count("--out")) line.out_dir = out_dir;
  if (sub->count("--seed")) line.seed = seed;
  return lindyn::cli::run_command(sub->get_name(), line, std::cout, std::cerr);
}
