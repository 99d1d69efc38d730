// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration shared by every command.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/criteria.hpp"
#include "lindyn/funcspace.hpp"
#include "lindyn/operator.hpp"
#include "lindyn/serialization.hpp"

namespace lindyn::cli {

enum class SpaceKind { L2, C0, Segal };

struct ExperimentConfig {
  std::optional<std::string> preset;
  std::optional<Json> inline_operator;
  bool inverse = false;

  SpaceKind space = SpaceKind::L2;
  std::optional<PiecewiseMap> tau;
  std::optional<double> segal_bound;

  double half_width = 64.0;
  double step = 0.25;
  bool grid_given = false;

  double window_lo = -5.0;
  double window_hi = 5.0;
  long horizon = 200;
  double tol = 1e-6;
  std::size_t trim = 0;

  std::vector<CriterionKind> kinds;          // empty selects every kind of the space
  std::map<CriterionKind, Status> expect;    // optional expected statuses
  std::uint64_t seed = 0;
  std::optional<std::string> out_dir;
  std::vector<std::string> ids;              // examples command

  // Command sections, kept raw and decoded by the command.
  Json orbit = Json::object();
  Json scene = Json::object();
  Json adjoint = Json::object();
};

/// Throws Error(ParseError) or Error(UnknownPreset) on an invalid config.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);

std::string_view to_string(SpaceKind space);

Grid config_grid(const ExperimentConfig& config);
NormKind config_norm(const ExperimentConfig& config);

/// The configured composition operator, S when inverse is set.
CompositionOperator config_operator(const ExperimentConfig& config);
bool is_sequence_preset(const ExperimentConfig& config);

/// Function specs: {"bump":{"center","half_width","height"}}, {"map":{piecewise map}},
/// {"csv":"path"} or {"random":{"count":k,"spread":s}} (seeded). A null spec
/// gives the unit bump at 0.
GridFunction function_from_json(const Json& spec, const Grid& grid, std::uint64_t seed = 0);

}  // namespace lindyn::cli
