// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "lindyn/error.hpp"
#include "lindyn/presets.hpp"

namespace lindyn::cli {

namespace {

template <typename T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config field '") + key + "': " + e.what());
  }
}

Status parse_status(const std::string& s) {
  if (s == to_string(Status::Satisfied)) return Status::Satisfied;
  if (s == to_string(Status::NotSatisfiedUpToHorizon)) return Status::NotSatisfiedUpToHorizon;
  fail(ErrorCode::ParseError, "unknown status '" + s + "'");
}

CriterionKind parse_kind(const std::string& s) {
  auto kind = parse_criterion_kind(s);
  if (!kind) fail(ErrorCode::ParseError, "unknown criterion kind '" + s + "'");
  return *kind;
}

}  // namespace

std::string_view to_string(SpaceKind space) {
  switch (space) {
    case SpaceKind::L2: return "L2";
    case SpaceKind::C0: return "C0";
    case SpaceKind::Segal: return "SEGAL";
  }
  return "L2";
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "config must be a JSON object");
  ExperimentConfig c;

  if (j.contains("operator")) {
    const Json& op = j.at("operator");
    if (op.is_string()) {
      c.preset = op.get<std::string>();
    } else if (op.is_object()) {
      operator_from_json(op);  // validates early
      c.inline_operator = op;
    } else {
      fail(ErrorCode::ParseError, "operator must be a preset id or an operator object");
    }
  }
  if (c.preset && !is_preset(*c.preset)) fail(ErrorCode::UnknownPreset, "unknown preset '" + *c.preset + "'");
  c.inverse = field(j, "inverse", false);

  const auto space = field<std::string>(j, "space", "L2");
  if (space == "L2") c.space = SpaceKind::L2;
  else if (space == "C0") c.space = SpaceKind::C0;
  else if (space == "SEGAL") c.space = SpaceKind::Segal;
  else fail(ErrorCode::ParseError, "space must be L2, C0 or SEGAL");
  if (j.contains("tau")) c.tau = piecewise_map_from_json(j.at("tau"));
  if (c.space == SpaceKind::Segal && !c.tau) fail(ErrorCode::ParseError, "SEGAL space needs tau");

  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    c.half_width = field(g, "L", c.half_width);
    c.step = field(g, "h", c.step);
    c.grid_given = true;
    // Validates the integer-points rule.
    try {
      Grid::from_half_width(c.half_width, c.step);
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, std::string("grid: ") + e.what());
    }
  }
  if (j.contains("window")) {
    const Json& w = j.at("window");
    c.window_lo = field(w, "lo", c.window_lo);
    c.window_hi = field(w, "hi", c.window_hi);
    if (w.contains("segal_bound")) c.segal_bound = field(w, "segal_bound", 0.0);
    if (!(c.window_lo <= c.window_hi)) fail(ErrorCode::ParseError, "window needs lo <= hi");
  }
  c.horizon = field(j, "horizon", c.horizon);
  c.tol = field(j, "tol", c.tol);
  c.trim = field<std::size_t>(j, "trim", 0);
  if (c.horizon < 1) fail(ErrorCode::ParseError, "horizon must be >= 1");
  if (!(c.tol > 0.0)) fail(ErrorCode::ParseError, "tol must be positive");

  for (const auto& k : field<std::vector<std::string>>(j, "kinds", {})) c.kinds.push_back(parse_kind(k));
  if (j.contains("expect")) {
    if (!j.at("expect").is_object()) fail(ErrorCode::ParseError, "expect must map kinds to statuses");
    for (const auto& [k, v] : j.at("expect").items()) {
      if (!v.is_string()) fail(ErrorCode::ParseError, "expected status must be a string");
      c.expect[parse_kind(k)] = parse_status(v.get<std::string>());
    }
  }
  c.seed = field<std::uint64_t>(j, "seed", 0);
  if (j.contains("out")) c.out_dir = field<std::string>(j, "out", "");
  c.ids = field<std::vector<std::string>>(j, "ids", {});
  if (j.contains("orbit")) c.orbit = j.at("orbit");
  if (j.contains("scene")) c.scene = j.at("scene");
  if (j.contains("adjoint")) c.adjoint = j.at("adjoint");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open config '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

Grid config_grid(const ExperimentConfig& config) {
  return Grid::from_half_width(config.half_width, config.step);
}

NormKind config_norm(const ExperimentConfig& config) {
  switch (config.space) {
    case SpaceKind::L2: return L2Norm{};
    case SpaceKind::C0: return SupNorm{};
    case SpaceKind::Segal: return SegalNorm{*config.tau, 1e-9};
  }
  return L2Norm{};
}

bool is_sequence_preset(const ExperimentConfig& config) {
  return config.preset && *config.preset == "rem3.10";
}

CompositionOperator config_operator(const ExperimentConfig& config) {
  if (config.inline_operator) {
    CompositionOperator op = operator_from_json(*config.inline_operator);
    return config.inverse ? op.inverse() : op;
  }
  if (!config.preset) fail(ErrorCode::ParseError, "no operator given (use --preset or an 'operator' field)");
  CompositionOperator op = preset_operator(*config.preset);
  return config.inverse ? op.inverse() : op;
}

GridFunction function_from_json(const Json& spec, const Grid& grid, std::uint64_t seed) {
  if (spec.is_null()) return triangular_bump(grid, 0.0, 1.0);
  if (!spec.is_object()) fail(ErrorCode::ParseError, "function spec must be an object");
  if (spec.contains("bump")) {
    const Json& b = spec.at("bump");
    const double re = field(b, "height", 1.0);
    const double im = field(b, "height_im", 0.0);
    return triangular_bump(grid, field(b, "center", 0.0), field(b, "half_width", 1.0), Complex{re, im});
  }
  if (spec.contains("map")) return GridFunction::from_map(grid, piecewise_map_from_json(spec.at("map")));
  if (spec.contains("csv")) {
    const auto path = field<std::string>(spec, "csv", "");
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
    GridFunction f = read_grid_function_csv(in);
    if (!(f.grid() == grid)) fail(ErrorCode::ParseError, "'" + path + "' is on a different grid");
    return f;
  }
  if (spec.contains("random")) {
    const Json& r = spec.at("random");
    const long count = field(r, "count", 3L);
    const double spread = field(r, "spread", 4.0);
    if (count < 1) fail(ErrorCode::ParseError, "random function needs count >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    GridFunction f = GridFunction::zeros(grid);
    for (long i = 0; i < count; ++i) {
      const double centre = (2.0 * unit(rng) - 1.0) * spread;
      const double width = 0.5 + 1.5 * unit(rng);
      const Complex height = std::polar(0.2 + 0.8 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      f = f + triangular_bump(grid, centre, width, height);
    }
    return f;
  }
  fail(ErrorCode::ParseError, "function spec needs one of bump, map, csv, random");
}

}  // namespace lindyn::cli
