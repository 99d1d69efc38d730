// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "lindyn/dynamics.hpp"
#include "lindyn/error.hpp"
#include "lindyn/measure.hpp"
#include "lindyn/porosity.hpp"
#include "lindyn/presets.hpp"
#include "registry.hpp"

namespace lindyn::cli {

namespace {

// Writes to <out_dir>/<name> when an output directory is configured, else
// to the fallback stream.
class Sink {
 public:
  Sink(const ExperimentConfig& config, const std::string& name, std::ostream& fallback) : stream_(&fallback) {
    if (!config.out_dir) return;
    std::filesystem::create_directories(*config.out_dir);
    const auto path = std::filesystem::path(*config.out_dir) / name;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) fail(ErrorCode::ParseError, "cannot write '" + path.string() + "'");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

template <typename T>
T section_field(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

Json section_value(const Json& j, const char* key) {
  return j.is_object() && j.contains(key) ? j.at(key) : Json(nullptr);
}

std::vector<CriterionKind> default_kinds(SpaceKind space) {
  switch (space) {
    case SpaceKind::L2:
      return {CriterionKind::SupercyclicSolid, CriterionKind::CesaroSolid, CriterionKind::HypercyclicSolid};
    case SpaceKind::C0:
      return {CriterionKind::SupercyclicC0, CriterionKind::CesaroC0};
    case SpaceKind::Segal:
      return {CriterionKind::SupercyclicSegal, CriterionKind::CesaroSegal};
  }
  return {};
}

void require_function_space(const ExperimentConfig& config, const char* command) {
  if (is_sequence_preset(config))
    fail(ErrorCode::InvalidArgument, std::string(command) + " needs a composition operator, not rem3.10");
}

std::string format_q(double q) {
  std::ostringstream s;
  s << std::setprecision(4) << std::scientific << q;
  return s.str();
}

// Compares verdicts with the configured expectations; returns the exit code.
int report_verdicts(const std::vector<CriterionVerdict>& verdicts, const ExperimentConfig& config,
                    std::ostream& err) {
  int code = kExitOk;
  for (const auto& v : verdicts) {
    std::string mark;
    if (auto it = config.expect.find(v.kind); it != config.expect.end()) {
      const bool ok = it->second == v.status;
      mark = ok ? "  [as expected]" : "  [EXPECTED " + std::string(to_string(it->second)) + "]";
      if (!ok) code = kExitFailure;
    }
    err << std::left << std::setw(20) << v.label << ' ' << std::setw(28) << to_string(v.status)
        << " min q " << format_q(v.min_q()) << mark << '\n';
  }
  return code;
}

}  // namespace

ExperimentConfig resolve_config(const CommandLine& line) {
  ExperimentConfig config = line.config_path ? load_config(*line.config_path) : parse_config(Json::object());
  if (line.preset) {
    if (!is_preset(*line.preset)) fail(ErrorCode::UnknownPreset, "unknown preset '" + *line.preset + "'");
    config.preset = *line.preset;
    config.inline_operator.reset();
  }
  if (line.out_dir) config.out_dir = *line.out_dir;
  if (line.seed) config.seed = *line.seed;
  if (line.inverse) config.inverse = true;
  if (!line.ids.empty()) config.ids = line.ids;
  return config;
}

int cmd_classify(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<CriterionVerdict> verdicts;
  if (is_sequence_preset(config)) {
    if (config.inverse) fail(ErrorCode::InvalidArgument, "--inverse is not available for rem3.10");
    if (config.space != SpaceKind::L2) fail(ErrorCode::InvalidArgument, "rem3.10 lives on l2(Z)");
    const long lo = static_cast<long>(std::ceil(config.window_lo));
    const long hi = static_cast<long>(std::floor(config.window_hi));
    const BilateralShift shift = preset_shift(lo - config.horizon - 1, hi + config.horizon + 1);
    const auto kinds = config.kinds.empty() ? default_kinds(SpaceKind::L2) : config.kinds;
    for (auto kind : kinds) verdicts.push_back(evaluate_shift(kind, shift, lo, hi, config.horizon, config.tol));
  } else {
    const CompositionOperator op = config_operator(config);
    const Grid grid = config_grid(config);
    const CompactWindow window(grid, config.window_lo, config.window_hi, config.segal_bound);
    EvalOptions options;
    options.horizon = config.horizon;
    options.tol = config.tol;
    options.trim.max_points = config.trim;
    options.tau = config.tau;
    const auto kinds = config.kinds.empty() ? default_kinds(config.space) : config.kinds;
    for (auto kind : kinds) verdicts.push_back(evaluate(kind, op, window, options));
  }
  Sink sink(config, "classify.jsonl", out);
  for (const auto& v : verdicts) write_jsonl(sink.stream(), v);
  return report_verdicts(verdicts, config, err);
}

int cmd_orbit(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  require_function_space(config, "orbit");
  const CompositionOperator op = config_operator(config);
  const Grid grid = config_grid(config);
  const NormKind kind = config_norm(config);
  const Json& section = config.orbit;
  const GridFunction f = function_from_json(section_value(section, "f"), grid, config.seed);
  std::vector<GridFunction> targets;
  const Json target_specs = section_value(section, "targets");
  if (target_specs.is_array())
    for (std::size_t i = 0; i < target_specs.size(); ++i)
      targets.push_back(function_from_json(target_specs[i], grid, config.seed + i + 1));
  const long horizon = section_field(section, "horizon", config.horizon);

  std::optional<GridFunction> first_target;
  if (!targets.empty()) first_target = targets.front();
  const OrbitTrace trace = orbit_trace(op, f, horizon, kind, first_target);
  {
    Sink sink(config, "orbit.csv", out);
    write_csv(sink.stream(), trace);
  }
  if (!targets.empty()) {
    const auto mode_name = section_field<std::string>(section, "mode", "scaled");
    ProbeMode mode = ProbeMode::Scaled;
    if (mode_name == "plain") mode = ProbeMode::Plain;
    else if (mode_name == "cesaro") mode = ProbeMode::Cesaro;
    else if (mode_name != "scaled") fail(ErrorCode::ParseError, "orbit mode must be plain, scaled or cesaro");
    const auto hits = empirical_best(op, f, targets, horizon, kind, mode);
    if (config.out_dir) {
      Sink sink(config, "best.csv", out);
      write_csv(sink.stream(), hits);
    }
    for (const auto& h : hits)
      err << "target " << h.target << ": best n " << h.n << ", distance " << format_q(h.distance) << '\n';
  }
  const auto& last = trace.samples.back();
  err << "orbit: " << trace.samples.size() << " steps, last norm " << format_q(last.norm) << ", cesaro norm "
      << format_q(last.cesaro_norm) << (last.truncated ? " (mass left the grid)" : "") << '\n';
  return kExitOk;
}

int cmd_porosity(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Json& scene = config.scene;
  const auto kind = section_field<std::string>(scene, "kind", "theorem");
  Sink sink(config, "porosity.jsonl", out);
  std::ostream& os = sink.stream();

  if (kind == "corollary") {
    const long N = section_field(scene, "N", 100L);
    if (N < 1) fail(ErrorCode::ParseError, "scene N must be >= 1");
    const CompositionOperator op = config.preset || config.inline_operator
                                       ? config_operator(config)
                                       : CompositionOperator(Homeo::translation(-1.0), PiecewiseMap::constant(2.0));
    // The lower bound is witnessed at t = 2n, so the grid must reach 2N.
    const Grid grid = config.grid_given ? config_grid(config)
                                        : Grid::from_half_width(static_cast<double>(2 * N + 8), config.step);
    if (grid.half_width() < static_cast<double>(2 * N))
      fail(ErrorCode::PreconditionViolated, "corollary scene needs L >= 2N");
    const CorollaryG g = corollary_g(op, grid);
    const double scale = section_field(scene, "scale", 1.0);
    const GridFunction f = g.set.g * scale;
    const double min_norm = corollary_check(op, g.set, f, N);
    Json line{{"scene", "corollary"}, {"N", N}, {"scale", scale}, {"min_norm", min_norm}, {"decays", g.decays}};
    if (!g.decays) line["warning"] = g.warning;
    os << line.dump() << '\n';
    if (!g.decays) err << "warning: " << g.warning << '\n';
    err << "corollary: min over n <= " << N << " of |T^n f|_inf = " << format_double(min_norm) << '\n';
    return min_norm >= scale ? kExitOk : kExitFailure;
  }

  const Grid grid = config_grid(config);
  ProbeOptions probe;
  probe.lambda = section_field(scene, "lambda", 0.5);
  probe.outer = section_field<std::size_t>(scene, "outer", 256);
  probe.inner = section_field<std::size_t>(scene, "inner", 256);
  probe.seed = config.seed;
  const auto deltas = section_field<std::vector<double>>(scene, "probe_deltas", {0.1, 0.01});

  auto run_probes = [&](const MembershipOracle& oracle, const GridFunction& x, bool want_witness) {
    bool ok = true;
    for (double d : deltas) {
      probe.delta = d;
      const ProbeReport report = porosity_probe(oracle, x, probe);
      write_jsonl(os, report);
      const bool found = report.witness.has_value();
      os << Json{{"probe_delta", d}, {"lambda", probe.lambda}, {"witness", found}}.dump() << '\n';
      err << "probe delta " << format_double(d) << ": " << (found ? "witness found" : "NONE") << '\n';
      ok = ok && found == want_witness;
    }
    return ok;
  };

  if (kind == "singleton") {
    const GridFunction x = GridFunction::zeros(grid);
    return run_probes([](const GridFunction& z) { return z.is_zero(); }, x, true) ? kExitOk : kExitFailure;
  }
  if (kind != "theorem") fail(ErrorCode::ParseError, "scene kind must be corollary, theorem or singleton");

  const GammaSet g(decaying_g(grid, section_field(scene, "g_scale", 0.5)));
  Json f_spec = section_value(scene, "f");
  if (f_spec.is_null()) f_spec = Json{{"bump", {{"center", 0.0}, {"half_width", 2.0}, {"height", 0.3}}}};
  const ConstructionScene ts = make_construction_scene(function_from_json(f_spec, grid, config.seed), g,
                                             section_field(scene, "r_tilde", 1.0), probe.lambda,
                                             section_field(scene, "beta", 0.25));
  Json dir_spec = section_value(scene, "direction");
  if (dir_spec.is_null()) dir_spec = Json{{"random", {{"count", 6}, {"spread", 10.0}}}};
  const SceneRun run = run_construction_scene(ts, function_from_json(dir_spec, grid, config.seed),
                                         section_field(scene, "fraction", 0.5));
  os << Json{{"scene", "theorem"},
             {"N", ts.params.N},
             {"r", ts.params.r},
             {"delta", ts.params.delta},
             {"script_E",
              {{"modulus_gap", run.script_e.modulus_gap},
               {"in_gamma_h", run.script_e.in_gamma_h},
               {"distance_to_f", run.script_e.distance_to_f}}},
             {"gamma",
              {{"distance_to_v", run.gamma.distance_to_v},
               {"u_to_v", run.gamma.u_to_v},
               {"in_gamma_g", run.gamma.in_gamma_g}}},
             {"holds", run.holds}}
            .dump()
     << '\n';
  err << "constructions: " << (run.holds ? "all contracts hold" : "CONTRACT FAILED") << " (N = " << ts.params.N
      << ")\n";
  // Evidence against porosity is gathered at a point well inside the set.
  const GridFunction x = g.g * 3.0;
  const bool probes_ok =
      run_probes([&](const GridFunction& z) { return gamma_membership(z, g); }, x, false);
  return run.holds && probes_ok ? kExitOk : kExitFailure;
}

int cmd_adjoint(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  require_function_space(config, "adjoint");
  const CompositionOperator op = config_operator(config);
  const Json& section = config.adjoint;
  const Json mu_spec = section_value(section, "mu");
  const Json nu_spec = section_value(section, "nu");
  const AtomicMeasure mu = mu_spec.is_null() ? AtomicMeasure::dirac(0.0) : measure_from_json(mu_spec);
  const AtomicMeasure nu = nu_spec.is_null() ? AtomicMeasure::dirac(0.0) : measure_from_json(nu_spec);
  AdjointOptions options{config.horizon, config.tol, section_field(section, "atom_trim_budget", 0.0)};

  std::vector<CriterionKind> kinds = config.kinds;
  if (kinds.empty()) kinds = {CriterionKind::AdjointSuper, CriterionKind::AdjointCesaro};
  std::vector<CriterionVerdict> verdicts;
  for (auto kind : kinds) {
    if (!is_adjoint(kind)) fail(ErrorCode::ParseError, "adjoint runs take ADJOINT_* kinds only");
    verdicts.push_back(adjoint_criterion(kind, op, mu, nu, config.window_lo, config.window_hi, options));
  }
  Sink sink(config, "adjoint.jsonl", out);
  for (const auto& v : verdicts) write_jsonl(sink.stream(), v);
  if (section.is_object() && section.contains("approximant_n")) {
    const long n = section_field(section, "approximant_n", 1L);
    const MeasureApproximant a = measure_approximant(op, mu, nu, n);
    sink.stream() << Json{{"approximant", {{"n", a.n}, {"lambda", a.lambda}, {"eta", to_json(a.eta)}}}}.dump()
                  << '\n';
  }
  return report_verdicts(verdicts, config, err);
}

int cmd_examples(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<const GoldenExample*> selected;
  if (config.ids.empty() || (config.ids.size() == 1 && config.ids.front() == "all")) {
    for (const auto& e : example_registry()) selected.push_back(&e);
  } else {
    for (const auto& id : config.ids) {
      const GoldenExample* e = find_example(id);
      if (!e) {
        err << "unknown example '" << id << "'\n";
        return kExitUsage;
      }
      selected.push_back(e);
    }
  }
  const Grid grid = config_grid(config);
  std::unique_ptr<Sink> jsonl;
  if (config.out_dir) jsonl = std::make_unique<Sink>(config, "examples.jsonl", out);

  int code = kExitOk;
  out << std::left << std::setw(18) << "id" << std::setw(30) << "criterion" << std::setw(4) << "op"
      << std::setw(28) << "expected" << std::setw(28) << "observed" << std::setw(12) << "min q" << std::setw(7)
      << "at n" << "result\n";
  for (const GoldenExample* e : selected) {
    for (const auto& o : run_example(*e, grid)) {
      const auto& x = o.expectation;
      const std::string label = x.preset.empty() ? x.criterion : x.criterion + " " + x.preset;
      out << std::left << std::setw(18) << o.id << std::setw(30) << label << std::setw(4)
          << (x.inverse ? "S" : "T") << std::setw(28) << to_string(x.expected) << std::setw(28)
          << to_string(o.observed) << std::setw(12) << format_q(o.min_q) << std::setw(7) << o.best_n
          << (o.pass ? "PASS" : "FAIL") << '\n';
      if (jsonl)
        jsonl->stream() << Json{{"id", o.id},
                                {"criterion", x.criterion},
                                {"inverse", x.inverse},
                                {"preset", x.preset.empty() ? e->preset : x.preset},
                                {"expected", std::string(to_string(x.expected))},
                                {"observed", std::string(to_string(o.observed))},
                                {"min_q", o.min_q},
                                {"at_n", o.best_n},
                                {"horizon", x.horizon},
                                {"tol", x.tol},
                                {"basis", x.basis},
                                {"pass", o.pass}}
                               .dump()
                        << '\n';
      if (!o.pass) code = kExitFailure;
    }
  }
  return code;
}

int run_command(const std::string& name, const CommandLine& line, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig config = resolve_config(line);
    if (name == "classify") return cmd_classify(config, out, err);
    if (name == "orbit") return cmd_orbit(config, out, err);
    if (name == "porosity") return cmd_porosity(config, out, err);
    if (name == "adjoint") return cmd_adjoint(config, out, err);
    if (name == "examples") return cmd_examples(config, out, err);
    err << "unknown command '" << name << "'\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace lindyn::cli
