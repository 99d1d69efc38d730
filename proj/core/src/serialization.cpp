// SPDX-License-Identifier: Apache-2.0
#include "lindyn/serialization.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "lindyn/error.hpp"

namespace lindyn {

namespace {

template <typename T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

// Non-finite values have no JSON number form.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const PiecewiseMap& map) {
  return Json{{"breakpoints", std::vector<double>(map.breakpoints().begin(), map.breakpoints().end())},
              {"values", std::vector<double>(map.values().begin(), map.values().end())},
              {"left_tail", map.left_tail()},
              {"right_tail", map.right_tail()}};
}

PiecewiseMap piecewise_map_from_json(const Json& j) {
  auto bps = get<std::vector<double>>(j, "breakpoints");
  auto vals = get<std::vector<double>>(j, "values");
  if (bps.empty() && vals.empty() && j.contains("left_tail")) {
    // A constant map may be written with tails only.
    const double left = get<double>(j, "left_tail");
    const double right = j.contains("right_tail") ? get<double>(j, "right_tail") : left;
    if (left != right) fail(ErrorCode::ParseError, "constant map with unequal tails");
    return PiecewiseMap::constant(left);
  }
  PiecewiseMap map = [&] {
    try {
      return PiecewiseMap(std::move(bps), std::move(vals));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
  }();
  // Tails are implied by the end values; when present they must agree.
  if (j.contains("left_tail") && get<double>(j, "left_tail") != map.left_tail())
    fail(ErrorCode::ParseError, "left_tail differs from the first value");
  if (j.contains("right_tail") && get<double>(j, "right_tail") != map.right_tail())
    fail(ErrorCode::ParseError, "right_tail differs from the last value");
  return map;
}

Json to_json(const Homeo& alpha) {
  const auto& rep = alpha.representation();
  if (const auto* t = std::get_if<Homeo::Translation>(&rep)) {
    if (t->shift == 0.0) return Json{{"kind", "identity"}};
    return Json{{"kind", "translation"}, {"shift", t->shift}};
  }
  const auto& p = std::get<Homeo::PiecewiseAffine>(rep);
  return Json{{"kind", "piecewise_affine"},
              {"breakpoints", p.breakpoints},
              {"values", p.values},
              {"left_slope", p.left_slope},
              {"right_slope", p.right_slope}};
}

Homeo homeo_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  try {
    if (kind == "translation") return Homeo::translation(get<double>(j, "shift"));
    if (kind == "identity") return Homeo::identity();
    if (kind == "piecewise_affine")
      return Homeo::piecewise_affine(get<std::vector<double>>(j, "breakpoints"),
                                     get<std::vector<double>>(j, "values"), get<double>(j, "left_slope"),
                                     get<double>(j, "right_slope"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(ErrorCode::ParseError, std::string("homeomorphism: ") + e.what());
  }
  fail(ErrorCode::ParseError, "unknown homeomorphism kind '" + kind + "'");
}

Json to_json(const CompositionOperator& op) {
  Json j{{"alpha", to_json(op.alpha())}, {"weight", to_json(op.weight())}};
  if (op.is_inverse()) j["inverse"] = true;
  return j;
}

CompositionOperator operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("alpha") || !j.contains("weight"))
    fail(ErrorCode::ParseError, "operator needs 'alpha' and 'weight'");
  Homeo alpha = homeo_from_json(j.at("alpha"));
  PiecewiseMap weight = piecewise_map_from_json(j.at("weight"));
  CompositionOperator op = [&] {
    try {
      return CompositionOperator(std::move(alpha), std::move(weight));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, std::string("operator: ") + e.what());
    }
  }();
  if (j.contains("inverse") && get<bool>(j, "inverse")) return op.inverse();
  return op;
}

Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({{"x", a.x}, {"re", a.c.real()}, {"im", a.c.imag()}});
  return Json{{"atoms", atoms}};
}

AtomicMeasure measure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array())
    fail(ErrorCode::ParseError, "measure needs an 'atoms' array");
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    const double x = get<double>(a, "x");
    const double re = get<double>(a, "re");
    const double im = a.contains("im") ? get<double>(a, "im") : 0.0;
    if (!std::isfinite(x) || !std::isfinite(re) || !std::isfinite(im))
      fail(ErrorCode::ParseError, "non-finite atom");
    atoms.push_back({x, {re, im}});
  }
  return AtomicMeasure(std::move(atoms));
}

void write_csv(std::ostream& out, const GridFunction& f) {
  out << "t,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    out << format_double(f.grid().point(i)) << ',' << format_double(f[i].real()) << ','
        << format_double(f[i].imag()) << '\n';
}

GridFunction read_grid_function_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "empty CSV");
  if (line.rfind("t,re,im", 0) != 0) fail(ErrorCode::ParseError, "expected header t,re,im");
  std::vector<double> ts;
  std::vector<Complex> values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    double cols[3];
    for (int c = 0; c < 3; ++c) {
      std::string cell;
      if (!std::getline(row, cell, c < 2 ? ',' : '\n')) fail(ErrorCode::ParseError, "short CSV row: " + line);
      try {
        std::size_t used = 0;
        cols[c] = std::stod(cell, &used);
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad number in CSV row: " + line);
      }
    }
    ts.push_back(cols[0]);
    values.push_back({cols[1], cols[2]});
  }
  if (ts.size() < 3) fail(ErrorCode::ParseError, "CSV needs at least three rows");
  const double step = ts[1] - ts[0];
  Grid grid = [&] {
    try {
      return Grid::from_half_width(-ts.front(), 1.0 / std::round(1.0 / step));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, std::string("CSV grid: ") + e.what());
    }
  }();
  if (grid.size() != ts.size()) fail(ErrorCode::ParseError, "CSV rows do not form a symmetric grid");
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (std::abs(ts[i] - grid.point(i)) > 1e-9 * (1.0 + std::abs(ts[i])))
      fail(ErrorCode::ParseError, "CSV t column is not uniform");
  return GridFunction(grid, std::move(values));
}

Json summary_json(const CriterionVerdict& verdict) {
  Json witness = Json::array();
  for (const auto& w : verdict.witness) witness.push_back({{"n", w.n}, {"q", number(w.q)}});
  Json params{{"horizon", verdict.horizon}, {"tol", verdict.tol}};
  Json j{{"kind", std::string(to_string(verdict.kind))},
         {"label", verdict.label},
         {"status", std::string(to_string(verdict.status))},
         {"witness", witness},
         {"params", params}};
  if (!verdict.trims.empty()) {
    Json trims = Json::array();
    for (const auto& t : verdict.trims)
      trims.push_back({{"n", t.n}, {"dropped", t.dropped}, {"removed_mass", number(t.removed_mass)}});
    j["trims"] = trims;
  }
  return j;
}

void write_jsonl(std::ostream& out, const CriterionVerdict& verdict) {
  const std::string kind(to_string(verdict.kind));
  double record = INFINITY;
  for (std::size_t k = 0; k < verdict.trace.size(); ++k) {
    record = std::min(record, verdict.trace[k]);
    Json line{{"kind", kind}, {"n", static_cast<long>(k) + 1}, {"q", number(verdict.trace[k])},
              {"record_min", number(record)}};
    out << line.dump() << '\n';
  }
  out << summary_json(verdict).dump() << '\n';
}

void write_csv(std::ostream& out, const OrbitTrace& trace) {
  out << "n,norm,cesaro_norm,scaled_dist\n";
  for (const auto& s : trace.samples) {
    out << s.n << ',' << format_double(s.norm) << ',' << format_double(s.cesaro_norm) << ',';
    if (s.scaled_distance) out << format_double(*s.scaled_distance);
    out << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<BestHit>& hits) {
  out << "target,n,distance\n";
  for (const auto& h : hits) out << h.target << ',' << h.n << ',' << format_double(h.distance) << '\n';
}

void write_jsonl(std::ostream& out, const ProbeReport& report) {
  for (const auto& s : report.samples) {
    Json line{{"seed", s.seed}, {"y_found", s.y_found}, {"d", s.d}, {"inner_hits", s.inner_hits}};
    out << line.dump() << '\n';
  }
}

}  // namespace lindyn
