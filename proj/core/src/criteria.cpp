// SPDX-License-Identifier: Apache-2.0
#include "lindyn/criteria.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "lindyn/error.hpp"
#include "lindyn/parallel.hpp"

namespace lindyn {

namespace {

constexpr std::array<std::pair<CriterionKind, std::string_view>, 9> kKindNames{{
    {CriterionKind::SupercyclicSolid, "SUPERCYCLIC_SOLID"},
    {CriterionKind::CesaroSolid, "CESARO_SOLID"},
    {CriterionKind::SupercyclicSegal, "SUPERCYCLIC_SEGAL"},
    {CriterionKind::CesaroSegal, "CESARO_SEGAL"},
    {CriterionKind::SupercyclicC0, "SUPERCYCLIC_C0"},
    {CriterionKind::CesaroC0, "CESARO_C0"},
    {CriterionKind::HypercyclicSolid, "HYPERCYCLIC_SOLID"},
    {CriterionKind::AdjointSuper, "ADJOINT_SUPER"},
    {CriterionKind::AdjointCesaro, "ADJOINT_CESARO"},
}};

bool is_segal(CriterionKind kind) {
  return kind == CriterionKind::SupercyclicSegal || kind == CriterionKind::CesaroSegal;
}

bool is_l2_backed(CriterionKind kind) {
  return kind == CriterionKind::SupercyclicSolid || kind == CriterionKind::CesaroSolid ||
         kind == CriterionKind::HypercyclicSolid;
}

void check_segal(const CompositionOperator& op, const CompactWindow& window, const PiecewiseMap& tau,
                 double tol) {
  if (!segal_compatible(op, tau, window.grid, tol))
    fail(ErrorCode::SegalIncompatible, "tau o alpha differs from tau on the grid");
  if (window.segal_bound) {
    for (double t : window.points())
      if (std::abs(tau(t)) > *window.segal_bound)
        fail(ErrorCode::PreconditionViolated,
             "|tau| exceeds the window's Segal bound at t = " + std::to_string(t));
  }
}

// Per point: first leg -log F(n), second leg log B(n).
LegTable forward_legs(const CompositionOperator& op, const std::vector<double>& points, long horizon) {
  LegTable legs;
  legs.first.resize(points.size());
  legs.second.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    op.log_cocycle_series(points[i], horizon, legs.first[i], legs.second[i]);
    for (double& v : legs.first[i]) v = -v;
  });
  return legs;
}

struct StepResult {
  double log_q;
  std::vector<std::size_t> dropped;
  double dropped_mass = 0.0;
};

double leg_max(const std::vector<std::vector<double>>& leg, std::size_t k,
               const std::vector<char>& removed) {
  double m = -INFINITY;
  for (std::size_t i = 0; i < leg.size(); ++i)
    if (!removed[i]) m = std::max(m, leg[i][k]);
  return m;
}

// Best q(n) over removal sets that drop the r worst points of the first leg
// and then the worst points of the second leg, within the mass cap.
StepResult trimmed_step(CriterionKind kind, const LegTable& legs, long n, double cap,
                        const std::vector<double>& mass) {
  const std::size_t count = legs.first.size();
  const auto k = static_cast<std::size_t>(n - 1);
  std::vector<std::size_t> by_first(count);
  std::iota(by_first.begin(), by_first.end(), std::size_t{0});
  std::vector<std::size_t> by_second = by_first;
  std::stable_sort(by_first.begin(), by_first.end(),
                   [&](std::size_t a, std::size_t b) { return legs.first[a][k] > legs.first[b][k]; });
  std::stable_sort(by_second.begin(), by_second.end(),
                   [&](std::size_t a, std::size_t b) { return legs.second[a][k] > legs.second[b][k]; });

  std::vector<char> none(count, 0);
  StepResult best{combine_legs(kind, leg_max(legs.first, k, none), leg_max(legs.second, k, none), n),
                  {}, 0.0};
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<char> removed(count, 0);
    std::size_t kept = count;
    double used = 0.0;
    bool fits = true;
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t i = by_first[j];
      if (used + mass[i] > cap || kept == 1) {
        fits = false;
        break;
      }
      removed[i] = 1;
      used += mass[i];
      --kept;
    }
    if (!fits) break;
    for (std::size_t i : by_second) {
      if (removed[i] || kept == 1) continue;
      if (used + mass[i] > cap) continue;
      removed[i] = 1;
      used += mass[i];
      --kept;
    }
    const double q = combine_legs(kind, leg_max(legs.first, k, removed), leg_max(legs.second, k, removed), n);
    if (q < best.log_q) {
      best.log_q = q;
      best.dropped.clear();
      for (std::size_t i = 0; i < count; ++i)
        if (removed[i]) best.dropped.push_back(i);
      best.dropped_mass = used;
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(CriterionKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "UNKNOWN";
}

std::optional<CriterionKind> parse_criterion_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

bool is_cesaro(CriterionKind kind) {
  return kind == CriterionKind::CesaroSolid || kind == CriterionKind::CesaroSegal ||
         kind == CriterionKind::CesaroC0 || kind == CriterionKind::AdjointCesaro;
}

bool is_adjoint(CriterionKind kind) {
  return kind == CriterionKind::AdjointSuper || kind == CriterionKind::AdjointCesaro;
}

std::string_view to_string(Status status) {
  return status == Status::Satisfied ? "SATISFIED" : "NOT_SATISFIED_UP_TO_HORIZON";
}

CompactWindow::CompactWindow(Grid grid_, double lo_, double hi_, std::optional<double> segal_bound_)
    : grid(grid_), lo(lo_), hi(hi_), segal_bound(segal_bound_) {
  if (!(lo <= hi)) fail(ErrorCode::InvalidArgument, "window needs lo <= hi");
  if (segal_bound && !(*segal_bound > 0.0 && *segal_bound < 1.0))
    fail(ErrorCode::InvalidArgument, "Segal bound must lie in (0, 1)");
  if (indices().empty()) fail(ErrorCode::InvalidArgument, "window contains no grid point");
}

std::vector<double> CompactWindow::points() const {
  std::vector<double> out;
  for (std::size_t i : indices()) out.push_back(grid.point(i));
  return out;
}

std::optional<long> CriterionVerdict::first_hit() const {
  for (std::size_t k = 0; k < trace.size(); ++k)
    if (trace[k] <= tol) return static_cast<long>(k + 1);
  return std::nullopt;
}

double combine_legs(CriterionKind kind, double first, double second, long n) {
  const double log_n = std::log(static_cast<double>(n));
  switch (kind) {
    case CriterionKind::CesaroSolid:
    case CriterionKind::CesaroSegal:
    case CriterionKind::CesaroC0:
      return std::max(log_n + first, second - log_n);
    case CriterionKind::AdjointCesaro:
      return std::max(first - log_n, second + log_n);
    case CriterionKind::HypercyclicSolid:
      return std::max(first, second);
    default:
      return first + second;
  }
}

CriterionVerdict assemble_verdict(CriterionKind kind, std::string label, const LegTable& legs,
                                  long horizon, double tol, const TrimBudget* trim) {
  if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  if (legs.first.empty() || legs.first.size() != legs.second.size())
    fail(ErrorCode::InvalidArgument, "leg table is empty or ragged");

  CriterionVerdict v;
  v.label = std::move(label);
  v.kind = kind;
  v.horizon = horizon;
  v.tol = tol;
  v.trace.resize(static_cast<std::size_t>(horizon));
  v.log_trace.resize(static_cast<std::size_t>(horizon));
  const std::vector<char> none(legs.first.size(), 0);
  double record = INFINITY;
  for (long n = 1; n <= horizon; ++n) {
    const auto k = static_cast<std::size_t>(n - 1);
    double log_q = 0.0;
    const double cap = trim ? trim->cap(n, v.witness.size()) : 0.0;
    if (trim && cap > 0.0) {
      StepResult step = trimmed_step(kind, legs, n, cap, trim->mass);
      log_q = step.log_q;
      if (!step.dropped.empty())
        v.trims.push_back({n, step.dropped.size(), trim->report(step.dropped_mass), std::move(step.dropped)});
    } else {
      log_q = combine_legs(kind, leg_max(legs.first, k, none), leg_max(legs.second, k, none), n);
    }
    v.log_trace[k] = log_q;
    v.trace[k] = std::exp(log_q);
    if (log_q < record) {
      record = log_q;
      v.witness.push_back({n, v.trace[k]});
    }
  }
  v.status = v.min_q() <= tol ? Status::Satisfied : Status::NotSatisfiedUpToHorizon;
  return v;
}

ProductFactors product_factors(const CompositionOperator& op, const CompactWindow& window, long n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  double minus = -INFINITY;
  double plus = -INFINITY;
  for (double t : window.points()) {
    minus = std::max(minus, -op.log_cocycle(n, t, CocycleDirection::Forward));
    plus = std::max(plus, op.log_cocycle(n, t, CocycleDirection::Backward));
  }
  return {std::exp(minus), std::exp(plus)};
}

SegalFactors segal_factors(const CompositionOperator& op, const CompactWindow& window, long n,
                           const PiecewiseMap& tau, double tol) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  check_segal(op, window, tau, tol);
  double back = -INFINITY;
  double inv = -INFINITY;
  for (double t : window.points()) {
    // Walk alpha^{-n} t, then forward through alpha^{j-n} t for j = 0..n-1.
    double s = t;
    for (long j = 0; j < n; ++j) s = op.step_back(s);
    ScaledProduct b;
    for (long j = 0; j < n; ++j) {
      b.multiply(op.multiplier(s));
      s = op.step(s);
    }
    back = std::max(back, b.log());
    inv = std::max(inv, -op.log_cocycle(n, t, CocycleDirection::Forward));
  }
  return {std::exp(back), std::exp(inv)};
}

CriterionVerdict evaluate(CriterionKind kind, const CompositionOperator& op, const CompactWindow& window,
                          const EvalOptions& options) {
  if (is_adjoint(kind))
    fail(ErrorCode::InvalidArgument, "adjoint kinds are evaluated on measures");
  if (is_segal(kind)) {
    if (!options.tau) fail(ErrorCode::InvalidArgument, "Segal kinds need tau");
    check_segal(op, window, *options.tau, options.segal_tol);
  }
  if (options.trim.max_points > 0 && !is_l2_backed(kind))
    fail(ErrorCode::InvalidArgument, "trimming applies to L2-backed kinds only");

  const std::vector<double> points = window.points();
  const LegTable legs = forward_legs(op, points, options.horizon);
  if (options.trim.max_points == 0)
    return assemble_verdict(kind, std::string(to_string(kind)), legs, options.horizon, options.tol);

  const double h = window.grid.step();
  TrimBudget budget;
  budget.mass.assign(points.size(), 1.0);
  const auto cap = static_cast<double>(options.trim.max_points);
  budget.cap = [cap](long, std::size_t) { return cap; };
  budget.report = [h](double count) { return std::sqrt(h * count); };
  return assemble_verdict(kind, std::string(to_string(kind)), legs, options.horizon, options.tol, &budget);
}

double quantity(CriterionKind kind, const CompositionOperator& op, const CompactWindow& window, long n,
                const EvalOptions& options) {
  EvalOptions o = options;
  o.horizon = n;
  return evaluate(kind, op, window, o).trace.back();
}

ImplicationReport implication_check(const CompositionOperator& op, const CompactWindow& window,
                                    long horizon, double tol) {
  EvalOptions o;
  o.horizon = horizon;
  o.tol = tol;
  const auto cesaro = evaluate(CriterionKind::CesaroSolid, op, window, o);
  const auto super = evaluate(CriterionKind::SupercyclicSolid, op, window, o);
  ImplicationReport r;
  r.cesaro_satisfied = cesaro.satisfied();
  r.super_satisfied = super.satisfied();
  r.cesaro_hit = cesaro.first_hit();
  for (long n = 1; n <= horizon; ++n) {
    const auto k = static_cast<std::size_t>(n - 1);
    const double qc = cesaro.trace[k];
    if (qc <= 1.0 && super.trace[k] > qc * qc * (1.0 + 1e-12)) r.violations.push_back(n);
  }
  if (r.cesaro_hit && super.trace[static_cast<std::size_t>(*r.cesaro_hit - 1)] > tol)
    r.violations.push_back(*r.cesaro_hit);
  r.violated = !r.violations.empty() || (r.cesaro_satisfied && !r.super_satisfied);
  return r;
}

CriterionVerdict wedge_condition(const CompositionOperator& op, const Grid& grid, long m, long horizon,
                                 double tol) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "wedge window needs m >= 1");
  const CompactWindow window = CompactWindow::symmetric(grid, static_cast<double>(m));
  const LegTable legs = forward_legs(op, window.points(), horizon);
  return assemble_verdict(CriterionKind::SupercyclicSolid, "WEDGE_CONDITION", legs, horizon, tol);
}

CriterionVerdict evaluate_shift(CriterionKind kind, const BilateralShift& shift, long a, long b,
                                long horizon, double tol) {
  if (kind != CriterionKind::SupercyclicSolid && kind != CriterionKind::CesaroSolid &&
      kind != CriterionKind::HypercyclicSolid)
    fail(ErrorCode::InvalidArgument, "shift criteria are the solid kinds");
  if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be >= 1");
  std::vector<double> fwd;
  std::vector<double> bwd;
  shift.log_factor_series(a, b, horizon, fwd, bwd);
  // The legs are already maximised over j, so the table has a single row.
  LegTable legs{{std::move(bwd)}, {std::move(fwd)}};
  return assemble_verdict(kind, std::string(to_string(kind)), legs, horizon, tol);
}

}  // namespace lindyn
