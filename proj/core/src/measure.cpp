// SPDX-License-Identifier: Apache-2.0
#include "lindyn/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindyn/error.hpp"
#include "lindyn/parallel.hpp"

namespace lindyn {

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const auto& a : atoms)
    if (!std::isfinite(a.x) || !std::isfinite(a.c.real()) || !std::isfinite(a.c.imag()))
      fail(ErrorCode::InvalidArgument, "atom with non-finite location or weight");
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  for (const auto& a : atoms) {
    if (!atoms_.empty() && atoms_.back().x == a.x)
      atoms_.back().c += a.c;
    else
      atoms_.push_back(a);
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.c == Complex{}; });
}

double AtomicMeasure::tv_norm() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::abs(a.c);
  return s;
}

Complex AtomicMeasure::mass_at(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.x < v; });
  return it != atoms_.end() && it->x == x ? it->c : Complex{};
}

AtomicMeasure AtomicMeasure::operator+(const AtomicMeasure& other) const {
  std::vector<Atom> all = atoms_;
  all.insert(all.end(), other.atoms_.begin(), other.atoms_.end());
  return AtomicMeasure(std::move(all));
}

AtomicMeasure AtomicMeasure::operator-(const AtomicMeasure& other) const { return *this + other * -1.0; }

AtomicMeasure AtomicMeasure::operator*(Complex scalar) const {
  std::vector<Atom> out = atoms_;
  for (auto& a : out) a.c *= scalar;
  return AtomicMeasure(std::move(out));
}

AtomicMeasure AtomicMeasure::without(const std::vector<double>& locations) const {
  std::vector<Atom> out;
  for (const auto& a : atoms_)
    if (std::find(locations.begin(), locations.end(), a.x) == locations.end()) out.push_back(a);
  return AtomicMeasure(std::move(out));
}

AtomicMeasure pushforward(const AtomicMeasure& mu, const Homeo& alpha) {
  std::vector<Atom> out;
  for (const auto& a : mu.atoms()) out.push_back({alpha.forward(a.x), a.c});
  return AtomicMeasure(std::move(out));
}

AtomicMeasure adjoint_apply(const CompositionOperator& op, const AtomicMeasure& mu, long n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "power must be >= 0");
  if (n == 0) return mu;
  std::vector<Atom> out;
  for (const auto& a : mu.atoms()) {
    double y = a.x;
    for (long j = 0; j < n; ++j) y = op.step(y);
    out.push_back({y, a.c * op.cocycle(n, a.x, CocycleDirection::Forward)});
  }
  return AtomicMeasure(std::move(out));
}

AtomicMeasure adjoint_apply_inverse(const CompositionOperator& op, const AtomicMeasure& mu, long n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "power must be >= 0");
  if (n == 0) return mu;
  std::vector<Atom> out;
  for (const auto& a : mu.atoms()) {
    double y = a.x;
    for (long j = 0; j < n; ++j) y = op.step_back(y);
    out.push_back({y, a.c / op.cocycle(n, a.x, CocycleDirection::Backward)});
  }
  return AtomicMeasure(std::move(out));
}

double duality_gap(const CompositionOperator& op, const GridFunction& f, const AtomicMeasure& mu) {
  const Grid& grid = f.grid();
  const GridFunction tf = op.apply(f);
  Complex lhs{};
  for (const auto& a : mu.atoms()) {
    const auto i = grid.index_of(a.x);
    if (!i) fail(ErrorCode::InvalidArgument, "duality needs atoms on grid points");
    lhs += a.c * tf[*i];
  }
  Complex rhs{};
  const AtomicMeasure image = adjoint_apply(op, mu);
  for (const auto& a : image.atoms()) rhs += a.c * linear_interpolate(f, a.x);
  return std::abs(lhs - rhs);
}

bool duality_check(const CompositionOperator& op, const GridFunction& f, const AtomicMeasure& mu,
                   double tol) {
  return duality_gap(op, f, mu) <= tol;
}

CriterionVerdict adjoint_criterion(CriterionKind kind, const CompositionOperator& op,
                                   const AtomicMeasure& mu, const AtomicMeasure& nu, double lo,
                                   double hi, const AdjointOptions& options) {
  if (!is_adjoint(kind)) fail(ErrorCode::InvalidArgument, "not an adjoint criterion kind");
  if (mu.empty() || nu.empty()) fail(ErrorCode::Degenerate, "adjoint criterion needs non-zero measures");
  for (const auto* m : {&mu, &nu})
    for (const auto& a : m->atoms())
      if (a.x < lo || a.x > hi)
        fail(ErrorCode::SupportOutsideK, "atom at " + std::to_string(a.x) + " lies outside K");

  // One row per distinct location; a leg that does not apply there is -inf.
  std::vector<double> xs;
  for (const auto& a : mu.atoms()) xs.push_back(a.x);
  for (const auto& a : nu.atoms()) xs.push_back(a.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const long horizon = options.horizon;
  LegTable legs;
  legs.first.resize(xs.size());
  legs.second.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    std::vector<double> fwd;
    std::vector<double> bwd;
    op.log_cocycle_series(xs[i], horizon, fwd, bwd);
    const bool in_mu = mu.mass_at(xs[i]) != Complex{};
    const bool in_nu = nu.mass_at(xs[i]) != Complex{};
    legs.first[i].assign(fwd.size(), -INFINITY);
    legs.second[i].assign(bwd.size(), -INFINITY);
    if (in_mu) legs.first[i] = fwd;
    if (in_nu)
      for (std::size_t k = 0; k < bwd.size(); ++k) legs.second[i][k] = -bwd[k];
  });

  const std::string label(to_string(kind));
  if (!(options.atom_trim_budget > 0.0))
    return assemble_verdict(kind, label, legs, horizon, options.tol);
  TrimBudget budget;
  for (double x : xs) budget.mass.push_back(std::abs(mu.mass_at(x)) + std::abs(nu.mass_at(x)));
  const double b = options.atom_trim_budget;
  budget.cap = [b](long, std::size_t records) { return std::ldexp(b, -static_cast<int>(records)); };
  budget.report = [](double mass) { return mass; };
  return assemble_verdict(kind, label, legs, horizon, options.tol, &budget);
}

MeasureApproximant measure_approximant(const CompositionOperator& op, const AtomicMeasure& mu,
                                       const AtomicMeasure& nu, long n,
                                       const std::vector<double>& mu_trim,
                                       const std::vector<double>& nu_trim) {
  const AtomicMeasure mu_kept = mu.without(mu_trim);
  const AtomicMeasure nu_kept = nu.without(nu_trim);
  if (mu_kept.empty() || nu_kept.empty())
    fail(ErrorCode::Degenerate, "trimmed measure is zero");
  const AtomicMeasure pulled = adjoint_apply_inverse(op, nu_kept, n);
  const double a = adjoint_apply(op, mu_kept, n).tv_norm();
  const double b = pulled.tv_norm();
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorCode::Degenerate, "orbit norm vanished");
  return {mu_kept + pulled * std::sqrt(a / b), std::sqrt(b / a), n};
}

}  // namespace lindyn
