// SPDX-License-Identifier: Apache-2.0
#include "lindyn/operator.hpp"

#include <algorithm>
#include <string>

#include "lindyn/error.hpp"

namespace lindyn {

namespace {

void mul(Complex& v, double x) { v *= x; }
void div(Complex& v, double x) { v /= x; }
void mul(ScaledProduct& p, double x) { p.multiply(x); }
void div(ScaledProduct& p, double x) { p.divide(x); }

}  // namespace

CompositionOperator::CompositionOperator(Homeo alpha, PiecewiseMap weight)
    : alpha_(std::move(alpha)), weight_(std::move(weight)) {
  if (!weight_.is_positive())
    fail(ErrorCode::InvalidArgument,
         "weight must be bounded away from zero, min is " + std::to_string(weight_.min_value()));
}

CompositionOperator CompositionOperator::inverse() const {
  CompositionOperator out = *this;
  out.inverse_ = !inverse_;
  return out;
}

// m(p) = w(p) for T and 1 / w(alpha^{-1} p) = 1 / w(next) for S.
template <class Acc>
void CompositionOperator::fold(Acc& acc, double p, double next) const {
  if (inverse_)
    div(acc, weight_(next));
  else
    mul(acc, weight_(p));
}

GridFunction CompositionOperator::apply_power(const GridFunction& f, long n) const {
  if (n < 0) fail(ErrorCode::InvalidArgument, "power must be >= 0");
  if (n == 0) return f;
  const Grid& grid = f.grid();
  std::vector<Complex> out(grid.size());
  std::vector<double> orbit(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    orbit[0] = grid.point(i);
    for (long j = 1; j <= n; ++j) orbit[j] = step(orbit[j - 1]);
    Complex v = linear_interpolate(f, orbit[n]);
    // Zero stays zero under positive factors.
    if (v != Complex{})
      for (long j = n - 1; j >= 0; --j) fold(v, orbit[j], orbit[j + 1]);
    out[i] = v;
  }
  // Mass of f at s lands at step_back^n(s); off the grid it is lost.
  bool truncated = f.truncated();
  for (std::size_t i : f.support()) {
    if (truncated) break;
    double s = grid.point(i);
    for (long j = 0; j < n; ++j) s = step_back(s);
    truncated = !grid.contains(s);
  }
  return GridFunction(grid, std::move(out), truncated);
}

GridFunction CompositionOperator::apply_inverse_power(const GridFunction& f, long n) const {
  if (n < 0) fail(ErrorCode::InvalidArgument, "power must be >= 0");
  if (n == 0) return f;
  const Grid& grid = f.grid();
  std::vector<Complex> out(grid.size());
  std::vector<double> orbit(static_cast<std::size_t>(n) + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    orbit[0] = grid.point(i);
    for (long j = 1; j <= n; ++j) orbit[j] = step_back(orbit[j - 1]);
    Complex v = linear_interpolate(f, orbit[n]);
    // Undo m at orbit[j], whose image under step is orbit[j-1].
    for (long j = n; j >= 1 && v != Complex{}; --j) {
      if (inverse_)
        mul(v, weight_(orbit[j - 1]));
      else
        div(v, weight_(orbit[j]));
    }
    out[i] = v;
  }
  bool truncated = f.truncated();
  for (std::size_t i : f.support()) {
    if (truncated) break;
    double s = grid.point(i);
    for (long j = 0; j < n; ++j) s = step(s);
    truncated = !grid.contains(s);
  }
  return GridFunction(grid, std::move(out), truncated);
}

ScaledProduct CompositionOperator::product(long n, double t, CocycleDirection direction) const {
  if (n < 0) fail(ErrorCode::InvalidArgument, "cocycle length must be >= 0");
  ScaledProduct acc;
  std::vector<double> orbit(static_cast<std::size_t>(n) + 1);
  orbit[0] = t;
  if (direction == CocycleDirection::Forward) {
    for (long j = 1; j <= n; ++j) orbit[j] = step(orbit[j - 1]);
    for (long j = 0; j < n; ++j) fold(acc, orbit[j], orbit[j + 1]);
  } else {
    // Farthest point first: the factors then meet in the same order as the
    // forward cocycle started from step_back^n(t).
    for (long j = 1; j <= n; ++j) orbit[j] = step_back(orbit[j - 1]);
    for (long j = n; j >= 1; --j) fold(acc, orbit[j], orbit[j - 1]);
  }
  return acc;
}

double CompositionOperator::cocycle(long n, double t, CocycleDirection direction) const {
  return product(n, t, direction).value();
}

double CompositionOperator::log_cocycle(long n, double t, CocycleDirection direction) const {
  return product(n, t, direction).log();
}

void CompositionOperator::log_cocycle_series(double t, long count, std::vector<double>& forward,
                                             std::vector<double>& backward) const {
  forward.assign(static_cast<std::size_t>(count), 0.0);
  backward.assign(static_cast<std::size_t>(count), 0.0);
  ScaledProduct fwd;
  ScaledProduct bwd;
  double p = t;
  double q = t;
  for (long n = 1; n <= count; ++n) {
    const double p_next = step(p);
    fold(fwd, p, p_next);
    p = p_next;
    const double q_next = step_back(q);
    fold(bwd, q_next, q);
    q = q_next;
    forward[static_cast<std::size_t>(n - 1)] = fwd.log();
    backward[static_cast<std::size_t>(n - 1)] = bwd.log();
  }
}

bool segal_compatible(const CompositionOperator& op, const PiecewiseMap& tau, const Grid& grid,
                      double tol) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    worst = std::max(worst, std::abs(tau(op.alpha().forward(t)) - tau(t)));
  }
  return worst <= tol;
}

// ---------------------------------------------------------------- BilateralShift

BilateralShift::BilateralShift(std::function<double(long)> weight, long lo, long hi,
                               ShiftDirection direction)
    : weight_(std::move(weight)), lo_(lo), hi_(hi), direction_(direction) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "empty shift window");
  for (long j = lo - 1; j <= hi; ++j)
    if (!(weight_(j) > 0.0)) fail(ErrorCode::InvalidArgument, "shift weights must be positive");
}

BilateralShift::Result BilateralShift::apply(const std::vector<Complex>& x, long n) const {
  if (x.size() != size()) fail(ErrorCode::InvalidArgument, "vector does not match the shift window");
  if (n < 0) fail(ErrorCode::InvalidArgument, "power must be >= 0");
  Result r{x, false};
  const std::size_t last = size() - 1;
  for (long step = 0; step < n; ++step) {
    std::vector<Complex> next(size());
    if (direction_ == ShiftDirection::Forward) {
      r.truncated = r.truncated || r.values[last] != Complex{};
      for (std::size_t k = 0; k < last; ++k)
        next[k + 1] = weight_(lo_ + static_cast<long>(k)) * r.values[k];
    } else {
      r.truncated = r.truncated || r.values[0] != Complex{};
      for (std::size_t k = 1; k <= last; ++k)
        next[k - 1] = r.values[k] / weight_(lo_ + static_cast<long>(k) - 1);
    }
    r.values = std::move(next);
  }
  return r;
}

BilateralShift::Factors BilateralShift::factors(long a, long b, long n) const {
  std::vector<double> fwd;
  std::vector<double> bwd;
  log_factor_series(a, b, n, fwd, bwd);
  if (n == 0) return {1.0, 1.0};
  return {std::exp(fwd.back()), std::exp(bwd.back())};
}

void BilateralShift::log_factor_series(long a, long b, long count, std::vector<double>& forward_leg,
                                       std::vector<double>& backward_leg) const {
  if (a > b) fail(ErrorCode::InvalidArgument, "empty index range");
  const auto len = static_cast<std::size_t>(count);
  forward_leg.assign(len, -INFINITY);
  backward_leg.assign(len, -INFINITY);
  for (long j = a; j <= b; ++j) {
    ScaledProduct fwd;
    ScaledProduct bwd;
    for (long n = 1; n <= count; ++n) {
      fwd.multiply(weight_(j + n - 1));
      bwd.divide(weight_(j - n));
      const auto k = static_cast<std::size_t>(n - 1);
      forward_leg[k] = std::max(forward_leg[k], fwd.log());
      backward_leg[k] = std::max(backward_leg[k], bwd.log());
    }
  }
}

}  // namespace lindyn
