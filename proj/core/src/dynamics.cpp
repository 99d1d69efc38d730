// SPDX-License-Identifier: Apache-2.0
#include "lindyn/dynamics.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "lindyn/error.hpp"
#include "lindyn/parallel.hpp"

namespace lindyn {

namespace {

constexpr double kInvPhi = 0.61803398874989484820;

struct Minimum {
  double x;
  double value;
};

// Golden-section search for a convex function on [lo, hi].
Minimum golden_section(double lo, double hi, double tol, const std::function<double(double)>& fn) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

GridFunction checked_restrict(const GridFunction& f, std::span<const std::size_t> mask, const char* what) {
  GridFunction out = restrict_to(f, mask);
  if (out.is_zero()) fail(ErrorCode::Degenerate, std::string(what) + " vanishes on the mask");
  return out;
}

Approximant build(const CompositionOperator& op, const GridFunction& f_part, const GridFunction& g_part,
                  long n, const NormKind& kind) {
  const GridFunction pushed = op.apply_power(f_part, n);
  const GridFunction pulled = op.apply_inverse_power(g_part, n);
  const double a = norm(pushed, kind);
  const double b = norm(pulled, kind);
  if (!(a > 0.0) || !(b > 0.0)) fail(ErrorCode::Degenerate, "orbit left the grid");
  return {f_part + pulled * std::sqrt(a / b), std::sqrt(b / a), n};
}

}  // namespace

ProjectiveFit projective_distance(const GridFunction& f, const GridFunction& g, const NormKind& kind,
                                  double tol) {
  require_same_grid(f, g);
  if (f.is_zero()) fail(ErrorCode::ZeroVector, "projective distance needs f != 0");

  if (std::holds_alternative<L2Norm>(kind)) {
    const double ff = std::pow(l2_norm(f), 2);
    const Complex gf = l2_inner(g, f);
    const double gg = std::pow(l2_norm(g), 2);
    return {std::sqrt(std::max(0.0, gg - std::norm(gf) / ff)), gf / ff};
  }

  // Only points where f or g is non-zero matter.
  std::vector<Complex> fs;
  std::vector<Complex> gs;
  std::vector<double> ratios;
  const auto* segal = std::get_if<SegalNorm>(&kind);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == Complex{} && g[i] == Complex{}) continue;
    fs.push_back(f[i]);
    gs.push_back(g[i]);
    if (segal) ratios.push_back(std::abs(segal->tau(f.grid().point(i))));
  }
  std::vector<double> mods(fs.size());
  auto objective = [&](Complex lambda) {
    if (!segal) {
      double m = 0.0;
      for (std::size_t i = 0; i < fs.size(); ++i) m = std::max(m, std::abs(lambda * fs[i] - gs[i]));
      return m;
    }
    for (std::size_t i = 0; i < fs.size(); ++i) mods[i] = std::abs(lambda * fs[i] - gs[i]);
    return segal_series(mods, ratios, segal->tail_tol);
  };

  const double g_norm = objective(Complex{});
  if (g_norm == 0.0) return {0.0, Complex{}};
  // Any |lambda| beyond 2|g|/|f| does worse than lambda = 0.
  const double radius = 2.0 * g_norm / objective(Complex{1.0});
  const double step = tol * (1.0 + radius);
  // Minimising out Im keeps the profile in Re convex.
  const Minimum re = golden_section(-radius, radius, step, [&](double x) {
    return golden_section(-radius, radius, step, [&](double y) { return objective({x, y}); }).value;
  });
  const Minimum im = golden_section(-radius, radius, step, [&](double y) { return objective({re.x, y}); });
  const Complex lambda{re.x, im.x};
  return {objective(lambda), lambda};
}

OrbitTrace orbit_trace(const CompositionOperator& op, const GridFunction& f, long horizon,
                       const NormKind& kind, const std::optional<GridFunction>& target) {
  if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (target) require_same_grid(f, *target);
  OrbitTrace trace{kind, std::vector<OrbitSample>(static_cast<std::size_t>(horizon))};
  parallel_for(trace.samples.size(), [&](std::size_t k) {
    const long n = static_cast<long>(k) + 1;
    const GridFunction orbit = op.apply_power(f, n);
    OrbitSample s{n, norm(orbit, kind), 0.0, std::nullopt, orbit.truncated()};
    s.cesaro_norm = s.norm / static_cast<double>(n);
    if (target && !orbit.is_zero()) s.scaled_distance = projective_distance(orbit, *target, kind).distance;
    trace.samples[k] = s;
  });
  return trace;
}

Approximant supercyclic_approximant(const CompositionOperator& op, const GridFunction& f,
                                    const GridFunction& g, long n, std::span<const std::size_t> mask,
                                    const NormKind& kind) {
  require_same_grid(f, g);
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  return build(op, checked_restrict(f, mask, "f"), checked_restrict(g, mask, "g"), n, kind);
}

Approximant cesaro_approximant(const CompositionOperator& op, const GridFunction& f,
                               const GridFunction& g, long n, std::span<const std::size_t> mask,
                               const NormKind& kind) {
  require_same_grid(f, g);
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  (void)kind;  // the scalar is pinned, no norm enters the construction
  const GridFunction f_part = checked_restrict(f, mask, "f");
  const GridFunction g_part = checked_restrict(g, mask, "g");
  const double scale = static_cast<double>(n);
  return {f_part + op.apply_inverse_power(g_part, n) * scale, 1.0 / scale, n};
}

Approximant segal_approximant(const CompositionOperator& op, const GridFunction& f,
                              const GridFunction& g, long n, const PiecewiseMap& tau, double tail_tol) {
  require_same_grid(f, g);
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!segal_compatible(op, tau, f.grid()))
    fail(ErrorCode::SegalIncompatible, "tau o alpha differs from tau on the grid");
  if (f.is_zero() || g.is_zero()) fail(ErrorCode::Degenerate, "f and g must be non-zero");
  return build(op, f, g, n, SegalNorm{tau, tail_tol});
}

std::vector<BestHit> empirical_best(const CompositionOperator& op, const GridFunction& f,
                                    const std::vector<GridFunction>& targets, long horizon,
                                    const NormKind& kind, ProbeMode mode) {
  if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be >= 1");
  for (const auto& g : targets) require_same_grid(f, g);
  const auto steps = static_cast<std::size_t>(horizon);
  // distance[k][target]
  std::vector<std::vector<double>> distance(steps, std::vector<double>(targets.size()));
  parallel_for(steps, [&](std::size_t k) {
    const long n = static_cast<long>(k) + 1;
    const GridFunction orbit = op.apply_power(f, n);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      switch (mode) {
        case ProbeMode::Plain:
          distance[k][j] = norm(orbit - targets[j], kind);
          break;
        case ProbeMode::Cesaro:
          distance[k][j] = norm(orbit * (1.0 / static_cast<double>(n)) - targets[j], kind);
          break;
        case ProbeMode::Scaled:
          distance[k][j] = orbit.is_zero() ? norm(targets[j], kind)
                                           : projective_distance(orbit, targets[j], kind).distance;
          break;
      }
    }
  });
  std::vector<BestHit> out;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    BestHit best{j, 1, std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < steps; ++k)
      if (distance[k][j] < best.distance) best = {j, static_cast<long>(k) + 1, distance[k][j]};
    out.push_back(best);
  }
  return out;
}

}  // namespace lindyn
