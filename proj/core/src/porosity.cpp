// SPDX-License-Identifier: Apache-2.0
#include "lindyn/porosity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lindyn/error.hpp"
#include "lindyn/parallel.hpp"

namespace lindyn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex phase(Complex z) { return z == Complex{} ? Complex{1.0} : z / std::abs(z); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long top_integer(const Grid& grid) { return grid.half_count() / grid.steps_per_unit(); }

void require_room(const Grid& grid, long N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  if (N + 1 > top_integer(grid))
    fail(ErrorCode::NoValidN, "grid too small for N = " + std::to_string(N));
}

// Piecewise-linear interpolation of node values phases[m - first] given at
// consecutive integers first..last; constant beyond the end nodes.
Complex interpolate_integers(const std::vector<Complex>& nodes, long first, double t) {
  const long last = first + static_cast<long>(nodes.size()) - 1;
  if (t <= static_cast<double>(first)) return nodes.front();
  if (t >= static_cast<double>(last)) return nodes.back();
  const long m = static_cast<long>(std::floor(t));
  const double frac = t - static_cast<double>(m);
  const Complex a = nodes[static_cast<std::size_t>(m - first)];
  if (frac == 0.0) return a;
  const Complex b = nodes[static_cast<std::size_t>(m + 1 - first)];
  return a + frac * (b - a);
}

double sup_distance(const GridFunction& a, const GridFunction& b) { return sup_norm(a - b); }

}  // namespace

GammaSet::GammaSet(GridFunction g_) : g(std::move(g_)) {
  for (long m : g.grid().integers()) {
    const Complex v = g.at_integer(m);
    if (v.imag() != 0.0 || v.real() < 0.0)
      fail(ErrorCode::InvalidArgument, "g must be real and non-negative at m = " + std::to_string(m));
  }
}

bool gamma_membership(const GridFunction& f, const GammaSet& set) {
  require_same_grid(f, set.g);
  for (long m : f.grid().integers())
    if (std::abs(f.at_integer(m)) < set.at(m) * (1.0 - 16.0 * kEps)) return false;
  return true;
}

GridFunction gamma_projection(const GridFunction& f, const GammaSet& set) {
  require_same_grid(f, set.g);
  GridFunction out = f;
  for (long m : f.grid().integers()) {
    const Complex v = f.at_integer(m);
    const double deficit = set.at(m) - std::abs(v);
    if (deficit > 0.0)
      out = out + triangular_bump(f.grid(), static_cast<double>(m), 1.0, deficit * phase(v));
  }
  return out;
}

void PorosityParams::validate(double k_to_f) const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::PreconditionViolated, what);
  };
  require(lambda > 0.0 && lambda <= 0.5, "0 < lambda <= 1/2");
  require(beta > 0.0 && beta < lambda, "0 < beta < lambda");
  require(r_tilde > 0.0, "r_tilde > 0");
  require(r > 0.0 && r < r_tilde - k_to_f, "0 < r < r_tilde - |k - f|");
  require(delta > 0.0 && delta < r / 100.0, "0 < delta < r / 100");
  require(N >= 1, "N >= 1");
}

long choose_N(const GridFunction& f, const GridFunction& k, const GridFunction& g, double beta, double r) {
  require_same_grid(f, k);
  require_same_grid(f, g);
  if (!(beta > 0.0) || !(r > 0.0)) fail(ErrorCode::InvalidArgument, "choose_N needs beta > 0 and r > 0");
  const double bound = r / 6.0;
  double worst = -1.0;  // largest |t| violating the bound
  const Grid& grid = f.grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool bad = std::abs(k[i]) >= bound || std::abs(f[i]) >= bound || g[i].real() / beta >= bound;
    if (bad) worst = std::max(worst, std::abs(grid.point(i)));
  }
  const long N = worst < 0.0 ? 1 : static_cast<long>(std::floor(worst)) + 1;
  if (N + 1 > top_integer(grid))
    fail(ErrorCode::NoValidN, "no N leaves room for the bridge on this grid");
  return N;
}

GridFunction build_h(const GridFunction& g, long N, double delta, double beta) {
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  if (!(beta > 0.0 && beta < 1.0)) fail(ErrorCode::InvalidArgument, "beta must lie in (0, 1)");
  const Grid& grid = g.grid();
  require_room(grid, N);
  const double n = static_cast<double>(N);
  const double g_lo = g.at_integer(-N).real();
  const double g_hi = g.at_integer(N).real();
  const double g_lo_out = g.at_integer(-N - 1).real() / beta;
  const double g_hi_out = g.at_integer(N + 1).real() / beta;
  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    const double gt = g[i].real();
    if (std::abs(t) <= n)
      out[i] = gt + delta;
    else if (std::abs(t) >= n + 1.0)
      out[i] = gt / beta;
    else if (t > 0.0)
      out[i] = g_hi + delta + (t - n) * (g_hi_out - delta - g_hi);
    else
      out[i] = g_lo_out + (t + n + 1.0) * (delta + g_lo - g_lo_out);
  }
  return GridFunction(grid, std::move(out));
}

ScriptEResult build_script_E(const GridFunction& k, const GridFunction& f, const GridFunction& h,
                             const PorosityParams& params) {
  require_same_grid(k, f);
  require_same_grid(k, h);
  const Grid& grid = k.grid();
  const long N = params.N;
  require_room(grid, N);
  const double n = static_cast<double>(N);
  const double delta = params.delta;

  std::vector<Complex> eta;
  for (long m = -N; m <= N; ++m) eta.push_back(phase(k.at_integer(m)));
  const Complex inner_lo = k.at_integer(-N) + delta * eta.front();
  const Complex inner_hi = k.at_integer(N) + delta * eta.back();
  const Complex h_lo = h.at_integer(-N - 1);
  const Complex h_hi = h.at_integer(N + 1);

  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    if (std::abs(t) <= n)
      out[i] = k[i] + delta * interpolate_integers(eta, -N, t);
    else if (std::abs(t) >= n + 1.0)
      out[i] = h[i];
    else if (t > 0.0)
      out[i] = inner_hi + (t - n) * (h_hi - inner_hi);
    else
      out[i] = h_lo + (t + n + 1.0) * (inner_lo - h_lo);
  }
  ScriptEResult r{GridFunction(grid, std::move(out)), 0.0, false, 0.0};
  for (long m = -N; m <= N; ++m) {
    const double target = std::abs(k.at_integer(m)) + delta;
    r.modulus_gap = std::max(r.modulus_gap, std::abs(std::abs(r.e.at_integer(m)) - target) / target);
  }
  r.in_gamma_h = gamma_membership(r.e, GammaSet(h));
  r.distance_to_f = sup_distance(r.e, f);
  return r;
}

GammaResult build_gamma(const GridFunction& u, const GridFunction& v, const GridFunction& f,
                        const GammaSet& g_set, const GridFunction& h, const PorosityParams& params) {
  require_same_grid(u, v);
  require_same_grid(u, f);
  require_same_grid(u, h);
  const Grid& grid = u.grid();
  const long N = params.N;
  require_room(grid, N);
  const double n = static_cast<double>(N);
  const double beta = params.beta;

  if (!gamma_membership(u, GammaSet(h)))
    fail(ErrorCode::PreconditionViolated, "u in Gamma_h fails");
  const double f_to_u = sup_distance(f, u);
  if (!(f_to_u < params.r_tilde)) fail(ErrorCode::PreconditionViolated, "|f - u| < r_tilde fails");
  const double r_prime = std::min(params.delta, params.lambda * (params.r_tilde - f_to_u));
  const double u_to_v = sup_distance(u, v);
  if (u_to_v > r_prime * (1.0 + 1e-12))
    fail(ErrorCode::PreconditionViolated, "|u - v| <= min(delta, lambda (r_tilde - |f - u|)) fails");

  // Phases of v at the outer integers on each side.
  const long top = top_integer(grid);
  std::vector<Complex> theta_hi;
  for (long m = N + 1; m <= top; ++m) theta_hi.push_back(phase(v.at_integer(m)));
  std::vector<Complex> theta_lo;
  for (long m = -top; m <= -N - 1; ++m) theta_lo.push_back(phase(v.at_integer(m)));
  const double gap_hi = beta * std::abs(u.at_integer(N + 1) - v.at_integer(N + 1));
  const double gap_lo = beta * std::abs(u.at_integer(-N - 1) - v.at_integer(-N - 1));

  std::vector<Complex> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    if (std::abs(t) <= n) {
      out[i] = v[i];
    } else if (t >= n + 1.0) {
      out[i] = v[i] + beta * std::abs(u[i] - v[i]) * interpolate_integers(theta_hi, N + 1, t);
    } else if (t <= -n - 1.0) {
      out[i] = v[i] + beta * std::abs(u[i] - v[i]) * interpolate_integers(theta_lo, -top, t);
    } else if (t > 0.0) {
      out[i] = v[i] + (t - n) * gap_hi * theta_hi.front();
    } else {
      out[i] = v[i] - (t + n) * gap_lo * theta_lo.back();
    }
  }
  GammaResult r{GridFunction(grid, std::move(out)), 0.0, u_to_v, false};
  r.distance_to_v = sup_distance(r.gamma, v);
  r.in_gamma_g = gamma_membership(r.gamma, g_set);
  return r;
}

GridFunction decaying_g(const Grid& grid, double scale) {
  if (!(scale >= 0.0)) fail(ErrorCode::InvalidArgument, "scale must be non-negative");
  return GridFunction::sample(grid, [scale](double t) { return Complex{scale * std::exp(-std::abs(t))}; });
}

ConstructionScene make_construction_scene(GridFunction f, GammaSet g, double r_tilde, double lambda, double beta) {
  GridFunction k = gamma_projection(f, g);
  PorosityParams p;
  p.lambda = lambda;
  p.beta = beta;
  p.r_tilde = r_tilde;
  const double k_to_f = sup_distance(k, f);
  p.r = (r_tilde - k_to_f) / 2.0;
  p.delta = p.r / 200.0;
  if (!(p.r > 0.0)) fail(ErrorCode::PreconditionViolated, "|k - f| < r_tilde fails");
  p.N = choose_N(f, k, g.g, beta, p.r);
  p.validate(k_to_f);
  return {std::move(f), std::move(k), std::move(g), p};
}

SceneRun run_construction_scene(const ConstructionScene& scene, const GridFunction& direction, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) fail(ErrorCode::InvalidArgument, "fraction must lie in [0, 1]");
  const PorosityParams& p = scene.params;
  GridFunction h = build_h(scene.g.g, p.N, p.delta, p.beta);
  ScriptEResult e = build_script_E(scene.k, scene.f, h, p);
  const GridFunction& u = e.e;
  const double r_prime = std::min(p.delta, p.lambda * (p.r_tilde - sup_distance(scene.f, u)));
  const double size = sup_norm(direction);
  const GridFunction v = size == 0.0 ? u : u + direction * (fraction * r_prime / size);
  GammaResult gamma = build_gamma(u, v, scene.f, scene.g, h, p);
  const bool nested = !gamma_membership(h, GammaSet(h)) || gamma_membership(h, scene.g);
  const bool holds = nested && e.holds(p.r_tilde, 1e-12) && gamma.holds(p.beta) &&
                     gamma.distance_to_v <= p.lambda * gamma.u_to_v * (1.0 + 1e-12);
  return {std::move(h), std::move(e), std::move(gamma), holds};
}

// ---------------------------------------------------------------- probe

namespace {

// Random perturbation with sup norm exactly `size`.
GridFunction random_perturbation(const Grid& grid, std::mt19937_64& rng, int shape, double size) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_complex = [&] {
    return std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  };
  GridFunction p = GridFunction::zeros(grid);
  if (shape == 0) {
    const long top = top_integer(grid);
    std::vector<Complex> nodes;
    for (long m = -top; m <= top; ++m) nodes.push_back(random_complex());
    p = GridFunction::sample(grid, [&](double t) { return interpolate_integers(nodes, -top, t); });
  } else {
    const double L = grid.half_width();
    const double centre = (2.0 * unit(rng) - 1.0) * L;
    const double width = 0.5 + 3.5 * unit(rng);
    const Complex amp = random_complex();
    p = GridFunction::sample(grid, [&](double t) {
      const double z = (t - centre) / width;
      return std::abs(z) >= 1.0 ? Complex{} : amp * std::pow(std::cos(0.5 * std::numbers::pi * z), 2);
    });
  }
  const double s = sup_norm(p);
  if (s == 0.0) return triangular_bump(grid, 0.0, 1.0, size);
  return p * (size / s);
}

// y inflated along its own phase: |z(m)| = |y(m)| + size at every integer.
GridFunction inflate(const GridFunction& y, double size) {
  const Grid& grid = y.grid();
  const long top = top_integer(grid);
  std::vector<Complex> nodes;
  for (long m = -top; m <= top; ++m) nodes.push_back(phase(y.at_integer(m)));
  return y + GridFunction::sample(grid, [&](double t) { return size * interpolate_integers(nodes, -top, t); });
}

}  // namespace

ProbeReport porosity_probe(const MembershipOracle& oracle, const GridFunction& x, const ProbeOptions& o) {
  if (!(o.lambda > 0.0 && o.lambda < 1.0)) fail(ErrorCode::InvalidArgument, "lambda must lie in (0, 1)");
  if (!(o.delta > 0.0)) fail(ErrorCode::InvalidArgument, "delta must be positive");
  if (o.outer < 1 || o.inner < 1) fail(ErrorCode::InvalidArgument, "probe budgets must be >= 1");

  ProbeReport report;
  report.samples.resize(o.outer);
  std::vector<std::optional<GridFunction>> centres(o.outer);
  parallel_for(o.outer, [&](std::size_t i) {
    const std::uint64_t seed = splitmix64(o.seed ^ splitmix64(i));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double d = o.delta * (0.05 + 0.9 * unit(rng));
    const GridFunction y = x + random_perturbation(x.grid(), rng, static_cast<int>(i % 2), d);
    const double radius = o.lambda * d;
    std::size_t hits = 0;
    for (std::size_t j = 0; j < o.inner; ++j) {
      const double s = 0.7 + 0.299 * unit(rng);
      const GridFunction z = j % 3 == 0 ? inflate(y, s * radius)
                                        : y + random_perturbation(x.grid(), rng, static_cast<int>(j % 3) - 1,
                                                                  s * radius);
      if (oracle(z)) ++hits;
    }
    report.samples[i] = {seed, hits == 0, d, hits};
    if (hits == 0) centres[i] = y;
  });
  for (auto& c : centres)
    if (c) {
      report.witness = std::move(c);
      break;
    }
  return report;
}

// ---------------------------------------------------------------- corollary

CorollaryG corollary_g(const CompositionOperator& op, const Grid& grid) {
  const long top = top_integer(grid);
  if (top < 1) fail(ErrorCode::InvalidArgument, "grid holds no positive integer");
  std::vector<double> node(static_cast<std::size_t>(top) + 1, 0.0);
  for (long n = 1; n <= top; ++n)
    node[static_cast<std::size_t>(n)] =
        1.0 / op.cocycle(n, static_cast<double>(n), CocycleDirection::Backward);
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.point(i);
    if (t <= 0.0) continue;
    if (t <= 1.0) {
      values[i] = t * node[1];
      continue;
    }
    const long m = static_cast<long>(std::floor(t));
    const double frac = t - static_cast<double>(m);
    const double a = node[static_cast<std::size_t>(m)];
    values[i] = frac == 0.0 || m == top ? a : a + frac * (node[static_cast<std::size_t>(m + 1)] - a);
  }
  CorollaryG out{GammaSet(GridFunction(grid, std::move(values))), node.back() < 1e-6, {}};
  if (!out.decays)
    out.warning = "weight products do not decay on this grid: last node value " + std::to_string(node.back());
  return out;
}

double corollary_check(const CompositionOperator& op, const GammaSet& set, const GridFunction& f, long N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "N must be >= 1");
  if (!gamma_membership(f, set)) fail(ErrorCode::PreconditionViolated, "f is not in Gamma_g");
  std::vector<double> norms(static_cast<std::size_t>(N));
  parallel_for(norms.size(), [&](std::size_t k) {
    norms[k] = sup_norm(op.apply_power(f, static_cast<long>(k) + 1));
  });
  return *std::min_element(norms.begin(), norms.end());
}

}  // namespace lindyn
