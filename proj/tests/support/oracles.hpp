// SPDX-License-Identifier: Apache-2.0
//
// Independent reference computations and random generators for the tests.
// Nothing here calls the library routine it is meant to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lindyn/funcspace.hpp"
#include "lindyn/measure.hpp"

namespace lindyn::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline long uniform_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// prod_{j=0}^{n-1} w(t + j c) in long double, with alpha(t) = t + c.
inline long double brute_forward_product(const PiecewiseMap& w, double c, double t, long n) {
  long double p = 1.0L;
  for (long j = 0; j < n; ++j) p *= w(t + static_cast<double>(j) * c);
  return p;
}

/// prod_{j=1}^{n} w(t - j c).
inline long double brute_backward_product(const PiecewiseMap& w, double c, double t, long n) {
  long double p = 1.0L;
  for (long j = 1; j <= n; ++j) p *= w(t - static_cast<double>(j) * c);
  return p;
}

/// Norm of the finitely many values, sup or discrete L2 with step h.
inline double plain_norm(const std::vector<Complex>& v, bool sup, double h) {
  double acc = 0.0;
  for (const auto& z : v) acc = sup ? std::max(acc, std::abs(z)) : acc + std::norm(z);
  return sup ? acc : std::sqrt(h * acc);
}

/// min over lambda of ||lambda f - g|| by two brute-force grids in
/// (modulus, phase): a coarse sweep of `side` x `side` samples over
/// [0, 2|g|/|f|] x [0, 2 pi), then the same count on a +-2 cell box
/// around the best coarse sample.
inline double brute_projective_distance(const std::vector<Complex>& f, const std::vector<Complex>& g, bool sup,
                                        double h, int side = 1000) {
  auto objective = [&](Complex lambda) {
    std::vector<Complex> d(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) d[i] = lambda * f[i] - g[i];
    return plain_norm(d, sup, h);
  };
  const double radius = 2.0 * plain_norm(g, sup, h) / plain_norm(f, sup, h);
  double best = objective(0.0);
  double best_mod = 0.0;
  double best_phase = 0.0;
  const double dm = radius / side;
  const double dp = 2.0 * std::numbers::pi / side;
  for (int a = 0; a <= side; ++a)
    for (int b = 0; b < side; ++b) {
      const double val = objective(std::polar(a * dm, b * dp));
      if (val < best) {
        best = val;
        best_mod = a * dm;
        best_phase = b * dp;
      }
    }
  const double m0 = std::max(0.0, best_mod - 2.0 * dm);
  const double p0 = best_phase - 2.0 * dp;
  for (int a = 0; a <= side; ++a)
    for (int b = 0; b <= side; ++b)
      best = std::min(best, objective(std::polar(m0 + a * (4.0 * dm / side), p0 + b * (4.0 * dp / side))));
  return best;
}

/// <Tf, mu> from the defining integral: sum_i c_i w(x_i) f(x_i + c), for
/// alpha(t) = t + c, reading f at grid points only.
inline Complex brute_pairing_after_T(const PiecewiseMap& w, double c, const GridFunction& f,
                                     const AtomicMeasure& mu) {
  Complex acc{};
  for (const auto& a : mu.atoms()) {
    const double image = a.x + c;
    const auto idx = f.grid().index_of(image);
    const Complex fv = idx ? f[*idx] : Complex{};
    acc += a.c * w(a.x) * fv;
  }
  return acc;
}

/// Mass that T*^n mu puts on [lo, hi), from the integral form
/// T*^n mu(E) = sum_i c_i prod_{j=0}^{n-1} w(x_i + j c) [x_i + n c in E].
inline Complex brute_adjoint_mass(const PiecewiseMap& w, double c, const AtomicMeasure& mu, long n, double lo,
                                  double hi) {
  Complex acc{};
  for (const auto& a : mu.atoms()) {
    const double image = a.x + static_cast<double>(n) * c;
    if (image >= lo && image < hi)
      acc += a.c * static_cast<double>(brute_forward_product(w, c, a.x, n));
  }
  return acc;
}

// ------------------------------------------------------------ generators

/// Positive continuous weight with 2..6 nodes in [-8, 8], values in [lo, hi].
inline PiecewiseMap random_weight(Rng& rng, double lo = 0.25, double hi = 4.0) {
  const long nodes = uniform_int(rng, 2, 6);
  std::vector<double> bps;
  for (long i = 0; i < nodes; ++i) bps.push_back(uniform(rng, -8.0, 8.0));
  std::sort(bps.begin(), bps.end());
  for (std::size_t i = 1; i < bps.size(); ++i)
    if (bps[i] <= bps[i - 1]) bps[i] = bps[i - 1] + 0.25;
  std::vector<double> vals;
  for (long i = 0; i < nodes; ++i) vals.push_back(std::exp(uniform(rng, std::log(lo), std::log(hi))));
  return PiecewiseMap(std::move(bps), std::move(vals));
}

/// Translation by a non-zero integer multiple of the grid step, |c| <= 2.
inline double random_grid_shift(Rng& rng, const Grid& grid) {
  const long limit = 2L * grid.steps_per_unit();
  long k = 0;
  while (k == 0) k = uniform_int(rng, -limit, limit);
  return static_cast<double>(k) * grid.step();
}

inline Complex random_complex(Rng& rng, double max_modulus = 1.0) {
  return std::polar(uniform(rng, 0.0, max_modulus), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

/// Random values on the grid points of [-radius, radius], zero elsewhere.
inline GridFunction random_grid_function(Rng& rng, const Grid& grid, double radius, double max_modulus = 1.0) {
  std::vector<Complex> v(grid.size());
  for (std::size_t i : grid.indices_in(-radius, radius)) v[i] = random_complex(rng, max_modulus);
  return GridFunction(grid, std::move(v));
}

/// Sum of `count` random triangular bumps centred in [-spread, spread].
inline GridFunction random_bumps(Rng& rng, const Grid& grid, int count, double spread, double max_height) {
  GridFunction f = GridFunction::zeros(grid);
  for (int i = 0; i < count; ++i)
    f = f + triangular_bump(grid, uniform(rng, -spread, spread), uniform(rng, 0.5, 2.0),
                            random_complex(rng, max_height));
  return f;
}

/// Measure with `count` atoms on grid points of [-radius, radius].
inline AtomicMeasure random_grid_measure(Rng& rng, const Grid& grid, int count, double radius) {
  const auto idx = grid.indices_in(-radius, radius);
  std::vector<Atom> atoms;
  for (int i = 0; i < count; ++i) {
    const auto k = idx[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(idx.size()) - 1))];
    atoms.push_back({grid.point(k), random_complex(rng, 2.0)});
  }
  return AtomicMeasure(std::move(atoms));
}

/// Positive piecewise map with |value| < bound < 1, used as a Segal weight.
inline PiecewiseMap random_contraction(Rng& rng, double bound = 0.95) {
  const long nodes = uniform_int(rng, 1, 5);
  std::vector<double> bps;
  for (long i = 0; i < nodes; ++i) bps.push_back(uniform(rng, -6.0, 6.0));
  std::sort(bps.begin(), bps.end());
  for (std::size_t i = 1; i < bps.size(); ++i)
    if (bps[i] <= bps[i - 1]) bps[i] = bps[i - 1] + 0.25;
  std::vector<double> vals;
  for (long i = 0; i < nodes; ++i) vals.push_back(uniform(rng, -bound, bound));
  return PiecewiseMap(std::move(bps), std::move(vals));
}

}  // namespace lindyn::testing
