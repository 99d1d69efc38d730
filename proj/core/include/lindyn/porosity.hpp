// SPDX-License-Identifier: Apache-2.0
//
// Sets of functions bounded below at the integers, the explicit functions
// that refill balls around them, an evidence-grade porosity probe, and the
// lower bound for orbits started inside such a set.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/funcspace.hpp"
#include "lindyn/operator.hpp"

namespace lindyn {

/// {f : |f(m)| >= g(m) at every integer m of the grid}, g >= 0.
struct GammaSet {
  explicit GammaSet(GridFunction g);
  GridFunction g;
  double at(long m) const { return g.at_integer(m).real(); }
};

/// Membership with a relative slack of 16 ulp, so points constructed on the
/// boundary are not rejected for rounding.
bool gamma_membership(const GridFunction& f, const GammaSet& set);

/// Raises |f(m)| to g(m) wherever it falls short, by adding unit tents at
/// the offending integers along the phase of f(m).
GridFunction gamma_projection(const GridFunction& f, const GammaSet& set);

struct PorosityParams {
  double lambda = 0.5;  // (0, 1/2]
  double beta = 0.25;   // (0, lambda)
  double delta = 0.0;   // (0, r / 100)
  double r_tilde = 1.0;
  double r = 0.0;       // (0, r_tilde - |k - f|)
  long N = 1;

  /// Throws PreconditionViolated naming the first failing inequality.
  void validate(double k_to_f) const;
};

/// Smallest N >= 1 with |k|, |f|, g / beta < r / 6 on every grid point |t| >= N.
long choose_N(const GridFunction& f, const GridFunction& k, const GridFunction& g, double beta, double r);

/// g + delta on [-N, N], g / beta outside [-N-1, N+1], affine in between.
GridFunction build_h(const GridFunction& g, long N, double delta, double beta);

struct ScriptEResult {
  GridFunction e;
  double modulus_gap;     // max over inner integers of ||e(m)| - |k(m)| - delta|
  bool in_gamma_h;
  double distance_to_f;   // ||e - f||_inf
  bool holds(double r_tilde, double tol = 1e-12) const {
    return modulus_gap <= tol && in_gamma_h && distance_to_f < r_tilde;
  }
};

/// k + delta * (phase of k, interpolated) on [-N, N], h outside [-N-1, N+1],
/// affine bridges. The three contracts are measured, not assumed.
ScriptEResult build_script_E(const GridFunction& k, const GridFunction& f, const GridFunction& h,
                             const PorosityParams& params);

struct GammaResult {
  GridFunction gamma;
  double distance_to_v;   // ||gamma - v||_inf
  double u_to_v;          // ||u - v||_inf
  bool in_gamma_g;
  bool holds(double beta) const { return in_gamma_g && distance_to_v <= beta * u_to_v * (1.0 + 1e-12); }
};

/// v on [-N, N], v + beta |u - v| (phase of v, interpolated) outside
/// [-N-1, N+1], affine bridges. Requires u in Gamma_h and
/// |u - v| <= min(delta, lambda (r_tilde - |f - u|)).
GammaResult build_gamma(const GridFunction& u, const GridFunction& v, const GridFunction& f,
                        const GammaSet& g_set, const GridFunction& h, const PorosityParams& params);

/// g(t) = scale * exp(-|t|), the default lower bound for scenes.
GridFunction decaying_g(const Grid& grid, double scale = 0.5);

/// f, its projection k onto Gamma_g, and parameters filled by the defaults
/// r = (r_tilde - |k - f|) / 2, delta = r / 200, N = choose_N(f, k, g, beta, r).
struct ConstructionScene {
  GridFunction f;
  GridFunction k;
  GammaSet g;
  PorosityParams params;
};
ConstructionScene make_construction_scene(GridFunction f, GammaSet g, double r_tilde = 1.0, double lambda = 0.5,
                                double beta = 0.25);

struct SceneRun {
  GridFunction h;
  ScriptEResult script_e;
  GammaResult gamma;
  bool holds;  // every posted inequality of the three constructions
};
/// h, then E from (k, f), then gamma for u = E and v = u + fraction * r' * direction
/// (direction scaled to unit sup norm, fraction in [0, 1]).
SceneRun run_construction_scene(const ConstructionScene& scene, const GridFunction& direction, double fraction);

using MembershipOracle = std::function<bool(const GridFunction&)>;

struct ProbeSample {
  std::uint64_t seed;
  bool y_found;      // no sampled member in B(y, lambda d)
  double d;          // |x - y|_inf
  std::size_t inner_hits;
};

struct ProbeReport {
  std::vector<ProbeSample> samples;
  std::optional<GridFunction> witness;  // first y with an empty sampled ball
};

struct ProbeOptions {
  double lambda = 0.5;
  double delta = 0.1;
  std::size_t outer = 256;
  std::size_t inner = 256;
  std::uint64_t seed = 0;
};

/// Samples centres y in B(x, delta) \ {x} and, for each, points of
/// B(y, lambda |x - y|), asking the oracle about each. NONE (no witness) is
/// evidence against porosity at x, never a proof.
ProbeReport porosity_probe(const MembershipOracle& oracle, const GridFunction& x, const ProbeOptions& options);

struct CorollaryG {
  GammaSet set;
  bool decays;          // last node value below 1e-6
  std::string warning;  // empty when decays
};

/// Piecewise-linear g through (n, 1 / prod_{k=1}^{n} w(alpha^{-k} n)) for
/// integers n >= 1 on the grid, g(t) = t g(1) on [0, 1], g = 0 for t <= 0.
CorollaryG corollary_g(const CompositionOperator& op, const Grid& grid);

/// min over 1 <= n <= N of ||T^n f||_inf. Throws PreconditionViolated unless f
/// belongs to the set.
double corollary_check(const CompositionOperator& op, const GammaSet& set, const GridFunction& f, long N);

}  // namespace lindyn
