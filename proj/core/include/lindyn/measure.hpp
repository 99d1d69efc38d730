// SPDX-License-Identifier: Apache-2.0
//
// Finitely atomic complex measures on R with the total variation norm, and
// the adjoint action of a weighted composition operator on them.
#pragma once

#include <optional>
#include <vector>

#include "lindyn/criteria.hpp"
#include "lindyn/funcspace.hpp"
#include "lindyn/operator.hpp"

namespace lindyn {

struct Atom {
  double x;
  Complex c;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// sum_i c_i delta_{x_i}, kept canonical: locations strictly increasing,
/// coincident atoms merged, zero weights dropped.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);
  static AtomicMeasure dirac(double x, Complex c = 1.0) { return AtomicMeasure({{x, c}}); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double tv_norm() const;
  /// Weight at x, 0 when x carries no atom.
  Complex mass_at(double x) const;

  AtomicMeasure operator+(const AtomicMeasure& other) const;
  AtomicMeasure operator-(const AtomicMeasure& other) const;
  AtomicMeasure operator*(Complex scalar) const;
  /// Drops the atoms at the given locations.
  AtomicMeasure without(const std::vector<double>& locations) const;

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  std::vector<Atom> atoms_;
};

inline double tv_norm(const AtomicMeasure& mu) { return mu.tv_norm(); }

/// mu o alpha^{-1}: every atom moved from x to alpha(x).
AtomicMeasure pushforward(const AtomicMeasure& mu, const Homeo& alpha);

/// T* (c delta_x) = c w(x) delta_{alpha(x)}, iterated in cocycle form.
AtomicMeasure adjoint_apply(const CompositionOperator& op, const AtomicMeasure& mu, long n = 1);
/// S* (c delta_x) = c / w(alpha^{-1} x) delta_{alpha^{-1}(x)}, iterated likewise.
AtomicMeasure adjoint_apply_inverse(const CompositionOperator& op, const AtomicMeasure& mu, long n = 1);

/// |<Tf, mu> - <f, T* mu>| for atoms on grid points, with <f, mu> = sum c_i f(x_i).
double duality_gap(const CompositionOperator& op, const GridFunction& f, const AtomicMeasure& mu);
bool duality_check(const CompositionOperator& op, const GridFunction& f, const AtomicMeasure& mu,
                   double tol = 1e-12);

struct AdjointOptions {
  long horizon = 200;
  double tol = 1e-6;
  /// Total variation that may be trimmed at the k-th record is budget * 2^{-k}.
  double atom_trim_budget = 0.0;
};

/// Criterion on measures: the forward leg runs over the atoms of mu, the
/// backward leg over the atoms of nu. Both must sit inside [lo, hi].
CriterionVerdict adjoint_criterion(CriterionKind kind, const CompositionOperator& op,
                                   const AtomicMeasure& mu, const AtomicMeasure& nu, double lo,
                                   double hi, const AdjointOptions& options = {});

struct MeasureApproximant {
  AtomicMeasure eta;
  double lambda;
  long n;
};

/// eta = mu~ + sqrt(|T*^n mu~| / |S*^n nu~|) S*^n nu~ and lambda the reciprocal
/// square root of that ratio, where mu~ and nu~ drop the trimmed atoms.
MeasureApproximant measure_approximant(const CompositionOperator& op, const AtomicMeasure& mu,
                                       const AtomicMeasure& nu, long n,
                                       const std::vector<double>& mu_trim = {},
                                       const std::vector<double>& nu_trim = {});

}  // namespace lindyn
