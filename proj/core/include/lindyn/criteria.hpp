// SPDX-License-Identifier: Apache-2.0
//
// Finite-horizon evaluation of the weight-product criteria. Each criterion
// reduces to a scalar q(n) built from sups of cocycles over a compact window;
// a criterion holds along a sequence n_k when q(n_k) -> 0. Up to a horizon N
// we can only observe that q reached a tolerance, and the verdict says so.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lindyn/funcspace.hpp"
#include "lindyn/operator.hpp"

namespace lindyn {

enum class CriterionKind {
  SupercyclicSolid,
  CesaroSolid,
  SupercyclicSegal,
  CesaroSegal,
  SupercyclicC0,
  CesaroC0,
  HypercyclicSolid,
  AdjointSuper,
  AdjointCesaro,
};

std::string_view to_string(CriterionKind kind);
std::optional<CriterionKind> parse_criterion_kind(std::string_view name);
bool is_cesaro(CriterionKind kind);
bool is_adjoint(CriterionKind kind);

enum class Status { Satisfied, NotSatisfiedUpToHorizon };
std::string_view to_string(Status status);

/// Grid points of [lo, hi]. A Segal bound eps asserts |tau| <= eps there.
struct CompactWindow {
  CompactWindow(Grid grid, double lo, double hi, std::optional<double> segal_bound = std::nullopt);
  static CompactWindow symmetric(const Grid& grid, double m) { return CompactWindow(grid, -m, m); }

  Grid grid;
  double lo;
  double hi;
  std::optional<double> segal_bound;

  std::vector<std::size_t> indices() const { return grid.indices_in(lo, hi); }
  std::vector<double> points() const;
};

/// Removes up to max_points worst grid points of the window at each n.
/// Only meaningful for the L2-backed kinds; 0 disables trimming.
struct TrimPolicy {
  std::size_t max_points = 0;
};

struct EvalOptions {
  long horizon = 200;
  double tol = 1e-6;
  TrimPolicy trim;
  std::optional<PiecewiseMap> tau;  // required by the Segal kinds
  double segal_tol = 1e-12;
};

struct WitnessPoint {
  long n;
  double q;
};

struct TrimRecord {
  long n;
  std::size_t dropped;
  double removed_mass;
  std::vector<std::size_t> indices;  // positions within the evaluated point list
};

struct CriterionVerdict {
  std::string label;
  CriterionKind kind;
  Status status = Status::NotSatisfiedUpToHorizon;
  std::vector<WitnessPoint> witness;  // record minima, q strictly decreasing
  std::vector<double> trace;          // q(n) for n = 1..horizon
  std::vector<double> log_trace;
  long horizon = 0;
  double tol = 0.0;
  std::vector<TrimRecord> trims;

  bool satisfied() const { return status == Status::Satisfied; }
  double min_q() const { return witness.empty() ? INFINITY : witness.back().q; }
  /// First n at which q <= tol, if any.
  std::optional<long> first_hit() const;
};

struct ProductFactors {
  double p_minus;  // sup_K prod_{j=0}^{n-1} 1 / w(alpha^j t)
  double p_plus;   // sup_K prod_{j=1}^{n} w(alpha^{-j} t)
};
ProductFactors product_factors(const CompositionOperator& op, const CompactWindow& window, long n);

struct SegalFactors {
  double q_back;  // sup_K prod_{j=0}^{n-1} w(alpha^{j-n} t)
  double q_inv;   // sup_K prod_{j=0}^{n-1} 1 / w(alpha^j t)
};
/// Throws SegalIncompatible unless tau o alpha = tau on the grid, and
/// PreconditionViolated when |tau| exceeds the window's Segal bound.
SegalFactors segal_factors(const CompositionOperator& op, const CompactWindow& window, long n,
                           const PiecewiseMap& tau, double tol = 1e-12);

CriterionVerdict evaluate(CriterionKind kind, const CompositionOperator& op,
                          const CompactWindow& window, const EvalOptions& options = {});

/// q(n) for a single n (the same value evaluate() reports at n).
double quantity(CriterionKind kind, const CompositionOperator& op, const CompactWindow& window,
                long n, const EvalOptions& options = {});

struct ImplicationReport {
  bool cesaro_satisfied = false;
  bool super_satisfied = false;
  std::optional<long> cesaro_hit;
  std::vector<long> violations;  // n where q_cesaro <= 1 but q_super > q_cesaro^2
  bool violated = false;
};
/// Checks that the Cesaro criterion never holds without the supercyclic one.
ImplicationReport implication_check(const CompositionOperator& op, const CompactWindow& window,
                                    long horizon, double tol);

/// Supercyclic-type product over [-m, m] that controls the induced maps on
/// compact operators.
CriterionVerdict wedge_condition(const CompositionOperator& op, const Grid& grid, long m,
                                 long horizon, double tol);

/// The solid kinds for a weighted shift on basis vectors e_j, j in [a, b]:
/// the first leg is ||S^n e_j||, the second ||T^n e_j||, each maximised over j.
CriterionVerdict evaluate_shift(CriterionKind kind, const BilateralShift& shift, long a, long b,
                                long horizon, double tol);

/// Generic verdict engine over an arbitrary finite point set. For each point
/// i and n = 1..horizon the caller supplies two log legs; q(n) combines the
/// per-n sups of the legs according to the kind.
struct LegTable {
  std::vector<std::vector<double>> first;   // [point][n-1]
  std::vector<std::vector<double>> second;  // [point][n-1]
};

struct TrimBudget {
  std::vector<double> mass;                                  // cost of dropping each point
  std::function<double(long n, std::size_t records)> cap;    // mass that may go at step n
  std::function<double(double dropped_mass)> report;         // mass recorded in the trim log
};

double combine_legs(CriterionKind kind, double first, double second, long n);

CriterionVerdict assemble_verdict(CriterionKind kind, std::string label, const LegTable& legs,
                                  long horizon, double tol, const TrimBudget* trim = nullptr);

}  // namespace lindyn
