// SPDX-License-Identifier: Apache-2.0
//
// Orbits of grid functions under a composition operator, distances up to a
// scalar, and the explicit approximants behind the product criteria.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lindyn/funcspace.hpp"
#include "lindyn/operator.hpp"

namespace lindyn {

struct ProjectiveFit {
  double distance;
  Complex lambda;
};

/// min over complex lambda of ||lambda f - g||. Closed form in L2; for the
/// sup and Segal norms a nested golden-section search in (Re, Im), which is
/// exact up to the tolerance because the objective is convex in lambda.
ProjectiveFit projective_distance(const GridFunction& f, const GridFunction& g, const NormKind& kind,
                                  double tol = 1e-10);

struct OrbitSample {
  long n;
  double norm;         // ||T^n f||
  double cesaro_norm;  // ||T^n f|| / n
  std::optional<double> scaled_distance;
  bool truncated;
};

struct OrbitTrace {
  NormKind kind;
  std::vector<OrbitSample> samples;
};

OrbitTrace orbit_trace(const CompositionOperator& op, const GridFunction& f, long horizon,
                       const NormKind& kind, const std::optional<GridFunction>& target = std::nullopt);

struct Approximant {
  GridFunction v;
  double lambda;
  long n;
};

/// v = f chi + sqrt(|T^n(f chi)| / |S^n(g chi)|) S^n(g chi), lambda = the
/// reciprocal square root of that ratio, chi the indicator of mask.
Approximant supercyclic_approximant(const CompositionOperator& op, const GridFunction& f,
                                    const GridFunction& g, long n, std::span<const std::size_t> mask,
                                    const NormKind& kind);

/// v = f chi + n S^n(g chi) with lambda = 1/n.
Approximant cesaro_approximant(const CompositionOperator& op, const GridFunction& f,
                               const GridFunction& g, long n, std::span<const std::size_t> mask,
                               const NormKind& kind);

/// The supercyclic construction measured in the Segal norm of tau, without
/// a mask; requires tau o alpha = tau.
Approximant segal_approximant(const CompositionOperator& op, const GridFunction& f,
                              const GridFunction& g, long n, const PiecewiseMap& tau,
                              double tail_tol = 1e-12);

enum class ProbeMode { Plain, Scaled, Cesaro };

struct BestHit {
  std::size_t target;
  long n;
  double distance;
};

/// Per target, the n <= horizon minimising ||T^n f - g||, the projective
/// distance of T^n f to g, or ||T^n f / n - g||.
std::vector<BestHit> empirical_best(const CompositionOperator& op, const GridFunction& f,
                                    const std::vector<GridFunction>& targets, long horizon,
                                    const NormKind& kind, ProbeMode mode);

}  // namespace lindyn
