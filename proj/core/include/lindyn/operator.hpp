// SPDX-License-Identifier: Apache-2.0
//
// Weighted composition operators f -> w * (f o alpha) on grid functions, their
// inverses, weight cocycles, and bilateral weighted shifts on sequences.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "lindyn/funcspace.hpp"

namespace lindyn {

/// Product of many positive factors kept as mantissa * 2^exponent, so long
/// cocycles neither overflow nor underflow. Rescaling is by exact powers of
/// two, which keeps every partial product bit-identical to plain arithmetic.
class ScaledProduct {
 public:
  void multiply(double x) {
    mantissa_ *= x;
    normalize();
  }
  void divide(double x) {
    mantissa_ /= x;
    normalize();
  }
  double log() const { return std::log(mantissa_) + static_cast<double>(exponent_) * kLn2; }
  double value() const { return std::ldexp(mantissa_, static_cast<int>(exponent_)); }

 private:
  static constexpr double kLn2 = 0.69314718055994530942;
  void normalize() {
    int e = 0;
    mantissa_ = std::frexp(mantissa_, &e);
    exponent_ += e;
  }
  double mantissa_ = 1.0;
  std::int64_t exponent_ = 0;
};

enum class CocycleDirection { Forward, Backward };

/// T f = w * (f o alpha) with w bounded above and away from zero. The
/// inverse S f = (f o alpha^{-1}) / (w o alpha^{-1}) is itself a weighted
/// composition operator; inverse() returns it in the same representation,
/// so every routine below works unchanged on S.
class CompositionOperator {
 public:
  CompositionOperator(Homeo alpha, PiecewiseMap weight);

  const Homeo& alpha() const { return alpha_; }
  const PiecewiseMap& weight() const { return weight_; }
  bool is_inverse() const { return inverse_; }

  /// The operator S = T^{-1}; inverse().inverse() is the original operator.
  CompositionOperator inverse() const;

  /// The map this operator composes with: alpha, or alpha^{-1} for S.
  double step(double t) const { return inverse_ ? alpha_.inverse(t) : alpha_.forward(t); }
  double step_back(double t) const { return inverse_ ? alpha_.forward(t) : alpha_.inverse(t); }
  /// The multiplier of this operator at t (w(t), or 1 / w(alpha^{-1} t) for S).
  double multiplier(double t) const { return inverse_ ? 1.0 / weight_(alpha_.inverse(t)) : weight_(t); }

  GridFunction apply(const GridFunction& f) const { return apply_power(f, 1); }
  GridFunction apply_inverse(const GridFunction& f) const { return apply_inverse_power(f, 1); }
  /// T^n f, from one read of f o alpha^n and one cocycle per grid point.
  GridFunction apply_power(const GridFunction& f, long n) const;
  /// S^n f, likewise.
  GridFunction apply_inverse_power(const GridFunction& f, long n) const;

  /// Forward: prod_{j=0}^{n-1} m(a^j t). Backward: prod_{j=1}^{n} m(a^{-j} t).
  /// Here m and a are multiplier() and step().
  double cocycle(long n, double t, CocycleDirection direction) const;
  double log_cocycle(long n, double t, CocycleDirection direction) const;

  /// log of the forward and backward cocycles at t for n = 1..count, in one
  /// incremental sweep each.
  void log_cocycle_series(double t, long count, std::vector<double>& forward,
                          std::vector<double>& backward) const;

 private:
  ScaledProduct product(long n, double t, CocycleDirection direction) const;
  // Folds m(p) into acc, where next = step(p). Passing next avoids a second
  // evaluation of the homeomorphism for S.
  template <class Acc>
  void fold(Acc& acc, double p, double next) const;

  Homeo alpha_;
  PiecewiseMap weight_;
  bool inverse_ = false;
};

/// max over grid points of |tau(alpha(t)) - tau(t)| <= tol.
bool segal_compatible(const CompositionOperator& op, const PiecewiseMap& tau, const Grid& grid,
                      double tol = 1e-12);

enum class ShiftDirection { Forward, Backward };

/// Weighted shift on sequences indexed by a finite window [lo, hi] of Z.
/// Forward: (Tx)_{j+1} = w_j x_j. Backward is its inverse.
class BilateralShift {
 public:
  BilateralShift(std::function<double(long)> weight, long lo, long hi,
                 ShiftDirection direction = ShiftDirection::Forward);

  double weight(long j) const { return weight_(j); }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  std::size_t size() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }
  ShiftDirection direction() const { return direction_; }

  struct Result {
    std::vector<Complex> values;
    bool truncated = false;
  };
  /// n steps of the shift; coordinates pushed past the window are dropped
  /// and flagged.
  Result apply(const std::vector<Complex>& x, long n) const;

  /// For basis vectors e_j with j in [a, b]:
  /// forward_leg = max_j prod_{i=0}^{n-1} w_{j+i} = max ||T^n e_j||,
  /// backward_leg = max_j prod_{i=1}^{n} 1/w_{j-i} = max ||T^{-n} e_j||.
  struct Factors {
    double forward_leg;
    double backward_leg;
  };
  Factors factors(long a, long b, long n) const;
  /// log of both legs for n = 1..count.
  void log_factor_series(long a, long b, long count, std::vector<double>& forward_leg,
                         std::vector<double>& backward_leg) const;

 private:
  std::function<double(long)> weight_;
  long lo_;
  long hi_;
  ShiftDirection direction_;
};

}  // namespace lindyn
