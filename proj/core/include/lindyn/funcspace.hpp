// SPDX-License-Identifier: Apache-2.0
//
// Discretised function spaces on the real line: a uniform symmetric grid,
// continuous piecewise-affine maps, homeomorphisms of R, complex grid
// functions, and the sup / L2 / Segal norms.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace lindyn {

using Complex = std::complex<double>;

/// Uniform symmetric grid t_i = -L + i*h, i = 0..2M, with h = 1/s for an
/// integer s and L = M*h, so every integer in [-L, L] is a grid point.
class Grid {
 public:
  Grid(long half_count, int steps_per_unit);

  /// Builds the grid from (L, h); throws unless 1/h and L/h are integers.
  static Grid from_half_width(double half_width, double step);

  double half_width() const { return static_cast<double>(half_count_) / steps_; }
  double step() const { return 1.0 / steps_; }
  int steps_per_unit() const { return steps_; }
  long half_count() const { return half_count_; }
  std::size_t size() const { return static_cast<std::size_t>(2 * half_count_ + 1); }

  double point(std::size_t i) const;
  bool contains(double t) const;

  /// Grid index of t when t is a grid point up to 1e-9 in index units.
  std::optional<std::size_t> index_of(double t) const;
  std::size_t index_of_integer(long m) const;

  /// Integers m with -L <= m <= L, ascending.
  std::vector<long> integers() const;
  /// Indices of grid points in [lo, hi].
  std::vector<std::size_t> indices_in(double lo, double hi) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  long half_count_;
  int steps_;
};

/// Continuous piecewise-affine real map with constant tails: value v_0 for
/// t <= b_0, v_m for t >= b_m, affine in between.
class PiecewiseMap {
 public:
  PiecewiseMap(std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseMap constant(double value);
  /// Value a for t <= t0, b for t >= t1, affine on [t0, t1].
  static PiecewiseMap ramp(double t0, double a, double t1, double b);

  double operator()(double t) const;

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  double left_tail() const { return values_.front(); }
  double right_tail() const { return values_.back(); }

  // Extremes over R are attained at nodes.
  double min_value() const;
  double max_value() const;
  bool is_positive() const { return min_value() > 0.0; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

enum class Direction { Forward, Inverse };

/// Homeomorphism of R: a translation, or a strictly monotone
/// piecewise-affine bijection with affine tails.
class Homeo {
 public:
  static Homeo translation(double shift);
  /// Nodes (b_i, v_i) with strictly monotone v; the tails continue with the
  /// given slopes, which must carry the same sign as the interior slopes.
  static Homeo piecewise_affine(std::vector<double> breakpoints, std::vector<double> values,
                                double left_slope, double right_slope);
  static Homeo identity();

  double forward(double t) const;
  double inverse(double t) const;
  double apply(double t, Direction direction) const {
    return direction == Direction::Forward ? forward(t) : inverse(t);
  }
  /// alpha^n(t) for any integer n (negative n iterates the inverse).
  double iterate(double t, long n) const;

  Homeo inverted() const;

  bool is_translation() const { return std::holds_alternative<Translation>(rep_); }
  std::optional<double> shift() const;
  /// True for a translation by an integer multiple of the grid step.
  bool is_grid_shift(const Grid& grid) const;

  struct Translation {
    double shift;
  };
  struct PiecewiseAffine {
    std::vector<double> breakpoints;
    std::vector<double> values;
    double left_slope;
    double right_slope;
  };
  const std::variant<Translation, PiecewiseAffine>& representation() const { return rep_; }

 private:
  explicit Homeo(std::variant<Translation, PiecewiseAffine> rep) : rep_(std::move(rep)) {}
  std::variant<Translation, PiecewiseAffine> rep_;
};

/// Smallest N with K ∩ alpha^n(K) = ∅ for K = [-m, m]. Exact for translations;
/// for piecewise-affine maps the first empirically disjoint n <= horizon, or
/// nullopt when none is found.
std::optional<long> aperiodicity_bound(const Homeo& alpha, double m, long horizon = 100000);

/// Complex function sampled on a grid. The truncated flag records that mass
/// was pushed off the grid by some operation that produced it.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<Complex> values, bool truncated = false);

  static GridFunction zeros(const Grid& grid);
  static GridFunction sample(const Grid& grid, const std::function<Complex(double)>& fn);
  static GridFunction from_map(const Grid& grid, const PiecewiseMap& map);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex at_integer(long m) const { return values_[grid_.index_of_integer(m)]; }
  bool truncated() const { return truncated_; }
  GridFunction with_truncated(bool truncated) const;

  /// Indices with a non-zero value.
  std::vector<std::size_t> support() const;
  bool is_zero() const;

  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;
  GridFunction operator*(Complex scalar) const;
  friend GridFunction operator*(Complex scalar, const GridFunction& f) { return f * scalar; }

 private:
  Grid grid_;
  std::vector<Complex> values_;
  bool truncated_ = false;
};

/// Triangular bump of the given height, supported on [center - half_width,
/// center + half_width].
GridFunction triangular_bump(const Grid& grid, double center, double half_width,
                             Complex height = 1.0);

/// Off-grid read: exact at grid points, affine between neighbours, 0 outside
/// [-L, L]. Sets *outside when t is off the grid.
Complex linear_interpolate(const GridFunction& f, double t, bool* outside = nullptr);

/// Multiplication by the characteristic function of the index set.
GridFunction restrict_to(const GridFunction& f, std::span<const std::size_t> mask);

struct SupNorm {};
struct L2Norm {};
struct SegalNorm {
  PiecewiseMap tau;
  double tail_tol = 1e-9;
};
using NormKind = std::variant<SupNorm, L2Norm, SegalNorm>;

double sup_norm(const GridFunction& f);
double l2_norm(const GridFunction& f);
/// sum_k max_{supp f} |f tau^k|, truncated once a certified geometric tail
/// bound drops below tail_tol. Throws DivergentSegalNorm when sup |tau| >= 1
/// on the support of f.
double segal_norm(const GridFunction& f, const PiecewiseMap& tau, double tail_tol);
/// The same series for point moduli |f_i| and ratios |tau_i| < 1.
double segal_series(std::vector<double> moduli, const std::vector<double>& ratios, double tail_tol);
double norm(const GridFunction& f, const NormKind& kind);

/// h * sum f conj(g).
Complex l2_inner(const GridFunction& f, const GridFunction& g);

void require_same_grid(const GridFunction& a, const GridFunction& b);

}  // namespace lindyn
