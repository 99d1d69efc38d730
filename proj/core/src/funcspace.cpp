// SPDX-License-Identifier: Apache-2.0
#include "lindyn/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lindyn/error.hpp"

namespace lindyn {

namespace {

constexpr double kSnap = 1e-9;  // in index units

bool strictly_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) return false;
  return true;
}

bool all_finite(const std::vector<double>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

// Affine interpolation on nodes (xs, ys), xs strictly increasing, x inside.
double interpolate_nodes(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  if (x == xs[i] || i + 1 == xs.size()) return ys[i];
  return ys[i] + (x - xs[i]) / (xs[i + 1] - xs[i]) * (ys[i + 1] - ys[i]);
}

}  // namespace

// ---------------------------------------------------------------- Grid

Grid::Grid(long half_count, int steps_per_unit) : half_count_(half_count), steps_(steps_per_unit) {
  if (half_count < 1 || steps_per_unit < 1)
    fail(ErrorCode::InvalidArgument, "grid needs half_count >= 1 and steps_per_unit >= 1");
}

Grid Grid::from_half_width(double half_width, double step) {
  if (!(half_width > 0.0) || !(step > 0.0) || !std::isfinite(half_width))
    fail(ErrorCode::InvalidArgument, "grid needs L > 0 and h > 0");
  const double inv = 1.0 / step;
  const double s = std::round(inv);
  if (s < 1.0 || std::abs(inv - s) > kSnap * s)
    fail(ErrorCode::InvalidArgument, "1/h must be a positive integer, got h = " + std::to_string(step));
  const double m = half_width * s;
  const double mr = std::round(m);
  if (std::abs(m - mr) > kSnap * std::max(1.0, mr))
    fail(ErrorCode::InvalidArgument, "L/h must be an integer, got L = " + std::to_string(half_width));
  return Grid(static_cast<long>(mr), static_cast<int>(s));
}

double Grid::point(std::size_t i) const {
  return static_cast<double>(static_cast<long>(i) - half_count_) / steps_;
}

bool Grid::contains(double t) const { return std::abs(t) * steps_ <= half_count_ + kSnap; }

std::optional<std::size_t> Grid::index_of(double t) const {
  const double x = t * steps_ + static_cast<double>(half_count_);
  const double r = std::round(x);
  if (std::abs(x - r) > kSnap || r < 0.0 || r > 2.0 * half_count_) return std::nullopt;
  return static_cast<std::size_t>(r);
}

std::size_t Grid::index_of_integer(long m) const {
  const long idx = m * steps_ + half_count_;
  if (idx < 0 || idx > 2 * half_count_)
    fail(ErrorCode::GridMismatch, "integer " + std::to_string(m) + " is off the grid");
  return static_cast<std::size_t>(idx);
}

std::vector<long> Grid::integers() const {
  const long top = half_count_ / steps_;
  std::vector<long> out;
  out.reserve(static_cast<std::size_t>(2 * top + 1));
  for (long m = -top; m <= top; ++m) out.push_back(m);
  return out;
}

std::vector<std::size_t> Grid::indices_in(double lo, double hi) const {
  const double first = std::ceil(lo * steps_ + half_count_ - kSnap);
  const double last = std::floor(hi * steps_ + half_count_ + kSnap);
  std::vector<std::size_t> out;
  for (double i = std::max(0.0, first); i <= std::min(last, 2.0 * half_count_); i += 1.0)
    out.push_back(static_cast<std::size_t>(i));
  return out;
}

// ---------------------------------------------------------------- PiecewiseMap

PiecewiseMap::PiecewiseMap(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size())
    fail(ErrorCode::InvalidArgument, "piecewise map needs matching, non-empty breakpoints and values");
  if (!strictly_increasing(breakpoints_))
    fail(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
  if (!all_finite(breakpoints_) || !all_finite(values_))
    fail(ErrorCode::InvalidArgument, "piecewise map has non-finite entries");
}

PiecewiseMap PiecewiseMap::constant(double value) { return PiecewiseMap({0.0}, {value}); }

PiecewiseMap PiecewiseMap::ramp(double t0, double a, double t1, double b) {
  return PiecewiseMap({t0, t1}, {a, b});
}

double PiecewiseMap::operator()(double t) const {
  if (t <= breakpoints_.front()) return values_.front();
  if (t >= breakpoints_.back()) return values_.back();
  return interpolate_nodes(breakpoints_, values_, t);
}

double PiecewiseMap::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double PiecewiseMap::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

// ---------------------------------------------------------------- Homeo

Homeo Homeo::translation(double shift) {
  if (!(shift != 0.0) || !std::isfinite(shift))
    fail(ErrorCode::NonInvertible, "translation shift must be finite and non-zero");
  return Homeo(Translation{shift});
}

Homeo Homeo::piecewise_affine(std::vector<double> breakpoints, std::vector<double> values,
                              double left_slope, double right_slope) {
  if (breakpoints.empty() || breakpoints.size() != values.size())
    fail(ErrorCode::InvalidArgument, "homeomorphism needs matching, non-empty nodes");
  if (!strictly_increasing(breakpoints))
    fail(ErrorCode::InvalidArgument, "homeomorphism breakpoints must be strictly increasing");
  if (!all_finite(breakpoints) || !all_finite(values) || !std::isfinite(left_slope) ||
      !std::isfinite(right_slope))
    fail(ErrorCode::InvalidArgument, "homeomorphism has non-finite entries");
  const bool increasing = left_slope > 0.0;
  auto ok = [&](double slope) { return increasing ? slope > 0.0 : slope < 0.0; };
  if (left_slope == 0.0 || !ok(right_slope))
    fail(ErrorCode::NonInvertible, "tail slopes must be non-zero with a common sign");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!ok(values[i] - values[i - 1]))
      fail(ErrorCode::NonInvertible, "homeomorphism is not strictly monotone at node " + std::to_string(i));
  return Homeo(PiecewiseAffine{std::move(breakpoints), std::move(values), left_slope, right_slope});
}

Homeo Homeo::identity() { return piecewise_affine({0.0}, {0.0}, 1.0, 1.0); }

double Homeo::forward(double t) const {
  if (const auto* tr = std::get_if<Translation>(&rep_)) return t + tr->shift;
  const auto& p = std::get<PiecewiseAffine>(rep_);
  if (t <= p.breakpoints.front()) return p.values.front() + p.left_slope * (t - p.breakpoints.front());
  if (t >= p.breakpoints.back()) return p.values.back() + p.right_slope * (t - p.breakpoints.back());
  return interpolate_nodes(p.breakpoints, p.values, t);
}

double Homeo::inverse(double t) const {
  if (const auto* tr = std::get_if<Translation>(&rep_)) return t - tr->shift;
  const auto& p = std::get<PiecewiseAffine>(rep_);
  const bool increasing = p.left_slope > 0.0;
  const double lo = increasing ? p.values.front() : p.values.back();
  const double hi = increasing ? p.values.back() : p.values.front();
  if (increasing) {
    if (t <= lo) return p.breakpoints.front() + (t - lo) / p.left_slope;
    if (t >= hi) return p.breakpoints.back() + (t - hi) / p.right_slope;
    return interpolate_nodes(p.values, p.breakpoints, t);
  }
  if (t <= lo) return p.breakpoints.back() + (t - lo) / p.right_slope;
  if (t >= hi) return p.breakpoints.front() + (t - hi) / p.left_slope;
  std::vector<double> xs(p.values.rbegin(), p.values.rend());
  std::vector<double> ys(p.breakpoints.rbegin(), p.breakpoints.rend());
  return interpolate_nodes(xs, ys, t);
}

double Homeo::iterate(double t, long n) const {
  for (long j = 0; j < n; ++j) t = forward(t);
  for (long j = 0; j > n; --j) t = inverse(t);
  return t;
}

Homeo Homeo::inverted() const {
  if (const auto* tr = std::get_if<Translation>(&rep_)) return translation(-tr->shift);
  const auto& p = std::get<PiecewiseAffine>(rep_);
  if (p.left_slope > 0.0) return piecewise_affine(p.values, p.breakpoints, 1.0 / p.left_slope, 1.0 / p.right_slope);
  std::vector<double> xs(p.values.rbegin(), p.values.rend());
  std::vector<double> ys(p.breakpoints.rbegin(), p.breakpoints.rend());
  return piecewise_affine(std::move(xs), std::move(ys), 1.0 / p.right_slope, 1.0 / p.left_slope);
}

std::optional<double> Homeo::shift() const {
  if (const auto* tr = std::get_if<Translation>(&rep_)) return tr->shift;
  return std::nullopt;
}

bool Homeo::is_grid_shift(const Grid& grid) const {
  const auto c = shift();
  if (!c) return false;
  const double steps = *c * grid.steps_per_unit();
  return std::abs(steps - std::round(steps)) <= 1e-12 * std::max(1.0, std::abs(steps));
}

std::optional<long> aperiodicity_bound(const Homeo& alpha, double m, long horizon) {
  if (!(m >= 0.0)) fail(ErrorCode::InvalidArgument, "window half-width must be >= 0");
  if (const auto c = alpha.shift()) return static_cast<long>(std::floor(2.0 * m / std::abs(*c))) + 1;
  double a = -m;
  double b = m;
  for (long n = 1; n <= horizon; ++n) {
    a = alpha.forward(a);
    b = alpha.forward(b);
    if (std::max(a, b) < -m || std::min(a, b) > m) return n;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- GridFunction

GridFunction::GridFunction(Grid grid, std::vector<Complex> values, bool truncated)
    : grid_(grid), values_(std::move(values)), truncated_(truncated) {
  if (values_.size() != grid_.size())
    fail(ErrorCode::GridMismatch, "value count " + std::to_string(values_.size()) +
                                      " does not match grid size " + std::to_string(grid_.size()));
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorCode::InvalidArgument, "grid function has non-finite values");
}

GridFunction GridFunction::zeros(const Grid& grid) {
  return GridFunction(grid, std::vector<Complex>(grid.size()));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<Complex(double)>& fn) {
  std::vector<Complex> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.point(i));
  return GridFunction(grid, std::move(values));
}

GridFunction GridFunction::from_map(const Grid& grid, const PiecewiseMap& map) {
  return sample(grid, [&](double t) { return Complex(map(t)); });
}

GridFunction GridFunction::with_truncated(bool truncated) const {
  GridFunction out = *this;
  out.truncated_ = truncated;
  return out;
}

std::vector<std::size_t> GridFunction::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != Complex{}) out.push_back(i);
  return out;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](Complex v) { return v == Complex{}; });
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  require_same_grid(*this, other);
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + other.values_[i];
  return GridFunction(grid_, std::move(out), truncated_ || other.truncated_);
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  require_same_grid(*this, other);
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] - other.values_[i];
  return GridFunction(grid_, std::move(out), truncated_ || other.truncated_);
}

GridFunction GridFunction::operator*(Complex scalar) const {
  std::vector<Complex> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scalar * values_[i];
  return GridFunction(grid_, std::move(out), truncated_);
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) fail(ErrorCode::GridMismatch, "functions live on different grids");
}

GridFunction triangular_bump(const Grid& grid, double center, double half_width, Complex height) {
  if (!(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "bump half-width must be positive");
  return GridFunction::sample(grid, [&](double t) {
    return height * std::max(0.0, 1.0 - std::abs(t - center) / half_width);
  });
}

Complex linear_interpolate(const GridFunction& f, double t, bool* outside) {
  const Grid& grid = f.grid();
  const double x = t * grid.steps_per_unit() + static_cast<double>(grid.half_count());
  const double top = 2.0 * grid.half_count();
  if (!(x >= -kSnap && x <= top + kSnap)) {
    if (outside) *outside = true;
    return {};
  }
  const double r = std::round(x);
  if (std::abs(x - r) <= kSnap) return f[static_cast<std::size_t>(r)];
  const auto i = static_cast<std::size_t>(std::floor(x));
  const double frac = x - std::floor(x);
  return f[i] + frac * (f[i + 1] - f[i]);
}

GridFunction restrict_to(const GridFunction& f, std::span<const std::size_t> mask) {
  std::vector<Complex> out(f.size());
  for (std::size_t i : mask) {
    if (i >= f.size()) fail(ErrorCode::InvalidArgument, "mask index out of range");
    out[i] = f[i];
  }
  return GridFunction(f.grid(), std::move(out), f.truncated());
}

// ---------------------------------------------------------------- norms

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const GridFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(f.grid().step() * s);
}

double segal_series(std::vector<double> mod, const std::vector<double>& ratio, double tail_tol) {
  if (!(tail_tol > 0.0)) fail(ErrorCode::InvalidArgument, "tail_tol must be positive");
  if (mod.size() != ratio.size()) fail(ErrorCode::InvalidArgument, "moduli and ratios differ in length");
  double ratio_max = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < mod.size(); ++i) {
    if (mod[i] == 0.0) continue;
    ratio_max = std::max(ratio_max, ratio[i]);
    sup = std::max(sup, mod[i]);
  }
  if (sup == 0.0) return 0.0;
  if (ratio_max >= 1.0)
    fail(ErrorCode::DivergentSegalNorm,
         "sup |tau| on the support is " + std::to_string(ratio_max) + " >= 1");
  double total = 0.0;
  double tail = sup / (1.0 - ratio_max);  // after term k the rest is at most tail * s^{k+1}
  for (;;) {
    total += *std::max_element(mod.begin(), mod.end());
    tail *= ratio_max;
    if (tail <= tail_tol) break;
    for (std::size_t i = 0; i < mod.size(); ++i) mod[i] *= ratio[i];
  }
  return total;
}

double segal_norm(const GridFunction& f, const PiecewiseMap& tau, double tail_tol) {
  std::vector<double> mod;
  std::vector<double> ratio;
  for (std::size_t i : f.support()) {
    mod.push_back(std::abs(f[i]));
    ratio.push_back(std::abs(tau(f.grid().point(i))));
  }
  return segal_series(std::move(mod), ratio, tail_tol);
}

double norm(const GridFunction& f, const NormKind& kind) {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SupNorm>) return sup_norm(f);
        else if constexpr (std::is_same_v<K, L2Norm>) return l2_norm(f);
        else return segal_norm(f, k.tau, k.tail_tol);
      },
      kind);
}

Complex l2_inner(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  Complex s{};
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return f.grid().step() * s;
}

}  // namespace lindyn
