// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "lindyn/criteria.hpp"
#include "lindyn/error.hpp"
#include "lindyn/operator.hpp"
#include "lindyn/presets.hpp"
#include "oracles.hpp"

namespace lindyn {
namespace {

using testing::Rng;
using testing::uniform;
using testing::uniform_int;

const Grid kGrid = Grid::from_half_width(16.0, 0.25);

CompositionOperator doubling_shift() {
  return CompositionOperator(Homeo::translation(-1.0), PiecewiseMap::constant(2.0));
}

TEST(ApplyTest, IdentityOperator) {
  const CompositionOperator id(Homeo::identity(), PiecewiseMap::constant(1.0));
  const GridFunction f = triangular_bump(kGrid, 0.5, 2.0, Complex(1.0, -2.0));
  EXPECT_EQ(sup_norm(id.apply(f) - f), 0.0);
  EXPECT_EQ(sup_norm(id.apply_inverse(f) - f), 0.0);
}

TEST(ApplyTest, DoublingShiftMovesBumpRight) {
  const GridFunction f = triangular_bump(kGrid, 0.0, 1.0);
  const GridFunction tf = doubling_shift().apply(f);
  EXPECT_EQ(sup_norm(tf - triangular_bump(kGrid, 1.0, 1.0, 2.0)), 0.0);
  EXPECT_EQ(tf.at_integer(1), Complex(2.0));
}

TEST(ApplyTest, HarmonicWeightOnPositiveHalfLine) {
  const GridFunction tf = preset_operator("ex3.8").apply(triangular_bump(kGrid, 0.0, 1.0));
  EXPECT_EQ(tf.at_integer(1), Complex(0.5));
}

TEST(ApplyTest, InverseHalvesAndMovesLeft) {
  const GridFunction sf = doubling_shift().apply_inverse(triangular_bump(kGrid, 1.0, 1.0));
  EXPECT_EQ(sup_norm(sf - triangular_bump(kGrid, 0.0, 1.0, 0.5)), 0.0);
  EXPECT_EQ(sup_norm(doubling_shift().inverse().apply(triangular_bump(kGrid, 1.0, 1.0)) - sf), 0.0);
}

TEST(ApplyTest, PowersOfDoublingShift) {
  const GridFunction f = triangular_bump(kGrid, 0.0, 1.0);
  EXPECT_EQ(sup_norm(doubling_shift().apply_power(f, 0) - f), 0.0);
  EXPECT_EQ(sup_norm(doubling_shift().apply_power(f, 3) - triangular_bump(kGrid, 3.0, 1.0, 8.0)), 0.0);
}

TEST(ApplyTest, TruncationIsFlagged) {
  const GridFunction f = triangular_bump(kGrid, 14.0, 1.0);
  EXPECT_FALSE(doubling_shift().apply_power(f, 1).truncated());
  EXPECT_TRUE(doubling_shift().apply_power(f, 3).truncated());
}

TEST(ApplyTest, NonPositiveWeightIsRejected) {
  EXPECT_THROW(CompositionOperator(Homeo::translation(1.0), PiecewiseMap::ramp(0.0, 1.0, 1.0, 0.0)), Error);
}

TEST(CocycleTest, ClosedForms) {
  EXPECT_DOUBLE_EQ(doubling_shift().cocycle(10, 0.3, CocycleDirection::Forward), 1024.0);
  EXPECT_NEAR(preset_operator("ex3.8").cocycle(5, 0.0, CocycleDirection::Forward), 2.5, 1e-15);
  EXPECT_DOUBLE_EQ(preset_operator("ex3.6").cocycle(3, 0.0, CocycleDirection::Backward), 0.125);
}

TEST(CocycleTest, LongProductsStayFinite) {
  const CompositionOperator op(Homeo::translation(1.0), PiecewiseMap::constant(8.0));
  EXPECT_NEAR(op.log_cocycle(5000, 0.0, CocycleDirection::Forward), 5000.0 * std::log(8.0), 1e-8);
  EXPECT_NEAR(op.inverse().log_cocycle(5000, 0.0, CocycleDirection::Forward), -5000.0 * std::log(8.0), 1e-8);
}

TEST(CocycleTest, SeriesMatchesPointwise) {
  const CompositionOperator op = preset_operator("ex3.7");
  std::vector<double> fwd;
  std::vector<double> bwd;
  op.log_cocycle_series(0.25, 40, fwd, bwd);
  ASSERT_EQ(fwd.size(), 40u);
  for (long n = 1; n <= 40; ++n) {
    EXPECT_DOUBLE_EQ(fwd[n - 1], op.log_cocycle(n, 0.25, CocycleDirection::Forward));
    EXPECT_DOUBLE_EQ(bwd[n - 1], op.log_cocycle(n, 0.25, CocycleDirection::Backward));
  }
}

TEST(CocycleProperty, MatchesBruteForceAndSplits) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const PiecewiseMap w = testing::random_weight(rng);
    const double c = testing::random_grid_shift(rng, kGrid);
    const CompositionOperator op(Homeo::translation(c), w);
    const double t = uniform(rng, -6.0, 6.0);
    const long m = uniform_int(rng, 1, 30);
    const long n = uniform_int(rng, 1, 30);
    const double whole = op.cocycle(m + n, t, CocycleDirection::Forward);
    const double split = op.cocycle(m, t, CocycleDirection::Forward) *
                         op.cocycle(n, op.alpha().iterate(t, m), CocycleDirection::Forward);
    EXPECT_NEAR(whole / split, 1.0, 1e-10);
    const double brute = static_cast<double>(testing::brute_forward_product(w, c, t, n));
    EXPECT_NEAR(op.cocycle(n, t, CocycleDirection::Forward) / brute, 1.0, 1e-12);
    const double back = static_cast<double>(testing::brute_backward_product(w, c, t, n));
    EXPECT_NEAR(op.cocycle(n, t, CocycleDirection::Backward) / back, 1.0, 1e-12);
  }
}

TEST(PowerProperty, ClosedFormEqualsIteration) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const CompositionOperator op(Homeo::translation(testing::random_grid_shift(rng, kGrid)),
                                 testing::random_weight(rng));
    const GridFunction f = testing::random_grid_function(rng, kGrid, 2.0);
    const long n = uniform_int(rng, 1, 5);
    GridFunction iter = f;
    for (long k = 0; k < n; ++k) iter = op.apply(iter);
    const GridFunction closed = op.apply_power(f, n);
    for (std::size_t i = 0; i < closed.size(); ++i) ASSERT_EQ(closed[i], iter[i]);
    // The inverse undoes the power up to rounding in the weight quotients.
    const GridFunction back = op.apply_inverse_power(closed, n);
    EXPECT_LE(sup_norm(back - f), 1e-13 * sup_norm(f));
    // Sup norm of the power from the cocycle formula.
    double expected = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double t = kGrid.point(i);
      const auto j = kGrid.index_of(op.alpha().iterate(t, n));
      if (j) expected = std::max(expected, std::abs(op.cocycle(n, t, CocycleDirection::Forward) * f[*j]));
    }
    EXPECT_DOUBLE_EQ(sup_norm(closed), expected);
  }
}

TEST(PowerProperty, UnitWeightTranslationKeepsSupNorm) {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const CompositionOperator op(Homeo::translation(testing::random_grid_shift(rng, kGrid)),
                                 PiecewiseMap::constant(1.0));
    const GridFunction f = testing::random_grid_function(rng, kGrid, 5.0);
    EXPECT_EQ(sup_norm(op.apply(f)), sup_norm(f));
    EXPECT_EQ(sup_norm(op.apply_inverse(f)), sup_norm(f));
  }
}

TEST(SegalCompatibilityTest, ConstantPeriodicAndRamp) {
  const Grid grid = Grid::from_half_width(6.0, 0.25);
  const CompositionOperator op = doubling_shift();
  EXPECT_TRUE(segal_compatible(op, PiecewiseMap::constant(0.3), grid));
  std::vector<double> bps;
  std::vector<double> vals;
  for (int k = -20; k <= 20; ++k) {
    bps.push_back(0.5 * k);
    vals.push_back(k % 2 == 0 ? 0.2 : 0.6);
  }
  EXPECT_TRUE(segal_compatible(op, PiecewiseMap(bps, vals), grid));
  EXPECT_FALSE(segal_compatible(op, PiecewiseMap::ramp(-1.0, 0.1, 1.0, 0.5), grid));
}

TEST(BilateralShiftTest, UnitWeightsShiftIndices) {
  const BilateralShift s([](long) { return 1.0; }, -3, 3);
  std::vector<Complex> x(7);
  x[2] = Complex(1.0, 1.0);
  const auto r = s.apply(x, 1);
  EXPECT_EQ(r.values[3], Complex(1.0, 1.0));
  EXPECT_FALSE(r.truncated);
}

TEST(BilateralShiftTest, PresetWeights) {
  const BilateralShift s = preset_shift(-5, 5);
  std::vector<Complex> e0(11);
  e0[5] = 1.0;
  const auto two = s.apply(e0, 2);
  EXPECT_DOUBLE_EQ(two.values[7].real(), 0.25);
  std::vector<Complex> em3(11);
  em3[2] = 1.0;
  EXPECT_DOUBLE_EQ(s.apply(em3, 1).values[3].real(), 4.0 / 3.0);
  EXPECT_TRUE(s.apply(e0, 6).truncated);
}

TEST(BilateralShiftTest, FactorsMatchProducts) {
  const BilateralShift s = preset_shift(-40, 40);
  const auto f = s.factors(-2, 2, 3);
  // max_j w_j w_{j+1} w_{j+2} over j in [-2, 2] is at j = -2: (3/2)(2)(1/2).
  EXPECT_DOUBLE_EQ(f.forward_leg, 1.5);
  // max_j prod_{i=1}^{3} 1/w_{j-i}: the negative side gives ratios below 1,
  // so j = 2 (through w_1, w_0, w_{-1}) wins: 2 * 2 * 1/2.
  EXPECT_DOUBLE_EQ(f.backward_leg, 2.0);
}

TEST(WedgeConditionTest, Verdicts) {
  const Grid grid = Grid::from_half_width(64.0, 0.25);
  EXPECT_TRUE(wedge_condition(preset_operator("ex3.6"), grid, 2, 200, 1e-6).satisfied());
  const CompositionOperator unit(Homeo::translation(-1.0), PiecewiseMap::constant(1.0));
  EXPECT_FALSE(wedge_condition(unit, grid, 2, 200, 1e-6).satisfied());
  const CriterionVerdict doubled = wedge_condition(doubling_shift(), grid, 2, 200, 1e-6);
  EXPECT_FALSE(doubled.satisfied());
  for (double q : doubled.trace) EXPECT_NEAR(q, 1.0, 1e-12);
}

}  // namespace
}  // namespace lindyn
