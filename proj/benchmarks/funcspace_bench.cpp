// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "lindyn/dynamics.hpp"
#include "lindyn/funcspace.hpp"

namespace {

void BM_SegalNorm(benchmark::State& state) {
  const lindyn::Grid grid = lindyn::Grid::from_half_width(static_cast<double>(state.range(0)), 0.25);
  const lindyn::GridFunction f = lindyn::triangular_bump(grid, 0.0, 8.0);
  const lindyn::PiecewiseMap tau = lindyn::PiecewiseMap::constant(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(lindyn::segal_norm(f, tau, 1e-9));
}
BENCHMARK(BM_SegalNorm)->Arg(16)->Arg(256);

void BM_ProjectiveDistance(benchmark::State& state) {
  const lindyn::Grid grid = lindyn::Grid::from_half_width(64.0, 0.25);
  const lindyn::GridFunction f = lindyn::triangular_bump(grid, 0.0, 4.0, {1.0, 0.5});
  const lindyn::GridFunction g = lindyn::triangular_bump(grid, 1.0, 3.0);
  const bool sup = state.range(0) != 0;
  const lindyn::NormKind kind = sup ? lindyn::NormKind{lindyn::SupNorm{}} : lindyn::NormKind{lindyn::L2Norm{}};
  for (auto _ : state) benchmark::DoNotOptimize(lindyn::projective_distance(f, g, kind));
}
BENCHMARK(BM_ProjectiveDistance)->Arg(0)->Arg(1);

}  // namespace
