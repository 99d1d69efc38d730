// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "lindyn/criteria.hpp"
#include "lindyn/presets.hpp"

namespace {

void BM_EvaluateSupercyclic(benchmark::State& state) {
  const lindyn::Grid grid = lindyn::Grid::from_half_width(64.0, 0.25);
  const lindyn::CompositionOperator op = lindyn::preset_operator("ex3.6");
  const lindyn::CompactWindow window = lindyn::CompactWindow::symmetric(grid, 5.0);
  lindyn::EvalOptions options;
  options.horizon = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate(lindyn::CriterionKind::SupercyclicSolid, op, window, options));
}
BENCHMARK(BM_EvaluateSupercyclic)->Arg(200)->Arg(2000);

void BM_EvaluateCesaroTrimmed(benchmark::State& state) {
  const lindyn::Grid grid = lindyn::Grid::from_half_width(64.0, 0.25);
  const lindyn::CompositionOperator op = lindyn::preset_operator("ex3.5");
  const lindyn::CompactWindow window = lindyn::CompactWindow::symmetric(grid, 5.0);
  lindyn::EvalOptions options;
  options.horizon = 200;
  options.trim.max_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate(lindyn::CriterionKind::CesaroSolid, op, window, options));
}
BENCHMARK(BM_EvaluateCesaroTrimmed)->Arg(0)->Arg(4);

}  // namespace
