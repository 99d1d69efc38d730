// SPDX-License-Identifier: Apache-2.0
#include "lindyn/presets.hpp"

#include <algorithm>

#include "lindyn/error.hpp"

namespace lindyn {

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids{"ex3.5", "ex3.6", "ex3.7", "ex3.8", "rem3.10", "ex4.3a", "ex4.3b"};
  return ids;
}

bool is_preset(std::string_view id) {
  const auto& ids = preset_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string preset_note(std::string_view id) {
  if (id == "ex3.5") return "alpha(t) = t - 1; w = 2 for t <= -1, 1 for t >= 1, affine between (M = 2, delta = 1, K1 = K2 = 1)";
  if (id == "ex3.6") return "alpha(t) = t + 1; w = 1/2 for t <= -1, 1 for t >= 1, affine between (M = 2, delta = 1)";
  if (id == "ex3.7") return "alpha(t) = t - 1; w = 4 for t <= -1, 2 for t >= 1, affine between (M = 4, delta = 1)";
  if (id == "ex3.8") return "alpha(t) = t - 1; w = 1/2 for t >= 0, (m + 1)/m at t = -m, affine between nodes";
  if (id == "rem3.10") return "forward shift on l2(Z); w_j = 1/2 for j >= 0, w_{-j} = (j + 1)/j for j >= 1";
  if (id == "ex4.3a") return "alpha(t) = t + 1; w = 2 for t <= -1, 1 for t >= 1, affine between";
  if (id == "ex4.3b") return "alpha(t) = t - 1; w = 1/2 for t <= -1, 1 for t >= 1, affine between";
  fail(ErrorCode::UnknownPreset, "unknown preset '" + std::string(id) + "'");
}

PiecewiseMap step_up_weight(double high, double low, double edge) {
  return PiecewiseMap::ramp(-edge, high, edge, low);
}

PiecewiseMap harmonic_weight(long nodes) {
  if (nodes < 1) fail(ErrorCode::InvalidArgument, "need at least one node");
  std::vector<double> bps;
  std::vector<double> vals;
  for (long m = nodes; m >= 1; --m) {
    bps.push_back(-static_cast<double>(m));
    vals.push_back(static_cast<double>(m + 1) / static_cast<double>(m));
  }
  bps.push_back(0.0);
  vals.push_back(0.5);
  return PiecewiseMap(std::move(bps), std::move(vals));
}

CompositionOperator preset_operator(std::string_view id) {
  if (id == "ex3.5") return {Homeo::translation(-1.0), step_up_weight(2.0, 1.0)};
  if (id == "ex3.6") return {Homeo::translation(1.0), step_up_weight(0.5, 1.0)};
  if (id == "ex3.7") return {Homeo::translation(-1.0), step_up_weight(4.0, 2.0)};
  if (id == "ex3.8") return {Homeo::translation(-1.0), harmonic_weight()};
  if (id == "ex4.3a") return {Homeo::translation(1.0), step_up_weight(2.0, 1.0)};
  if (id == "ex4.3b") return {Homeo::translation(-1.0), step_up_weight(0.5, 1.0)};
  if (id == "rem3.10") fail(ErrorCode::InvalidArgument, "rem3.10 is a sequence shift, not a composition operator");
  fail(ErrorCode::UnknownPreset, "unknown preset '" + std::string(id) + "'");
}

double bilateral_preset_weight(long j) {
  if (j >= 0) return 0.5;
  const double m = static_cast<double>(-j);
  return (m + 1.0) / m;
}

BilateralShift preset_shift(long lo, long hi) { return BilateralShift(bilateral_preset_weight, lo, hi); }

}  // namespace lindyn
