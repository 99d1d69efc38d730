// SPDX-License-Identifier: Apache-2.0
//
// Named operators with pinned parameters, used by the example registry and
// the command-line tool.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lindyn/operator.hpp"

namespace lindyn {

/// Ids: ex3.5, ex3.6, ex3.7, ex3.8, rem3.10, ex4.3a, ex4.3b.
const std::vector<std::string>& preset_ids();
bool is_preset(std::string_view id);
/// One-line description of the pinned parameters.
std::string preset_note(std::string_view id);

/// Composition operator of a function-space preset. Throws UnknownPreset for
/// an unknown id and InvalidArgument for the sequence preset rem3.10.
CompositionOperator preset_operator(std::string_view id);

/// Weights of rem3.10: w_j = 1/2 for j >= 0 and w_{-j} = (j + 1) / j for j >= 1.
double bilateral_preset_weight(long j);
BilateralShift preset_shift(long lo, long hi);

/// Weight maps with their free parameters exposed.
PiecewiseMap step_up_weight(double high, double low, double edge = 1.0);  // high for t <= -edge, low for t >= edge
PiecewiseMap harmonic_weight(long nodes = 16384);                        // (m+1)/m at -m, 1/2 for t >= 0

}  // namespace lindyn
