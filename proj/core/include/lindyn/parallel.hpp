// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace lindyn {

/// Worker count: hardware concurrency, capped by LINDYN_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; the
/// body must only write to state owned by its index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lindyn
