// SPDX-License-Identifier: Apache-2.0
//
// Golden registry: each entry pins an operator preset and the verdicts its
// weight products are expected to produce.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lindyn/criteria.hpp"
#include "lindyn/funcspace.hpp"

namespace lindyn::cli {

struct Expectation {
  std::string criterion;  // a CriterionKind name, or WEDGE_CONDITION
  bool inverse = false;   // evaluate S instead of T
  std::string preset;     // overrides the entry's preset when non-empty
  Status expected = Status::Satisfied;
  double lo = -5.0;
  double hi = 5.0;
  long horizon = 200;
  double tol = 1e-6;
  std::string basis;      // the claim this expectation encodes
};

struct GoldenExample {
  std::string id;
  std::string preset;
  std::vector<Expectation> expectations;
  std::string note;
};

const std::vector<GoldenExample>& example_registry();
const GoldenExample* find_example(const std::string& id);

struct ExpectationOutcome {
  std::string id;
  Expectation expectation;
  Status observed = Status::NotSatisfiedUpToHorizon;
  double min_q = 0.0;
  long best_n = 0;
  bool pass = false;
};

/// Runs every expectation of the entry on the given grid.
std::vector<ExpectationOutcome> run_example(const GoldenExample& example, const Grid& grid);

}  // namespace lindyn::cli
