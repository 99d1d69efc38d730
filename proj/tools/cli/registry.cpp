// SPDX-License-Identifier: Apache-2.0
#include "registry.hpp"

#include "lindyn/error.hpp"
#include "lindyn/measure.hpp"
#include "lindyn/presets.hpp"

namespace lindyn::cli {

namespace {

constexpr Status kSat = Status::Satisfied;
constexpr Status kNot = Status::NotSatisfiedUpToHorizon;

Expectation expect(std::string criterion, Status status, std::string basis, bool inverse = false) {
  Expectation e;
  e.criterion = std::move(criterion);
  e.expected = status;
  e.basis = std::move(basis);
  e.inverse = inverse;
  return e;
}

Expectation windowed(Expectation e, double lo, double hi) {
  e.lo = lo;
  e.hi = hi;
  return e;
}

Expectation relaxed(Expectation e, long horizon, double tol) {
  e.horizon = horizon;
  e.tol = tol;
  return e;
}

std::vector<GoldenExample> build_registry() {
  std::vector<GoldenExample> r;
  r.push_back({"ex3.5",
               "ex3.5",
               {expect("CESARO_C0", kSat, "Cesaro product condition holds for 1 < M - delta <= w <= M on the left"),
                expect("SUPERCYCLIC_C0", kSat, "Cesaro condition implies the supercyclic one"),
                expect("CESARO_SOLID", kSat, "Cesaro product condition holds in every solid space"),
                expect("SUPERCYCLIC_SOLID", kSat, "Cesaro condition implies the supercyclic one")},
               preset_note("ex3.5")});
  r.push_back({"ex3.6",
               "ex3.6",
               {expect("SUPERCYCLIC_SOLID", kSat, "T is topologically semi-transitive"),
                expect("CESARO_SOLID", kNot, "T fails the Cesaro condition, the implication is not reversible"),
                expect("CESARO_SOLID", kSat, "the inverse S is topologically Cesaro hyper-transitive", true)},
               preset_note("ex3.6")});
  r.push_back({"ex3.7",
               "ex3.7",
               {expect("SUPERCYCLIC_SOLID", kSat, "T and S are topologically semi-transitive"),
                expect("SUPERCYCLIC_SOLID", kSat, "T and S are topologically semi-transitive", true),
                expect("CESARO_SOLID", kNot, "but not Cesaro hyper-transitive"),
                expect("CESARO_SOLID", kNot, "but not Cesaro hyper-transitive", true)},
               preset_note("ex3.7")});
  r.push_back({"ex3.8",
               "ex3.8",
               {relaxed(windowed(expect("CESARO_SOLID", kNot, "the Cesaro conditions are not satisfied"), -2, 2),
                        500, 1e-6),
                relaxed(windowed(expect("HYPERCYCLIC_SOLID", kSat,
                                        "hypercyclic, but not Cesaro hypercyclic; the inverse leg decays like 1/n"),
                                 -2, 2),
                        2000, 1e-2)},
               preset_note("ex3.8")});
  r.push_back({"rem3.10",
               "rem3.10",
               {relaxed(windowed(expect("HYPERCYCLIC_SOLID", kSat,
                                        "hypercyclic: both shift legs tend to 0; the backward leg decays like 1/n"),
                                 -2, 2),
                        2000, 1e-2),
                relaxed(windowed(expect("CESARO_SOLID", kNot,
                                        "not Cesaro hypercyclic: n times the backward leg stays near 1"),
                                 -2, 2),
                        2000, 1e-2)},
               preset_note("rem3.10")});
  r.push_back({"ex4.3a",
               "ex4.3a",
               {windowed(expect("ADJOINT_CESARO", kSat, "the adjoint Cesaro conditions hold for mu = nu = delta_0"),
                         -1, 1),
                windowed(expect("ADJOINT_SUPER", kSat, "the adjoint supercyclic product tends to 0"), -1, 1)},
               preset_note("ex4.3a")});
  r.push_back({"ex4.3b",
               "ex4.3b",
               {windowed(expect("ADJOINT_SUPER", kSat, "the adjoint supercyclic product tends to 0"), -1, 1),
                windowed(expect("ADJOINT_CESARO", kNot, "neither Cesaro hyper-transitive nor transitive"), -1, 1)},
               preset_note("ex4.3b")});

  GoldenExample wedge{"ex3.12-condition", "", {}, "supercyclic-type product over [-2, 2] for the preceding weights"};
  for (const char* id : {"ex3.5", "ex3.6", "ex3.7", "ex3.8"}) {
    Expectation e = windowed(expect("WEDGE_CONDITION", kSat, std::string("the wedge conditions hold for ") + id),
                             -2, 2);
    e.preset = id;
    wedge.expectations.push_back(e);
  }
  r.push_back(wedge);
  return r;
}

CriterionVerdict run_one(const GoldenExample& example, const Expectation& e, const Grid& grid) {
  const std::string& preset = e.preset.empty() ? example.preset : e.preset;
  if (e.criterion == "WEDGE_CONDITION") {
    const auto op = preset_operator(preset);
    return wedge_condition(op, grid, static_cast<long>(e.hi), e.horizon, e.tol);
  }
  const auto kind = parse_criterion_kind(e.criterion);
  if (!kind) fail(ErrorCode::InvalidArgument, "registry holds unknown kind " + e.criterion);
  if (preset == "rem3.10") {
    const long lo = static_cast<long>(e.lo);
    const long hi = static_cast<long>(e.hi);
    // The window of Z must contain every index the legs touch.
    const BilateralShift shift = preset_shift(lo - e.horizon - 1, hi + e.horizon + 1);
    return evaluate_shift(*kind, shift, lo, hi, e.horizon, e.tol);
  }
  CompositionOperator op = preset_operator(preset);
  if (e.inverse) op = op.inverse();
  if (is_adjoint(*kind)) {
    const AtomicMeasure dirac = AtomicMeasure::dirac(0.0);
    return adjoint_criterion(*kind, op, dirac, dirac, e.lo, e.hi, {e.horizon, e.tol, 0.0});
  }
  EvalOptions options;
  options.horizon = e.horizon;
  options.tol = e.tol;
  return evaluate(*kind, op, CompactWindow(grid, e.lo, e.hi), options);
}

}  // namespace

const std::vector<GoldenExample>& example_registry() {
  static const std::vector<GoldenExample> registry = build_registry();
  return registry;
}

const GoldenExample* find_example(const std::string& id) {
  for (const auto& e : example_registry())
    if (e.id == id) return &e;
  return nullptr;
}

std::vector<ExpectationOutcome> run_example(const GoldenExample& example, const Grid& grid) {
  std::vector<ExpectationOutcome> out;
  for (const auto& e : example.expectations) {
    const CriterionVerdict v = run_one(example, e, grid);
    ExpectationOutcome o;
    o.id = example.id;
    o.expectation = e;
    o.observed = v.status;
    o.min_q = v.min_q();
    o.best_n = v.witness.empty() ? 0 : v.witness.back().n;
    o.pass = v.status == e.expected;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace lindyn::cli
