// SPDX-License-Identifier: Apache-2.0
//
// JSON, JSON-lines and CSV encodings of the library's values.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lindyn/criteria.hpp"
#include "lindyn/dynamics.hpp"
#include "lindyn/funcspace.hpp"
#include "lindyn/measure.hpp"
#include "lindyn/operator.hpp"
#include "lindyn/porosity.hpp"

namespace lindyn {

using Json = nlohmann::json;

// All decoders throw Error(ParseError) on malformed input.

Json to_json(const PiecewiseMap& map);
PiecewiseMap piecewise_map_from_json(const Json& j);

/// {"kind":"translation","shift":c}, {"kind":"identity"} or
/// {"kind":"piecewise_affine","breakpoints":[...],"values":[...],"left_slope":a,"right_slope":b}.
Json to_json(const Homeo& alpha);
Homeo homeo_from_json(const Json& j);

/// {"alpha":{...},"weight":{...}}; "inverse":true selects S.
Json to_json(const CompositionOperator& op);
CompositionOperator operator_from_json(const Json& j);

/// {"atoms":[{"x":..,"re":..,"im":..}]}
Json to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

/// Header "t,re,im", one row per grid point.
void write_csv(std::ostream& out, const GridFunction& f);
/// Reads the CSV back; the grid is recovered from the t column.
GridFunction read_grid_function_csv(std::istream& in);

/// One {kind, n, q, record_min} line per n, then a summary line
/// {status, witness, params}.
void write_jsonl(std::ostream& out, const CriterionVerdict& verdict);
Json summary_json(const CriterionVerdict& verdict);

/// Header "n,norm,cesaro_norm,scaled_dist"; scaled_dist is empty when absent.
void write_csv(std::ostream& out, const OrbitTrace& trace);
/// Header "target,n,distance".
void write_csv(std::ostream& out, const std::vector<BestHit>& hits);

/// One {seed, y_found, d, inner_hits} line per outer sample.
void write_jsonl(std::ostream& out, const ProbeReport& report);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace lindyn
