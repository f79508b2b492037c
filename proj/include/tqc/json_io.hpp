#pragma once

// JSON forms of series, models, invariant stores and check reports.
// Rationals are always lowest-terms strings "p/q".

#include "tqc/potential.hpp"
#include "tqc/report.hpp"
#include "tqc/series.hpp"
#include "tqc/variety.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tqc {

using nlohmann::json;

/// Accepts "p/q", "p" or a JSON integer.  StructuralError otherwise.
Rat rat_from_json(const json& j);

/// {"vars": {"q", "x", "y", "q_weights"}, "trunc": {"q", "x", "y"},
///  "terms": [{"m": [[group, index, exponent], ...], "c": "p/q"}, ...]}
json series_to_json(const Series& s);
Series series_from_json(const json& j);

json model_to_json(const CohomologyModel& m);
/// Reads a custom model.  Shape errors are StructuralError; the caller still
/// has to validate the result.  A missing pairing_inv is computed.
CohomologyModel model_from_json(const json& j);

json store_to_json(const InvariantStore& store);
std::vector<std::pair<InvariantKey, Rat>> store_entries_from_json(const json& j);

json report_to_json(const CheckReport& r);

}  // namespace tqc
