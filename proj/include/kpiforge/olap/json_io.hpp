#pragma once

#include <json.hpp>

#include "kpiforge/olap/cube.hpp"

namespace kpiforge::olap {

// Chart payload:
//   { "measure", "group_by": string|null,
//     "rows": [ { "group": string|null, "measure", "count",
//                 "sum", "mean", "min", "max" } ] }
// sum/mean/min/max are null when count is 0.
nlohmann::json aggregate_to_json(const AggregateResult& result);

// { "dimensions": [ { "name", "levels": [..] } ], "measures": [..], "fact_count" }
nlohmann::json cube_to_json(const Cube& cube);

}  // namespace kpiforge::olap
