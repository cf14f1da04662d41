#pragma once

#include <vector>

#include <json.hpp>

#include "kpiforge/kpi/engine.hpp"

namespace kpiforge::kpi {

// Plan document:
//   { "registry": [ { "name", "categories": [..], "column", "is_outcome" } ],
//     "tests":    [ { "id", "method": "anova"|"correlation"|"chi_square",
//                     "factor_a", "factor_b", "alpha"?, "h0"?, "h1"? } ] }
// alpha defaults to 0.05. Malformed documents throw ErrorCode::invalid_plan.
Plan plan_from_json(const nlohmann::json& doc);
nlohmann::json plan_to_json(const Plan& plan);

nlohmann::json kpi_to_json(const CandidateKpi& kpi);

// Non-finite numbers serialize as null.
nlohmann::json verdict_to_json(const TestVerdict& v);

// "detail" is optional. The stored decision must agree with p < alpha.
TestVerdict verdict_from_json(const nlohmann::json& doc);

// Accepts a bare array or an object with a "verdicts" array.
std::vector<TestVerdict> verdicts_from_json(const nlohmann::json& doc);

nlohmann::json condensed_to_json(const CondensedKpiList& list);

}  // namespace kpiforge::kpi
