#include "kpiforge/kpi/engine.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "kpiforge/error.hpp"

namespace kpiforge::kpi {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::quantitative: return "Quantitative";
    case Category::qualitative: return "Qualitative";
    case Category::leading: return "Leading";
    case Category::actionable: return "Actionable";
    case Category::outcome: return "Outcome";
  }
  return "";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::anova: return "anova";
    case Method::correlation: return "correlation";
    case Method::chi_square: return "chi_square";
  }
  return "";
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::reject_h0: return "reject_h0";
    case Decision::fail_to_reject: return "fail_to_reject";
    case Decision::error: return "error";
  }
  return "";
}

std::string_view to_string(Relationship r) {
  switch (r) {
    case Relationship::direct: return "direct";
    case Relationship::inverse: return "inverse";
    case Relationship::none: return "none";
  }
  return "";
}

Registry::Registry(std::vector<CandidateKpi> kpis) : kpis_(std::move(kpis)) {
  std::unordered_set<std::string> names;
  std::size_t outcomes = 0;
  for (const auto& k : kpis_) {
    if (k.name.empty()) throw Error(ErrorCode::invalid_plan, "KPI name is empty");
    if (!names.insert(k.name).second) {
      throw Error(ErrorCode::invalid_plan, "duplicate KPI name '" + k.name + "'");
    }
    if (k.categories.empty()) {
      throw Error(ErrorCode::invalid_plan, "KPI '" + k.name + "' has no category");
    }
    if (k.column.empty()) {
      throw Error(ErrorCode::invalid_plan, "KPI '" + k.name + "' is not bound to a column");
    }
    if (k.is_outcome) ++outcomes;
  }
  if (outcomes != 1) {
    throw Error(ErrorCode::invalid_plan, "registry must have exactly one outcome KPI, found " +
                                             std::to_string(outcomes));
  }
}

const CandidateKpi* Registry::find(std::string_view name) const noexcept {
  for (const auto& k : kpis_) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

const CandidateKpi& Registry::at(std::string_view name) const {
  if (const auto* k = find(name)) return *k;
  throw Error(ErrorCode::unknown_kpi, "unknown KPI '" + std::string(name) + "'");
}

const CandidateKpi& Registry::outcome() const {
  for (const auto& k : kpis_) {
    if (k.is_outcome) return k;
  }
  throw Error(ErrorCode::invalid_plan, "registry has no outcome KPI");
}

Decision decide(double p_value, double alpha) {
  return p_value < alpha ? Decision::reject_h0 : Decision::fail_to_reject;
}

namespace {

void validate_test(const HypothesisTest& t) {
  if (t.id.empty()) throw Error(ErrorCode::invalid_plan, "test id is empty");
  if (t.factor_a == t.factor_b) {
    throw Error(ErrorCode::invalid_plan, "test '" + t.id + "' compares a factor with itself");
  }
  if (!(t.alpha > 0.0 && t.alpha < 1.0)) {
    throw Error(ErrorCode::invalid_plan, "test '" + t.id + "' has alpha outside (0, 1)");
  }
}

std::size_t non_missing(const data::Column& c) { return c.size() - c.schema().missing_count; }

TestVerdict evaluate(const HypothesisTest& test, const data::Dataset& ds,
                     const Registry& registry) {
  validate_test(test);
  const auto& a = registry.at(test.factor_a);
  const auto& b = registry.at(test.factor_b);

  TestVerdict v;
  v.test_id = test.id;
  v.method = test.method;
  v.factor_a = test.factor_a;
  v.factor_b = test.factor_b;
  v.alpha = test.alpha;

  switch (test.method) {
    case Method::anova: {
      const auto table = stats::one_way_anova(data::group_by_factor(ds, b.column, a.column));
      v.statistic = table.f_stat;
      v.p_value = table.p_value;
      v.detail = table;
      break;
    }
    case Method::correlation: {
      const auto pairs = data::pairwise_complete(ds, a.column, b.column);
      const auto result = stats::pearson(pairs.x, pairs.y);
      v.statistic = result.r;
      v.p_value = result.p_two_tailed;
      v.detail = result;
      v.valid_counts = {non_missing(ds.column(a.column)), non_missing(ds.column(b.column))};
      break;
    }
    case Method::chi_square: {
      const auto tab = data::cross_tabulate(ds, a.column, b.column);
      const auto result = stats::chi_square_independence(tab.counts);
      v.statistic = result.statistic;
      v.p_value = result.p_value;
      v.detail = result;
      break;
    }
  }
  v.decision = decide(v.p_value, v.alpha);
  return v;
}

}  // namespace

TestVerdict run_test(const HypothesisTest& test, const data::Dataset& ds,
                     const Registry& registry) {
  try {
    return evaluate(test, ds, registry);
  } catch (const Error& e) {
    throw Error(e.code(), "test '" + test.id + "': " + e.what());
  }
}

std::vector<TestVerdict> run_plan(const std::vector<HypothesisTest>& plan,
                                  const data::Dataset& ds, const Registry& registry) {
  if (plan.empty()) throw Error(ErrorCode::empty_plan, "test plan is empty");
  std::unordered_set<std::string> ids;
  for (const auto& t : plan) {
    if (!ids.insert(t.id).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate test id '" + t.id + "'");
    }
  }

  std::vector<TestVerdict> verdicts;
  verdicts.reserve(plan.size());
  for (const auto& t : plan) {
    try {
      verdicts.push_back(run_test(t, ds, registry));
    } catch (const Error& e) {
      TestVerdict v;
      v.test_id = t.id;
      v.method = t.method;
      v.factor_a = t.factor_a;
      v.factor_b = t.factor_b;
      v.alpha = t.alpha;
      v.statistic = std::numeric_limits<double>::quiet_NaN();
      v.p_value = std::numeric_limits<double>::quiet_NaN();
      v.decision = Decision::error;
      v.error = e.what();
      verdicts.push_back(std::move(v));
    }
  }
  return verdicts;
}

CondensedKpiList condense(const Registry& registry, const std::vector<TestVerdict>& verdicts) {
  for (const auto& v : verdicts) {
    registry.at(v.factor_a);
    registry.at(v.factor_b);
  }

  CondensedKpiList out;
  out.source_verdicts = verdicts;
  for (const auto& k : registry.kpis()) {
    bool significant = false;
    bool completed = false;
    for (const auto& v : verdicts) {
      if (v.factor_a != k.name && v.factor_b != k.name) continue;
      if (v.decision == Decision::error) continue;
      completed = true;
      significant = significant || v.decision == Decision::reject_h0;
    }
    if (k.is_outcome || significant) {
      out.retained.push_back(k);
    } else {
      out.dropped.push_back(
          {k, std::string(completed ? kReasonNotSignificant : kReasonUntested)});
    }
  }
  return out;
}

Relationship correlation_sign_report(const stats::CorrelationResult& result, double alpha) {
  if (!(result.p_two_tailed < alpha)) return Relationship::none;
  if (result.r > 0.0) return Relationship::direct;
  if (result.r < 0.0) return Relationship::inverse;
  return Relationship::none;
}

}  // namespace kpiforge::kpi
