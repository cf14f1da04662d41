#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kpiforge/data/dataset.hpp"
#include "kpiforge/stats/hypothesis.hpp"

namespace kpiforge::kpi {

enum class Category { quantitative, qualitative, leading, actionable, outcome };
enum class Method { anova, correlation, chi_square };
enum class Decision { reject_h0, fail_to_reject, error };
enum class Relationship { direct, inverse, none };

std::string_view to_string(Category c);
std::string_view to_string(Method m);
std::string_view to_string(Decision d);
std::string_view to_string(Relationship r);

struct CandidateKpi {
  std::string name;
  std::vector<Category> categories;  // non-empty
  std::string column;                // dataset column the KPI is measured by
  bool is_outcome = false;

  friend bool operator==(const CandidateKpi&, const CandidateKpi&) = default;
};

// Ordered candidate list. Names are unique and exactly one KPI is the
// outcome; violations throw ErrorCode::invalid_plan.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<CandidateKpi> kpis);

  const std::vector<CandidateKpi>& kpis() const noexcept { return kpis_; }
  const CandidateKpi* find(std::string_view name) const noexcept;
  // Throws ErrorCode::unknown_kpi.
  const CandidateKpi& at(std::string_view name) const;
  const CandidateKpi& outcome() const;

 private:
  std::vector<CandidateKpi> kpis_;
};

// H0: factor_a has no significant effect on factor_b. For ANOVA, factor_b is
// the dependent variable and factor_a the grouping factor.
struct HypothesisTest {
  std::string id;
  Method method = Method::anova;
  std::string factor_a;
  std::string factor_b;
  double alpha = 0.05;
  std::string h0;
  std::string h1;

  friend bool operator==(const HypothesisTest&, const HypothesisTest&) = default;
};

using TestDetail = std::variant<std::monostate, stats::AnovaTable, stats::CorrelationResult,
                                stats::ChiSquareResult>;

struct TestVerdict {
  std::string test_id;
  Method method = Method::anova;
  std::string factor_a;
  std::string factor_b;
  double alpha = 0.05;
  // F for ANOVA, r for correlation, chi-square for chi_square. Both are NaN
  // for an error verdict.
  double statistic = 0.0;
  double p_value = 1.0;
  Decision decision = Decision::fail_to_reject;
  TestDetail detail;
  // Non-missing cell count of each factor's column (correlation tables
  // report these next to the pair count).
  std::optional<std::pair<std::size_t, std::size_t>> valid_counts;
  std::string error;  // set iff decision == Decision::error
};

struct DroppedKpi {
  CandidateKpi kpi;
  std::string reason;
};

struct CondensedKpiList {
  std::vector<CandidateKpi> retained;  // registry order
  std::vector<DroppedKpi> dropped;     // registry order
  std::vector<TestVerdict> source_verdicts;
};

struct Plan {
  Registry registry;
  std::vector<HypothesisTest> tests;
};

inline constexpr std::string_view kReasonNotSignificant = "no significant test";
inline constexpr std::string_view kReasonUntested = "untested";

/// H0 is rejected only when p < alpha; p == alpha fails to reject.
Decision decide(double p_value, double alpha);

/// Runs one test against `ds`; errors carry the test id in their message.
TestVerdict run_test(const HypothesisTest& test, const data::Dataset& ds, const Registry& registry);

/// Runs every test in plan order. A failing test yields an error verdict
/// instead of aborting the plan. Throws empty_plan or duplicate_id.
std::vector<TestVerdict> run_plan(const std::vector<HypothesisTest>& plan,
                                  const data::Dataset& ds, const Registry& registry);

/// Keeps the outcome KPI and every KPI that took part in at least one
/// non-error verdict rejecting H0. Others are dropped with
/// kReasonNotSignificant if they had a completed test, else kReasonUntested.
CondensedKpiList condense(const Registry& registry, const std::vector<TestVerdict>& verdicts);

Relationship correlation_sign_report(const stats::CorrelationResult& result, double alpha = 0.05);

}  // namespace kpiforge::kpi
