#include "kpiforge/kpi/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "kpiforge/error.hpp"

namespace kpiforge::kpi {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or(const json& j, double fallback) {
  return j.is_null() ? fallback : j.get<double>();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Category parse_category(std::string text) {
  text = lower(std::move(text));
  if (text.size() > 4 && text.ends_with(" kpi")) text.resize(text.size() - 4);
  // "Quantitate" is a spelling variant seen in source material.
  if (text == "quantitative" || text == "quantitate") return Category::quantitative;
  if (text == "qualitative") return Category::qualitative;
  if (text == "leading") return Category::leading;
  if (text == "actionable") return Category::actionable;
  if (text == "outcome") return Category::outcome;
  throw Error(ErrorCode::invalid_plan, "unknown KPI category '" + text + "'");
}

Method parse_method(const std::string& text) {
  if (text == "anova") return Method::anova;
  if (text == "correlation") return Method::correlation;
  if (text == "chi_square") return Method::chi_square;
  throw Error(ErrorCode::invalid_plan, "unknown test method '" + text + "'");
}

Decision parse_decision(const std::string& text) {
  if (text == "reject_h0") return Decision::reject_h0;
  if (text == "fail_to_reject") return Decision::fail_to_reject;
  if (text == "error") return Decision::error;
  throw Error(ErrorCode::invalid_plan, "unknown decision '" + text + "'");
}

json detail_to_json(const TestDetail& d) {
  if (const auto* a = std::get_if<stats::AnovaTable>(&d)) {
    return {{"ss_between", a->ss_between}, {"ss_within", a->ss_within},
            {"ss_total", a->ss_total},     {"df_between", a->df_between},
            {"df_within", a->df_within},   {"df_total", a->df_total},
            {"ms_between", a->ms_between}, {"ms_within", a->ms_within},
            {"f_stat", number(a->f_stat)}, {"p_value", a->p_value}};
  }
  if (const auto* c = std::get_if<stats::CorrelationResult>(&d)) {
    return {{"r", c->r},
            {"n_pairs", c->n_pairs},
            {"df", c->df},
            {"t_stat", number(c->t_stat)},
            {"p_two_tailed", c->p_two_tailed}};
  }
  if (const auto* x = std::get_if<stats::ChiSquareResult>(&d)) {
    return {{"statistic", x->statistic}, {"df", x->df}, {"p_value", x->p_value}};
  }
  return nullptr;
}

TestDetail detail_from_json(Method method, const json& j) {
  if (j.is_null()) return std::monostate{};
  switch (method) {
    case Method::anova: {
      stats::AnovaTable a;
      a.ss_between = j.at("ss_between").get<double>();
      a.ss_within = j.at("ss_within").get<double>();
      a.ss_total = j.at("ss_total").get<double>();
      a.df_between = j.at("df_between").get<int>();
      a.df_within = j.at("df_within").get<int>();
      a.df_total = j.at("df_total").get<int>();
      a.ms_between = j.at("ms_between").get<double>();
      a.ms_within = j.at("ms_within").get<double>();
      a.f_stat = number_or(j.at("f_stat"), std::numeric_limits<double>::infinity());
      a.p_value = j.at("p_value").get<double>();
      return a;
    }
    case Method::correlation: {
      stats::CorrelationResult c;
      c.r = j.at("r").get<double>();
      c.n_pairs = j.at("n_pairs").get<int>();
      c.df = j.at("df").get<int>();
      c.t_stat = number_or(j.at("t_stat"),
                           std::copysign(std::numeric_limits<double>::infinity(), c.r));
      c.p_two_tailed = j.at("p_two_tailed").get<double>();
      return c;
    }
    case Method::chi_square: {
      stats::ChiSquareResult x;
      x.statistic = j.at("statistic").get<double>();
      x.df = j.at("df").get<int>();
      x.p_value = j.at("p_value").get<double>();
      return x;
    }
  }
  return std::monostate{};
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_plan, std::string("malformed document: ") + e.what());
  }
}

}  // namespace

json kpi_to_json(const CandidateKpi& kpi) {
  json cats = json::array();
  for (auto c : kpi.categories) cats.push_back(to_string(c));
  return {{"name", kpi.name},
          {"categories", std::move(cats)},
          {"column", kpi.column},
          {"is_outcome", kpi.is_outcome}};
}

Plan plan_from_json(const json& doc) {
  return guarded([&] {
    if (!doc.is_object()) throw Error(ErrorCode::invalid_plan, "plan must be a JSON object");
    std::vector<CandidateKpi> kpis;
    for (const auto& k : doc.at("registry")) {
      CandidateKpi kpi;
      kpi.name = k.at("name").get<std::string>();
      for (const auto& c : k.at("categories")) kpi.categories.push_back(parse_category(c.get<std::string>()));
      kpi.column = k.value("column", kpi.name);
      kpi.is_outcome = k.value("is_outcome", false);
      kpis.push_back(std::move(kpi));
    }
    Plan plan{Registry(std::move(kpis)), {}};
    for (const auto& t : doc.at("tests")) {
      HypothesisTest test;
      test.id = t.at("id").get<std::string>();
      test.method = parse_method(t.at("method").get<std::string>());
      test.factor_a = t.at("factor_a").get<std::string>();
      test.factor_b = t.at("factor_b").get<std::string>();
      test.alpha = t.value("alpha", 0.05);
      test.h0 = t.value("h0", test.factor_a + " has no significant effect on " + test.factor_b + ".");
      test.h1 = t.value("h1", test.factor_a + " has a significant effect on " + test.factor_b + ".");
      if (test.factor_a == test.factor_b) {
        throw Error(ErrorCode::invalid_plan, "test '" + test.id + "' compares a factor with itself");
      }
      if (!(test.alpha > 0.0 && test.alpha < 1.0)) {
        throw Error(ErrorCode::invalid_plan, "test '" + test.id + "' has alpha outside (0, 1)");
      }
      plan.registry.at(test.factor_a);
      plan.registry.at(test.factor_b);
      plan.tests.push_back(std::move(test));
    }
    return plan;
  });
}

json plan_to_json(const Plan& plan) {
  json registry = json::array();
  for (const auto& k : plan.registry.kpis()) registry.push_back(kpi_to_json(k));
  json tests = json::array();
  for (const auto& t : plan.tests) {
    tests.push_back({{"id", t.id},
                     {"method", to_string(t.method)},
                     {"factor_a", t.factor_a},
                     {"factor_b", t.factor_b},
                     {"alpha", t.alpha},
                     {"h0", t.h0},
                     {"h1", t.h1}});
  }
  return {{"registry", std::move(registry)}, {"tests", std::move(tests)}};
}

json verdict_to_json(const TestVerdict& v) {
  json out = {{"test_id", v.test_id},
              {"method", to_string(v.method)},
              {"factor_a", v.factor_a},
              {"factor_b", v.factor_b},
              {"alpha", v.alpha},
              {"statistic", number(v.statistic)},
              {"p_value", number(v.p_value)},
              {"decision", to_string(v.decision)},
              {"detail", detail_to_json(v.detail)}};
  if (v.valid_counts) out["valid_counts"] = {v.valid_counts->first, v.valid_counts->second};
  if (v.decision == Decision::error) out["error"] = v.error;
  return out;
}

TestVerdict verdict_from_json(const json& doc) {
  return guarded([&] {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    TestVerdict v;
    v.test_id = doc.at("test_id").get<std::string>();
    v.method = parse_method(doc.at("method").get<std::string>());
    v.factor_a = doc.at("factor_a").get<std::string>();
    v.factor_b = doc.at("factor_b").get<std::string>();
    v.alpha = doc.value("alpha", 0.05);
    v.statistic = number_or(doc.at("statistic"), nan);
    v.p_value = number_or(doc.at("p_value"), nan);
    v.decision = parse_decision(doc.at("decision").get<std::string>());
    if (doc.contains("detail")) v.detail = detail_from_json(v.method, doc.at("detail"));
    if (doc.contains("valid_counts")) {
      const auto& c = doc.at("valid_counts");
      v.valid_counts = std::pair{c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>()};
    }
    if (v.decision == Decision::error) {
      v.error = doc.value("error", "");
    } else {
      if (!(v.p_value >= 0.0 && v.p_value <= 1.0)) {
        throw Error(ErrorCode::invalid_plan, "verdict '" + v.test_id + "' has p outside [0, 1]");
      }
      if (decide(v.p_value, v.alpha) != v.decision) {
        throw Error(ErrorCode::invalid_plan,
                    "verdict '" + v.test_id + "' decision disagrees with p < alpha");
      }
    }
    return v;
  });
}

std::vector<TestVerdict> verdicts_from_json(const json& doc) {
  return guarded([&] {
    const json& list = doc.is_object() ? doc.at("verdicts") : doc;
    if (!list.is_array()) throw Error(ErrorCode::invalid_plan, "verdicts must be an array");
    std::vector<TestVerdict> out;
    for (const auto& v : list) out.push_back(verdict_from_json(v));
    return out;
  });
}

json condensed_to_json(const CondensedKpiList& list) {
  json retained = json::array();
  for (const auto& k : list.retained) retained.push_back(kpi_to_json(k));
  json dropped = json::array();
  for (const auto& d : list.dropped) {
    dropped.push_back({{"kpi", kpi_to_json(d.kpi)}, {"reason", d.reason}});
  }
  json verdicts = json::array();
  for (const auto& v : list.source_verdicts) verdicts.push_back(verdict_to_json(v));
  return {{"retained", std::move(retained)},
          {"dropped", std::move(dropped)},
          {"source_verdicts", std::move(verdicts)}};
}

}  // namespace kpiforge::kpi
