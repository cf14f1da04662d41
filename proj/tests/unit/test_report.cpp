#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "kpiforge/error.hpp"
#include "kpiforge/report/report.hpp"

using namespace kpiforge;
using namespace kpiforge::report;

namespace {

kpi::TestVerdict correlation_verdict(double r, double p, int n) {
  kpi::TestVerdict v;
  v.test_id = "c";
  v.method = kpi::Method::correlation;
  v.factor_a = "Extra curriculum activities";
  v.factor_b = "Regularity";
  v.statistic = r;
  v.p_value = p;
  v.decision = kpi::decide(p, 0.05);
  stats::CorrelationResult c;
  c.r = r;
  c.n_pairs = n;
  c.df = n - 2;
  c.p_two_tailed = p;
  v.detail = c;
  v.valid_counts = {static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  return v;
}

}  // namespace

TEST_CASE("three-decimal display rule") {
  CHECK(format_decimal(0.0003) == ".000");
  CHECK(format_decimal(0.871) == ".871");
  CHECK(format_decimal(0.87145) == ".871");
  CHECK(format_decimal(-0.55) == "-.550");
  CHECK(format_decimal(12.8606) == "12.861");
  CHECK(format_decimal(0.0005) == ".001");    // half away from zero
  CHECK(format_decimal(-0.0004) == ".000");   // no negative zero
  CHECK(format_decimal(1.0) == "1.000");
  CHECK(format_decimal(37.463) == "37.463");
  CHECK(format_decimal(std::nan("")).empty());
}

TEST_CASE("correlation markers") {
  CHECK(format_correlation(-0.550, 3.51e-5) == "-.550**");
  CHECK(format_correlation(0.639, 5.9e-7) == ".639**");
  CHECK(format_correlation(0.3, 0.03) == ".300*");
  CHECK(format_correlation(0.075, 0.604) == ".075");
  CHECK(format_correlation(0.2, 0.01) == ".200*");  // .01 itself is not below .01
}

TEST_CASE("correlation table with footnote") {
  const auto text = render_verdict_text(correlation_verdict(-0.550, 3.51e-5, 50));
  CHECK(text ==
        "Test c (correlation): Extra curriculum activities -> Regularity\n"
        "Correlations\n"
        "                                                  Extra curriculum activities  Regularity\n"
        "Extra curriculum activities  Pearson Correlation                            1     -.550**\n"
        "                             Sig. (2-tailed)                                         .000\n"
        "                             N                                             50          50\n"
        "Regularity                   Pearson Correlation                      -.550**           1\n"
        "                             Sig. (2-tailed)                             .000\n"
        "                             N                                             50          50\n"
        "** Correlation is significant at the 0.01 level (2-tailed).\n"
        "Decision: reject H0 (p < 0.05)\n");
  CHECK(text.find(std::string(kFootnote01)) != std::string::npos);

  const auto weak = render_verdict_text(correlation_verdict(0.075, 0.604, 50));
  CHECK(weak.find(".075") != std::string::npos);
  CHECK(weak.find(".604") != std::string::npos);
  CHECK(weak.find("Correlation is significant") == std::string::npos);
  CHECK(weak.find("fail to reject") != std::string::npos);
}

TEST_CASE("ANOVA table") {
  kpi::TestVerdict v;
  v.test_id = "a";
  v.method = kpi::Method::anova;
  v.factor_a = "Number of Semester in the course";
  v.factor_b = "CGPA";
  stats::AnovaTable t;
  t.ss_between = 0.220;
  t.ss_within = 37.463;
  t.ss_total = 37.683;
  t.df_between = 2;
  t.df_within = 47;
  t.df_total = 49;
  t.ms_between = 0.110;
  t.ms_within = 0.797;
  t.f_stat = 0.13800283;
  t.p_value = 0.87144789;
  v.statistic = t.f_stat;
  v.p_value = t.p_value;
  v.decision = kpi::decide(t.p_value, 0.05);
  v.detail = t;
  CHECK(render_verdict_text(v) ==
        "Test a (anova): Number of Semester in the course -> CGPA\n"
        "ANOVA\n"
        "CGPA\n"
        "                Sum of Squares  df  Mean Square     F  Sig.\n"
        "Between Groups            .220   2         .110  .138  .871\n"
        "Within Groups           37.463  47         .797\n"
        "Total                   37.683  49\n"
        "Decision: fail to reject H0 (p >= 0.05)\n");
}

TEST_CASE("machine-readable verdict formats") {
  const std::vector<kpi::TestVerdict> vs{correlation_verdict(-0.550, 3.51e-5, 50)};
  const auto j = nlohmann::json::parse(render_verdicts(vs, Format::json));
  CHECK(j[0].at("statistic") == -0.55);
  CHECK(j[0].at("display").at("statistic") == "-.550**");
  CHECK(j[0].at("display").at("sig") == ".000");
  CHECK(render_verdicts(vs, Format::csv) ==
        "test_id,method,factor_a,factor_b,statistic,sig,decision\n"
        "c,correlation,Extra curriculum activities,Regularity,-.550**,.000,reject_h0\n");
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("error verdicts render their message") {
  kpi::TestVerdict v;
  v.test_id = "bad";
  v.factor_a = "A";
  v.factor_b = "B";
  v.decision = kpi::Decision::error;
  v.statistic = v.p_value = std::nan("");
  v.error = "test 'bad': constant";
  const auto text = render_verdict_text(v);
  CHECK(text.find("Error: test 'bad': constant") != std::string::npos);
  const auto csv = render_verdicts({v}, Format::csv);
  CHECK(csv.find("bad,anova,A,B,,,error") != std::string::npos);
}
