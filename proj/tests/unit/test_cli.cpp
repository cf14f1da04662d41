#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include <json.hpp>

#include "../support/paths.hpp"
#include "../support/process.hpp"

using namespace kpiforge::testing;
using nlohmann::json;

namespace {

struct Cli {
  TempDir dir;

  CommandResult operator()(const std::string& args) const {
    return run_command(shell_quote(KPIFORGE_CLI) + " --data-dir " + shell_quote(dir.path().string()) +
                       " " + args);
  }
};

std::string q(const std::filesystem::path& p) { return shell_quote(p.string()); }

}  // namespace

TEST_CASE("cli: ingest, analyze, report, condense, slice") {
  Cli cli;
  const auto ingest =
      cli("--format json ingest " + q(data_path("fixtures/academic_synthetic.csv")) + " --name academic");
  REQUIRE(ingest.exit_code == 0);
  const std::string ds = json::parse(ingest.out).at("id");
  CHECK(json::parse(ingest.out).at("row_count") == 50);

  const auto text_ingest = cli("ingest " + q(data_path("fixtures/academic_synthetic.csv")));
  CHECK(text_ingest.exit_code == 0);
  CHECK(text_ingest.out.find("academic_synthetic") != std::string::npos);

  const auto analyze = cli("--format json analyze --dataset " + ds + " --plan " +
                           q(data_path("plans/default_plan.json")));
  REQUIRE(analyze.exit_code == 0);
  const std::string run = json::parse(analyze.out).at("id");

  const auto analyze_text =
      cli("analyze --dataset " + ds + " --plan " + q(data_path("plans/default_plan.json")));
  CHECK(analyze_text.exit_code == 0);
  CHECK(analyze_text.out.find("Sum of Squares") != std::string::npos);

  const auto report = cli("report --analysis " + run);
  CHECK(report.exit_code == 0);
  CHECK(report.out.find("ANOVA") != std::string::npos);
  CHECK(report.out.find("-.538**") != std::string::npos);
  CHECK(report.out.find("** Correlation is significant at the 0.01 level (2-tailed).") !=
        std::string::npos);

  const auto report_csv = cli("report --analysis " + run + " --format csv");
  CHECK(report_csv.exit_code == 0);
  CHECK(report_csv.out.rfind("test_id,method,", 0) == 0);

  const auto report_json = cli("--format json report --analysis " + run);
  CHECK(json::parse(report_json.out).size() == 6);

  const auto condensed = cli("--format json condense --analysis " + run);
  REQUIRE(condensed.exit_code == 0);
  CHECK(json::parse(condensed.out).at("retained").size() == 3);

  const auto offline = cli("--format csv condense --plan " + q(data_path("plans/default_plan.json")) +
                           " --verdicts " + q(data_path("fixtures/condensation_verdicts.json")));
  REQUIRE(offline.exit_code == 0);
  CHECK(offline.out.find("Research Work,Qualitative and Quantitative KPI,retained,") != std::string::npos);
  CHECK(offline.out.find("State,Quantitative KPI,dropped,no significant test") != std::string::npos);

  const auto slice = cli("--format json slice --dataset " + ds +
                         " --dimensions Course,State --measures CGPA,Projects --filter Course=M.Tech --group-by State");
  REQUIRE(slice.exit_code == 0);
  const auto agg = json::parse(slice.out);
  REQUIRE(agg.size() == 2);
  std::size_t total = 0;
  for (const auto& row : agg[0].at("rows")) total += row.at("count").get<std::size_t>();
  CHECK(total == 16);

  const auto slice_text = cli("slice --dataset " + ds + " --dimensions Course --measures CGPA --filter Course=M.Tech");
  CHECK(slice_text.exit_code == 0);
  CHECK(slice_text.out.find("119.07") != std::string::npos);
}

TEST_CASE("cli: failures exit nonzero") {
  Cli cli;
  const auto bad_csv = dir_file(cli.dir.path(), "bad.csv", "a,b\n1,2,3\n");
  CHECK(cli("ingest " + q(bad_csv)).exit_code != 0);
  CHECK(cli("ingest " + q(cli.dir.path() / "missing.csv")).exit_code != 0);
  CHECK(cli("report --analysis run_0000").exit_code == 3);
  CHECK(cli("analyze --dataset ds_0000 --plan " + q(data_path("plans/default_plan.json"))).exit_code == 3);
  CHECK(cli("slice --dataset ds_0000 --dimensions a --measures b").exit_code == 3);
  CHECK(cli("").exit_code != 0);
  CHECK(cli("frobnicate").exit_code != 0);
  CHECK(cli("--format yaml condense --analysis x").exit_code != 0);
  CHECK(cli("condense").exit_code != 0);
  CHECK(cli("serve --addr nonsense").exit_code != 0);
  CHECK(cli("--help").exit_code == 0);
}
