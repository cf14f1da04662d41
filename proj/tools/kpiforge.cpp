// kpiforge command-line front end. Shares the on-disk workspace with the
// HTTP service, so anything ingested here is visible to `serve` and back.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpiforge/api/service.hpp"
#include "kpiforge/api/workspace.hpp"
#include "kpiforge/data/dataset.hpp"
#include "kpiforge/error.hpp"
#include "kpiforge/kpi/json_io.hpp"
#include "kpiforge/olap/cube.hpp"
#include "kpiforge/report/report.hpp"
#include "kpiforge/storage.hpp"

namespace {

using namespace kpiforge;
using nlohmann::json;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 3;
    case ErrorCode::io: return 4;
    case ErrorCode::malformed_csv:
    case ErrorCode::empty_file: return 5;
    default: return 1;
  }
}

json read_json_file(const std::string& path) {
  const auto text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_plan, path + ": not valid JSON: " + e.what());
  }
}

olap::Filter parse_filter_arg(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::invalid_argument, "--filter expects dimension=level, got '" + arg + "'");
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kpiforge: KPI significance testing and OLAP slicing over tabular data"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand (report --format csv).
  app.fallthrough();

  std::string data_dir = api::default_data_dir().string();
  std::string format_name = "text";
  app.add_option("--data-dir", data_dir, "Workspace directory (env KPIFORGE_DATA_DIR)");
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load a CSV file into the workspace");
  std::string csv_path, dataset_name;
  ingest->add_option("csv", csv_path, "CSV file")->required();
  ingest->add_option("--name", dataset_name, "Dataset name (default: file name)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run a test plan against a dataset");
  std::string dataset_id, plan_path;
  analyze->add_option("--dataset", dataset_id, "Dataset id")->required();
  analyze->add_option("--plan", plan_path, "Plan JSON file")->required();

  // report
  auto* report_cmd = app.add_subcommand("report", "Render the verdicts of an analysis");
  std::string analysis_id;
  report_cmd->add_option("--analysis", analysis_id, "Analysis id")->required();

  // condense
  auto* condense = app.add_subcommand("condense", "Print the condensed KPI list");
  std::string verdicts_path;
  auto* c_analysis = condense->add_option("--analysis", analysis_id, "Analysis id");
  auto* c_plan = condense->add_option("--plan", plan_path, "Plan JSON file (registry)");
  auto* c_verdicts = condense->add_option("--verdicts", verdicts_path, "Verdicts JSON file");
  c_analysis->excludes(c_plan)->excludes(c_verdicts);
  c_plan->needs(c_verdicts);
  c_verdicts->needs(c_plan);

  // slice
  auto* slice_cmd = app.add_subcommand("slice", "Slice/dice a dataset and aggregate measures");
  std::vector<std::string> dimensions, measures, filters;
  std::string group_by;
  slice_cmd->add_option("--dataset", dataset_id, "Dataset id")->required();
  slice_cmd->add_option("--dimensions", dimensions, "Dimension columns")->required()->delimiter(',');
  slice_cmd->add_option("--measures", measures, "Measure columns")->required()->delimiter(',');
  slice_cmd->add_option("--filter", filters, "dimension=level (repeatable)");
  slice_cmd->add_option("--group-by", group_by, "Group rows by this dimension");

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  std::string addr = api::default_address();
  serve->add_option("--addr", addr, "host:port (env KPIFORGE_ADDR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto format = report::parse_format(format_name);

    if (*serve) {
      const auto [host, port] = api::parse_address(addr);
      api::Workspace ws(data_dir);
      api::Service service(ws);
      service.serve(host, port, [&, host = host](int bound) {
        std::cerr << "kpiforge: serving on " << host << ":" << bound << " (data dir "
                  << ws.root().string() << ")\n";
      });
      return 0;
    }

    api::Workspace ws(data_dir);

    if (*ingest) {
      if (dataset_name.empty()) dataset_name = std::filesystem::path(csv_path).stem().string();
      const auto ds = data::load_csv(read_file(csv_path), dataset_name);
      const auto id = ws.datasets().save(ds);
      if (format == report::Format::json) {
        json cols = json::array();
        for (const auto& s : ds.schema()) {
          cols.push_back({{"name", s.name}, {"kind", data::to_string(s.kind)},
                          {"distinct_count", s.distinct_count}, {"missing_count", s.missing_count}});
        }
        std::cout << json{{"id", id}, {"name", ds.name()}, {"row_count", ds.row_count()},
                          {"schema", cols}}.dump(2)
                  << '\n';
      } else if (format == report::Format::csv) {
        std::cout << "id,column,kind,distinct_count,missing_count\n";
        for (const auto& s : ds.schema()) {
          std::cout << id << ',' << s.name << ',' << data::to_string(s.kind) << ','
                    << s.distinct_count << ',' << s.missing_count << '\n';
        }
      } else {
        std::cout << "Dataset " << id << " '" << ds.name() << "': " << ds.row_count() << " rows\n";
        for (const auto& s : ds.schema()) {
          std::cout << "  " << s.name << "  " << data::to_string(s.kind) << ", "
                    << s.distinct_count << " distinct, " << s.missing_count << " missing\n";
        }
      }
      return 0;
    }

    if (*analyze) {
      const auto plan = kpi::plan_from_json(read_json_file(plan_path));
      const auto run = ws.analyze(dataset_id, plan);
      if (format == report::Format::json) {
        std::cout << api::run_to_json(run).dump(2) << '\n';
      } else {
        std::cout << report::render_verdicts(run.verdicts, format);
        if (format == report::Format::text) std::cout << "\nAnalysis " << run.id << '\n';
        std::cerr << "analysis id: " << run.id << '\n';
      }
      return 0;
    }

    if (*report_cmd) {
      const auto run = ws.load_run(analysis_id);
      std::cout << report::render_verdicts(run.verdicts, format);
      return 0;
    }

    if (*condense) {
      kpi::CondensedKpiList list;
      if (!analysis_id.empty()) {
        list = ws.load_run(analysis_id).condensed;
      } else if (!plan_path.empty()) {
        const auto plan = kpi::plan_from_json(read_json_file(plan_path));
        json doc;
        try {
          doc = json::parse(read_file(verdicts_path));
        } catch (const json::exception& e) {
          throw Error(ErrorCode::invalid_argument, verdicts_path + ": not valid JSON: " + e.what());
        }
        list = kpi::condense(plan.registry, kpi::verdicts_from_json(doc));
      } else {
        throw Error(ErrorCode::invalid_argument, "condense needs --analysis or --plan with --verdicts");
      }
      std::cout << report::render_condensed(list, format);
      return 0;
    }

    if (*slice_cmd) {
      auto ds = std::make_shared<const data::Dataset>(ws.datasets().load(dataset_id));
      olap::Cube cube = olap::build_cube(ds, dimensions, measures);
      if (!filters.empty()) {
        olap::SliceSpec spec;
        for (const auto& f : filters) spec.filters.push_back(parse_filter_arg(f));
        cube = olap::dice(cube, spec);
      }
      std::vector<olap::AggregateResult> results;
      for (const auto& m : measures) {
        results.push_back(olap::aggregate(
            cube, m, group_by.empty() ? std::nullopt : std::optional<std::string_view>(group_by)));
      }
      std::cout << report::render_aggregates(results, format);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "kpiforge: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "kpiforge: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
