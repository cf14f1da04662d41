#include "kpiforge/api/workspace.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <mutex>

#include "kpiforge/error.hpp"
#include "kpiforge/kpi/json_io.hpp"
#include "kpiforge/storage.hpp"

namespace kpiforge::api {

using nlohmann::json;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json cube_definition_to_json(const CubeDefinition& def) {
  return {{"id", def.id},
          {"dataset_id", def.dataset_id},
          {"dimensions", def.dimensions},
          {"measures", def.measures}};
}

}  // namespace

json run_to_json(const AnalysisRun& run) {
  json verdicts = json::array();
  for (const auto& v : run.verdicts) verdicts.push_back(kpi::verdict_to_json(v));
  return {{"id", run.id},
          {"dataset_id", run.dataset_id},
          {"created_at", run.created_at},
          {"plan", kpi::plan_to_json(run.plan)},
          {"verdicts", std::move(verdicts)},
          {"condensed", kpi::condensed_to_json(run.condensed)}};
}

AnalysisRun run_from_json(const json& doc) {
  try {
    AnalysisRun run;
    run.id = doc.at("id").get<std::string>();
    run.dataset_id = doc.at("dataset_id").get<std::string>();
    run.created_at = doc.at("created_at").get<std::string>();
    run.plan = kpi::plan_from_json(doc.at("plan"));
    run.verdicts = kpi::verdicts_from_json(doc.at("verdicts"));
    // Condensation is a pure function of registry and verdicts.
    run.condensed = kpi::condense(run.plan.registry, run.verdicts);
    return run;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, std::string("corrupt analysis document: ") + e.what());
  }
}

Workspace::Workspace(std::filesystem::path root)
    : root_(std::move(root)),
      datasets_(root_ / "datasets"),
      runs_dir_(root_ / "runs"),
      cubes_dir_(root_ / "cubes") {
  std::error_code ec;
  std::filesystem::create_directories(runs_dir_, ec);
  std::filesystem::create_directories(cubes_dir_, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create workspace under " + root_.string());
}

AnalysisRun Workspace::analyze(const std::string& dataset_id, const kpi::Plan& plan) {
  const auto ds = datasets_.load(dataset_id);
  AnalysisRun run;
  run.dataset_id = dataset_id;
  run.plan = plan;
  run.verdicts = kpi::run_plan(plan.tests, ds, plan.registry);
  run.condensed = kpi::condense(plan.registry, run.verdicts);
  run.created_at = utc_now();

  std::unique_lock lock(run_mu_);
  do {
    run.id = new_id("run_");
  } while (std::filesystem::exists(runs_dir_ / (run.id + ".json")));
  write_file_atomic(runs_dir_ / (run.id + ".json"), run_to_json(run).dump());
  return run;
}

std::string Workspace::load_run_document(const std::string& id) const {
  if (!is_safe_id(id)) throw Error(ErrorCode::not_found, "unknown analysis '" + id + "'");
  const auto path = runs_dir_ / (id + ".json");
  std::shared_lock lock(run_mu_);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::not_found, "unknown analysis '" + id + "'");
  }
  return read_file(path);
}

AnalysisRun Workspace::load_run(const std::string& id) const {
  const auto text = load_run_document(id);
  try {
    return run_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, "corrupt analysis document '" + id + "': " + e.what());
  }
}

std::pair<CubeDefinition, std::shared_ptr<const olap::Cube>> Workspace::create_cube(
    const std::string& dataset_id, const std::vector<std::string>& dimensions,
    const std::vector<std::string>& measures) {
  auto ds = std::make_shared<const data::Dataset>(datasets_.load(dataset_id));
  auto cube = std::make_shared<const olap::Cube>(olap::build_cube(ds, dimensions, measures));

  CubeDefinition def{"", dataset_id, dimensions, measures};
  std::unique_lock lock(cube_mu_);
  do {
    def.id = new_id("cube_");
  } while (cubes_.count(def.id) || std::filesystem::exists(cubes_dir_ / (def.id + ".json")));
  write_file_atomic(cubes_dir_ / (def.id + ".json"), cube_definition_to_json(def).dump());
  cubes_.emplace(def.id, cube);
  return {def, cube};
}

std::shared_ptr<const olap::Cube> Workspace::cube(const std::string& id) {
  {
    std::shared_lock lock(cube_mu_);
    if (auto it = cubes_.find(id); it != cubes_.end()) return it->second;
  }
  const auto path = cubes_dir_ / (id + ".json");
  if (!is_safe_id(id) || !std::filesystem::exists(path)) {
    throw Error(ErrorCode::not_found, "unknown cube '" + id + "'");
  }
  CubeDefinition def;
  try {
    const auto doc = json::parse(read_file(path));
    def = {doc.at("id").get<std::string>(), doc.at("dataset_id").get<std::string>(),
           doc.at("dimensions").get<std::vector<std::string>>(),
           doc.at("measures").get<std::vector<std::string>>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, "corrupt cube document '" + id + "': " + e.what());
  }
  auto ds = std::make_shared<const data::Dataset>(datasets_.load(def.dataset_id));
  auto built = std::make_shared<const olap::Cube>(olap::build_cube(ds, def.dimensions, def.measures));
  std::unique_lock lock(cube_mu_);
  return cubes_.emplace(id, std::move(built)).first->second;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("KPIFORGE_DATA_DIR"); env && *env) return env;
  return "kpiforge-data";
}

}  // namespace kpiforge::api
