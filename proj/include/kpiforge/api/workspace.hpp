#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "kpiforge/data/store.hpp"
#include "kpiforge/kpi/engine.hpp"
#include "kpiforge/olap/cube.hpp"

namespace kpiforge::api {

// One execution of a plan against a stored dataset. Immutable once written.
struct AnalysisRun {
  std::string id;
  std::string dataset_id;
  kpi::Plan plan;
  std::vector<kpi::TestVerdict> verdicts;
  kpi::CondensedKpiList condensed;
  std::string created_at;  // ISO 8601 UTC
};

nlohmann::json run_to_json(const AnalysisRun& run);
AnalysisRun run_from_json(const nlohmann::json& doc);

struct CubeDefinition {
  std::string id;
  std::string dataset_id;
  std::vector<std::string> dimensions;
  std::vector<std::string> measures;
};

// On-disk state shared by the CLI and the HTTP service:
//
//   <root>/datasets/<id>.json   dataset documents
//   <root>/runs/<id>.json       analysis runs
//   <root>/cubes/<id>.json      cube definitions (cubes are rebuilt on load)
//
// All writes are atomic (temp file + rename). Methods are safe to call from
// multiple threads.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  data::DatasetStore& datasets() noexcept { return datasets_; }
  const data::DatasetStore& datasets() const noexcept { return datasets_; }

  // Runs the plan, condenses, persists. Throws not_found for an unknown
  // dataset; plan problems surface as invalid_plan/empty_plan/duplicate_id.
  AnalysisRun analyze(const std::string& dataset_id, const kpi::Plan& plan);
  AnalysisRun load_run(const std::string& id) const;
  // Stored bytes of a run document.
  std::string load_run_document(const std::string& id) const;

  std::pair<CubeDefinition, std::shared_ptr<const olap::Cube>> create_cube(
      const std::string& dataset_id, const std::vector<std::string>& dimensions,
      const std::vector<std::string>& measures);
  // Served from memory; falls back to the persisted definition.
  std::shared_ptr<const olap::Cube> cube(const std::string& id);

 private:
  std::filesystem::path root_;
  data::DatasetStore datasets_;
  std::filesystem::path runs_dir_;
  std::filesystem::path cubes_dir_;
  mutable std::shared_mutex cube_mu_;
  std::map<std::string, std::shared_ptr<const olap::Cube>> cubes_;
  mutable std::shared_mutex run_mu_;
};

// KPIFORGE_DATA_DIR, else "./kpiforge-data".
std::filesystem::path default_data_dir();

}  // namespace kpiforge::api
