#pragma once

#include <filesystem>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "kpiforge/data/dataset.hpp"

namespace kpiforge::data {

// Persisted document layout (one file per dataset, "<id>.json"):
//
//   { "format": "kpiforge.dataset/1", "id": ..., "name": ..., "row_count": N,
//     "columns": [ { "name", "kind": "numeric"|"categorical",
//                    "distinct_count", "missing_count",
//                    "values": [ number|string|null, ... ] }, ... ] }
//
// Numbers are written with round-trip precision; null marks a missing cell.
nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& doc);

// Directory of dataset documents. Writers are exclusive and atomic; readers
// may run concurrently.
class DatasetStore {
 public:
  explicit DatasetStore(std::filesystem::path dir);

  // Assigns a fresh id, persists, and returns the id.
  std::string save(const Dataset& ds);

  // Throws ErrorCode::not_found for an unknown id.
  Dataset load(const std::string& id) const;
  bool contains(const std::string& id) const;

  // Raw stored document, byte-identical across calls.
  std::string load_document(const std::string& id) const;

  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& id) const;

  std::filesystem::path dir_;
  mutable std::shared_mutex mu_;
};

}  // namespace kpiforge::data
