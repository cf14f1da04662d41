#include "kpiforge/data/store.hpp"

#include <mutex>

#include "kpiforge/error.hpp"
#include "kpiforge/storage.hpp"

namespace kpiforge::data {

using nlohmann::json;

namespace {
constexpr const char* kFormat = "kpiforge.dataset/1";
}

json dataset_to_json(const Dataset& ds) {
  json cols = json::array();
  for (const auto& c : ds.columns()) {
    json values = json::array();
    if (const auto* num = c.numeric_cells()) {
      for (const auto& v : *num) values.push_back(v ? json(*v) : json(nullptr));
    } else {
      for (const auto& v : *c.text_cells()) values.push_back(v ? json(*v) : json(nullptr));
    }
    cols.push_back({{"name", c.name()},
                    {"kind", to_string(c.kind())},
                    {"distinct_count", c.schema().distinct_count},
                    {"missing_count", c.schema().missing_count},
                    {"values", std::move(values)}});
  }
  return {{"format", kFormat},
          {"id", ds.id()},
          {"name", ds.name()},
          {"row_count", ds.row_count()},
          {"columns", std::move(cols)}};
}

Dataset dataset_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      throw Error(ErrorCode::io, "unsupported dataset document format");
    }
    std::vector<Column> columns;
    for (const auto& c : doc.at("columns")) {
      const auto name = c.at("name").get<std::string>();
      const auto kind = c.at("kind").get<std::string>();
      const auto& values = c.at("values");
      if (kind == "numeric") {
        NumericCells cells;
        cells.reserve(values.size());
        for (const auto& v : values) {
          cells.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
        }
        columns.push_back(Column::numeric(name, std::move(cells)));
      } else if (kind == "categorical") {
        TextCells cells;
        cells.reserve(values.size());
        for (const auto& v : values) {
          cells.push_back(v.is_null() ? std::nullopt
                                      : std::optional<std::string>(v.get<std::string>()));
        }
        columns.push_back(Column::categorical(name, std::move(cells)));
      } else {
        throw Error(ErrorCode::io, "unknown column kind '" + kind + "'");
      }
    }
    Dataset ds(doc.at("id").get<std::string>(), doc.at("name").get<std::string>(),
               std::move(columns));
    if (ds.row_count() != doc.at("row_count").get<std::size_t>()) {
      throw Error(ErrorCode::io, "dataset document row_count does not match its columns");
    }
    return ds;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, std::string("corrupt dataset document: ") + e.what());
  }
}

DatasetStore::DatasetStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir_.string() + ": " + ec.message());
}

std::filesystem::path DatasetStore::path_for(const std::string& id) const {
  if (!is_safe_id(id)) throw Error(ErrorCode::not_found, "unknown dataset '" + id + "'");
  return dir_ / (id + ".json");
}

std::string DatasetStore::save(const Dataset& ds) {
  std::unique_lock lock(mu_);
  std::string id;
  do {
    id = new_id("ds_");
  } while (std::filesystem::exists(dir_ / (id + ".json")));
  write_file_atomic(path_for(id), dataset_to_json(ds.with_id(id)).dump());
  return id;
}

bool DatasetStore::contains(const std::string& id) const {
  std::shared_lock lock(mu_);
  return is_safe_id(id) && std::filesystem::exists(dir_ / (id + ".json"));
}

std::string DatasetStore::load_document(const std::string& id) const {
  const auto path = path_for(id);
  std::shared_lock lock(mu_);
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::not_found, "unknown dataset '" + id + "'");
  }
  return read_file(path);
}

Dataset DatasetStore::load(const std::string& id) const {
  const auto text = load_document(id);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, "corrupt dataset document '" + id + "': " + e.what());
  }
  return dataset_from_json(doc);
}

}  // namespace kpiforge::data
