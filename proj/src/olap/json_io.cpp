#include "kpiforge/olap/json_io.hpp"

namespace kpiforge::olap {

using nlohmann::json;

namespace {
template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}
}  // namespace

json aggregate_to_json(const AggregateResult& result) {
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"group", optional_json(r.group)},
                    {"measure", r.measure},
                    {"count", r.count},
                    {"sum", optional_json(r.sum)},
                    {"mean", optional_json(r.mean)},
                    {"min", optional_json(r.min)},
                    {"max", optional_json(r.max)}});
  }
  return {{"measure", result.measure},
          {"group_by", optional_json(result.group_by)},
          {"rows", std::move(rows)}};
}

json cube_to_json(const Cube& cube) {
  json dims = json::array();
  for (const auto& d : cube.dimensions()) dims.push_back({{"name", d.name}, {"levels", d.levels}});
  return {{"dimensions", std::move(dims)},
          {"measures", cube.measures()},
          {"fact_count", cube.facts().size()}};
}

}  // namespace kpiforge::olap
