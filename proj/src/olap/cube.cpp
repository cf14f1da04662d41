#include "kpiforge/olap/cube.hpp"

#include <unordered_map>
#include <unordered_set>

#include "kpiforge/error.hpp"
#include "kpiforge/simd/kernels.hpp"

namespace kpiforge::olap {

const Dimension* Cube::find_dimension(std::string_view name) const noexcept {
  for (const auto& d : dimensions_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

Cube build_cube(std::shared_ptr<const data::Dataset> ds, const std::vector<std::string>& dimensions,
                const std::vector<std::string>& measures) {
  if (!ds) throw Error(ErrorCode::invalid_argument, "cube needs a dataset");
  if (dimensions.empty()) throw Error(ErrorCode::invalid_argument, "cube needs at least one dimension");
  if (measures.empty()) throw Error(ErrorCode::invalid_argument, "cube needs at least one measure");

  std::unordered_set<std::string> dim_names(dimensions.begin(), dimensions.end());
  if (dim_names.size() != dimensions.size()) {
    throw Error(ErrorCode::invalid_argument, "a dimension is listed twice");
  }
  std::unordered_set<std::string> measure_names;
  for (const auto& m : measures) {
    if (dim_names.count(m)) {
      throw Error(ErrorCode::overlap, "'" + m + "' is listed as both dimension and measure");
    }
    if (!measure_names.insert(m).second) {
      throw Error(ErrorCode::invalid_argument, "measure '" + m + "' is listed twice");
    }
  }

  Cube cube;
  for (const auto& name : dimensions) {
    const auto& col = ds->column(name);
    if (!col.is_leveled()) {
      throw Error(ErrorCode::too_many_levels,
                  "dimension '" + name + "' is numeric with " +
                      std::to_string(col.schema().distinct_count) + " distinct values");
    }
    Dimension dim{name, {}};
    std::unordered_set<std::string> seen;
    for (std::size_t row = 0; row < ds->row_count(); ++row) {
      auto level = col.label(row);
      if (level && seen.insert(*level).second) dim.levels.push_back(std::move(*level));
    }
    cube.dimensions_.push_back(std::move(dim));
  }
  for (const auto& name : measures) {
    if (ds->column(name).kind() != data::ColumnKind::numeric) {
      throw Error(ErrorCode::kind_mismatch, "measure '" + name + "' must be numeric");
    }
    cube.measures_.push_back(name);
  }
  cube.facts_.resize(ds->row_count());
  for (std::size_t i = 0; i < cube.facts_.size(); ++i) cube.facts_[i] = i;
  cube.dataset_ = std::move(ds);
  return cube;
}

Cube slice(const Cube& cube, const Filter& filter) { return dice(cube, SliceSpec{{filter}}); }

Cube slice(const Cube& cube, const SliceSpec& spec) {
  if (spec.filters.size() != 1) {
    throw Error(ErrorCode::invalid_argument, "slice takes exactly one filter; use dice for more");
  }
  return dice(cube, spec);
}

Cube dice(const Cube& cube, const SliceSpec& spec) {
  if (spec.filters.empty()) throw Error(ErrorCode::invalid_argument, "dice needs at least one filter");

  struct Bound {
    const data::Column* column;
    const std::string* level;
  };
  std::vector<Bound> bound;
  std::unordered_set<std::string> used;
  for (const auto& f : spec.filters) {
    const auto* dim = cube.find_dimension(f.dimension);
    if (!dim) throw Error(ErrorCode::unknown_dimension, "unknown dimension '" + f.dimension + "'");
    if (!used.insert(f.dimension).second) {
      throw Error(ErrorCode::invalid_argument, "dimension '" + f.dimension + "' filtered twice");
    }
    bool known = false;
    for (const auto& l : dim->levels) known = known || l == f.level;
    if (!known) {
      throw Error(ErrorCode::unknown_level,
                  "dimension '" + f.dimension + "' has no level '" + f.level + "'");
    }
    bound.push_back({&cube.dataset().column(f.dimension), &f.level});
  }

  Cube out = cube;
  out.facts_.clear();
  for (std::size_t row : cube.facts_) {
    bool keep = true;
    for (const auto& b : bound) {
      const auto label = b.column->label(row);
      if (!label || *label != *b.level) {
        keep = false;
        break;
      }
    }
    if (keep) out.facts_.push_back(row);
  }
  return out;
}

Cube roll_up(const Cube& cube, std::string_view dimension) {
  if (!cube.find_dimension(dimension)) {
    throw Error(ErrorCode::unknown_dimension, "unknown dimension '" + std::string(dimension) + "'");
  }
  Cube out = cube;
  std::erase_if(out.dimensions_, [&](const Dimension& d) { return d.name == dimension; });
  return out;
}

namespace {

AggregateRow summarize_group(std::optional<std::string> group, const std::string& measure,
                             const std::vector<double>& values) {
  AggregateRow row{std::move(group), measure, values.size(), {}, {}, {}, {}};
  if (values.empty()) return row;
  const auto s = simd::summarize(values);
  row.sum = s.sum;
  row.mean = s.sum / static_cast<double>(s.count);
  row.min = s.min;
  row.max = s.max;
  return row;
}

}  // namespace

AggregateResult aggregate(const Cube& cube, std::string_view measure,
                          std::optional<std::string_view> group_by) {
  bool known = false;
  for (const auto& m : cube.measures()) known = known || m == measure;
  if (!known) {
    throw Error(ErrorCode::unknown_column, "'" + std::string(measure) + "' is not a cube measure");
  }
  const Dimension* dim = nullptr;
  if (group_by) {
    dim = cube.find_dimension(*group_by);
    if (!dim) {
      throw Error(ErrorCode::unknown_dimension, "unknown dimension '" + std::string(*group_by) + "'");
    }
  }

  AggregateResult result;
  result.measure = std::string(measure);
  if (dim) result.group_by = dim->name;
  if (cube.facts().empty()) return result;

  const auto& values = *cube.dataset().column(measure).numeric_cells();
  if (!dim) {
    std::vector<double> present;
    present.reserve(cube.facts().size());
    for (std::size_t row : cube.facts()) {
      if (values[row]) present.push_back(*values[row]);
    }
    result.rows.push_back(summarize_group(std::nullopt, result.measure, present));
    return result;
  }

  const auto& column = cube.dataset().column(dim->name);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < dim->levels.size(); ++i) index.emplace(dim->levels[i], i);
  std::vector<std::vector<double>> buckets(dim->levels.size());
  std::vector<double> unlabeled;
  bool any_unlabeled = false;
  for (std::size_t row : cube.facts()) {
    const auto label = column.label(row);
    std::vector<double>* bucket = &unlabeled;
    if (label) {
      bucket = &buckets[index.at(*label)];
    } else {
      any_unlabeled = true;
    }
    if (values[row]) bucket->push_back(*values[row]);
  }
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    result.rows.push_back(summarize_group(dim->levels[i], result.measure, buckets[i]));
  }
  if (any_unlabeled) result.rows.push_back(summarize_group(std::nullopt, result.measure, unlabeled));
  return result;
}

}  // namespace kpiforge::olap
