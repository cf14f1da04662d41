#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpiforge/data/dataset.hpp"

namespace kpiforge::olap {

struct Dimension {
  std::string name;
  std::vector<std::string> levels;  // distinct non-missing labels, first-appearance order

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

struct Filter {
  std::string dimension;
  std::string level;
};

// Conjunction of equality filters, at most one per dimension.
struct SliceSpec {
  std::vector<Filter> filters;
};

struct AggregateRow {
  // Level label; nullopt for the ungrouped row, or for the trailing row that
  // collects facts whose group_by cell is missing.
  std::optional<std::string> group;
  std::string measure;
  std::size_t count = 0;  // non-missing measure cells
  std::optional<double> sum;
  std::optional<double> mean;
  std::optional<double> min;
  std::optional<double> max;
};

struct AggregateResult {
  std::optional<std::string> group_by;
  std::string measure;
  std::vector<AggregateRow> rows;
};

// Immutable view of a dataset as dimensions, measures and a fact list.
// Operations return new cubes; the source dataset is shared, never copied.
class Cube {
 public:
  const data::Dataset& dataset() const noexcept { return *dataset_; }
  const std::shared_ptr<const data::Dataset>& dataset_ptr() const noexcept { return dataset_; }
  const std::vector<Dimension>& dimensions() const noexcept { return dimensions_; }
  const std::vector<std::string>& measures() const noexcept { return measures_; }
  // Row indices into the dataset, ascending.
  const std::vector<std::size_t>& facts() const noexcept { return facts_; }

  const Dimension* find_dimension(std::string_view name) const noexcept;

 private:
  friend Cube build_cube(std::shared_ptr<const data::Dataset>, const std::vector<std::string>&,
                         const std::vector<std::string>&);
  friend Cube dice(const Cube&, const SliceSpec&);
  friend Cube roll_up(const Cube&, std::string_view);

  std::shared_ptr<const data::Dataset> dataset_;
  std::vector<Dimension> dimensions_;
  std::vector<std::string> measures_;
  std::vector<std::size_t> facts_;
};

/// Dimensions must be leveled columns (categorical, or numeric with at most
/// data::kMaxNumericLevels distinct values); measures must be numeric. Throws
/// unknown_column, kind_mismatch, too_many_levels, overlap, or
/// invalid_argument (empty or repeated names).
Cube build_cube(std::shared_ptr<const data::Dataset> ds, const std::vector<std::string>& dimensions,
                const std::vector<std::string>& measures);

/// Single-filter restriction. A level with no matching facts gives an empty
/// cube. Throws unknown_dimension or unknown_level.
Cube slice(const Cube& cube, const Filter& filter);
Cube slice(const Cube& cube, const SliceSpec& spec);  // spec must hold exactly one filter

/// Conjunction of one or more filters; order does not matter.
Cube dice(const Cube& cube, const SliceSpec& spec);

/// Drops a dimension; facts are untouched.
Cube roll_up(const Cube& cube, std::string_view dimension);

/// count/sum/mean/min/max of `measure` over the cube's facts, optionally per
/// level of `group_by` (in level order, zero-count levels included). An empty
/// cube yields no rows.
AggregateResult aggregate(const Cube& cube, std::string_view measure,
                          std::optional<std::string_view> group_by = std::nullopt);

}  // namespace kpiforge::olap
