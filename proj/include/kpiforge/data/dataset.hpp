#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kpiforge/stats/hypothesis.hpp"

namespace kpiforge::data {

// A numeric column with at most this many distinct values may be used as a
// grouping factor or cube dimension.
inline constexpr std::size_t kMaxNumericLevels = 12;

enum class ColumnKind { numeric, categorical };

std::string_view to_string(ColumnKind kind);

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  std::size_t distinct_count = 0;  // over non-missing cells
  std::size_t missing_count = 0;

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;
};

using NumericCells = std::vector<std::optional<double>>;
using TextCells = std::vector<std::optional<std::string>>;

class Column {
 public:
  static Column numeric(std::string name, NumericCells cells);
  static Column categorical(std::string name, TextCells cells);

  const ColumnSchema& schema() const noexcept { return schema_; }
  const std::string& name() const noexcept { return schema_.name; }
  ColumnKind kind() const noexcept { return schema_.kind; }
  std::size_t size() const noexcept;

  bool is_missing(std::size_t row) const;

  // nullptr unless the column has that kind.
  const NumericCells* numeric_cells() const noexcept { return std::get_if<NumericCells>(&cells_); }
  const TextCells* text_cells() const noexcept { return std::get_if<TextCells>(&cells_); }

  // Text form of a cell, used as a level label; numbers use the shortest
  // round-trip decimal form. nullopt for a missing cell.
  std::optional<std::string> label(std::size_t row) const;

  // Categorical, or numeric with few enough distinct values.
  bool is_leveled() const noexcept;

  friend bool operator==(const Column&, const Column&) = default;

 private:
  Column(ColumnSchema schema, std::variant<NumericCells, TextCells> cells)
      : schema_(std::move(schema)), cells_(std::move(cells)) {}

  ColumnSchema schema_;
  std::variant<NumericCells, TextCells> cells_;
};

// Immutable typed columnar table. Column names are unique and non-empty and
// every column has row_count() cells.
class Dataset {
 public:
  Dataset(std::string id, std::string name, std::vector<Column> columns);

  const std::string& id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t row_count() const noexcept { return rows_; }
  const std::vector<Column>& columns() const noexcept { return columns_; }

  const Column* find(std::string_view column) const noexcept;
  // Throws ErrorCode::unknown_column.
  const Column& column(std::string_view column) const;

  std::vector<ColumnSchema> schema() const;

  Dataset with_id(std::string id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::string id_;
  std::string name_;
  std::vector<Column> columns_;
  std::size_t rows_ = 0;
};

/// Parses RFC 4180 style CSV (UTF-8, header row required, optional BOM,
/// LF or CRLF line ends). An empty cell is missing; a column is numeric iff
/// every non-empty cell parses as a finite real (surrounding spaces and
/// tabs are ignored for that test), otherwise categorical.
///
/// Throws ErrorCode::empty_file or ErrorCode::malformed_csv (ragged rows,
/// duplicate or empty header names, bad quoting).
Dataset load_csv(std::string_view bytes, std::string name);

/// Inverse of load_csv for datasets it produced.
std::string to_csv(const Dataset& ds);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Partitions `dependent` by the levels of `factor` in first-appearance
/// order, dropping rows where either cell is missing.
///
/// Throws kind_mismatch for a non-numeric dependent, too_many_levels for a
/// numeric factor with more than kMaxNumericLevels distinct values, and
/// invalid_argument when fewer than two groups remain.
stats::GroupedSample group_by_factor(const Dataset& ds, std::string_view dependent,
                                     std::string_view factor);

struct PairedSeries {
  std::vector<double> x;
  std::vector<double> y;
};

/// Aligned vectors over the rows where both numeric cells are present.
PairedSeries pairwise_complete(const Dataset& ds, std::string_view a, std::string_view b);

struct CrossTab {
  std::vector<std::string> row_levels;
  std::vector<std::string> column_levels;
  stats::ContingencyTable counts;
};

/// Contingency counts of two leveled columns over rows where both are present.
CrossTab cross_tabulate(const Dataset& ds, std::string_view rows, std::string_view columns);

}  // namespace kpiforge::data
