#include "kpiforge/data/dataset.hpp"

#include <array>
#include <charconv>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kpiforge/error.hpp"

namespace kpiforge::data {

std::string_view to_string(ColumnKind kind) {
  return kind == ColumnKind::numeric ? "numeric" : "categorical";
}

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

Column Column::numeric(std::string name, NumericCells cells) {
  ColumnSchema schema{std::move(name), ColumnKind::numeric, 0, 0};
  std::set<double> distinct;
  for (const auto& c : cells) {
    if (c) {
      distinct.insert(*c);
    } else {
      ++schema.missing_count;
    }
  }
  schema.distinct_count = distinct.size();
  return Column(std::move(schema), std::move(cells));
}

Column Column::categorical(std::string name, TextCells cells) {
  ColumnSchema schema{std::move(name), ColumnKind::categorical, 0, 0};
  std::unordered_set<std::string> distinct;
  for (const auto& c : cells) {
    if (c) {
      distinct.insert(*c);
    } else {
      ++schema.missing_count;
    }
  }
  schema.distinct_count = distinct.size();
  return Column(std::move(schema), std::move(cells));
}

std::size_t Column::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, cells_);
}

bool Column::is_missing(std::size_t row) const {
  return std::visit([row](const auto& v) { return !v.at(row).has_value(); }, cells_);
}

std::optional<std::string> Column::label(std::size_t row) const {
  if (const auto* num = numeric_cells()) {
    const auto& c = num->at(row);
    if (!c) return std::nullopt;
    return format_number(*c);
  }
  return text_cells()->at(row);
}

bool Column::is_leveled() const noexcept {
  return kind() == ColumnKind::categorical || schema_.distinct_count <= kMaxNumericLevels;
}

Dataset::Dataset(std::string id, std::string name, std::vector<Column> columns)
    : id_(std::move(id)), name_(std::move(name)), columns_(std::move(columns)) {
  rows_ = columns_.empty() ? 0 : columns_.front().size();
  std::unordered_set<std::string> seen;
  for (const auto& c : columns_) {
    if (c.name().empty()) throw Error(ErrorCode::invalid_argument, "column name is empty");
    if (!seen.insert(c.name()).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate column name '" + c.name() + "'");
    }
    if (c.size() != rows_) {
      throw Error(ErrorCode::invalid_argument, "column '" + c.name() + "' has " +
                                                   std::to_string(c.size()) + " cells, expected " +
                                                   std::to_string(rows_));
    }
  }
}

const Column* Dataset::find(std::string_view column) const noexcept {
  for (const auto& c : columns_) {
    if (c.name() == column) return &c;
  }
  return nullptr;
}

const Column& Dataset::column(std::string_view column) const {
  if (const auto* c = find(column)) return *c;
  throw Error(ErrorCode::unknown_column, "unknown column '" + std::string(column) + "'");
}

std::vector<ColumnSchema> Dataset::schema() const {
  std::vector<ColumnSchema> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.schema());
  return out;
}

Dataset Dataset::with_id(std::string id) const {
  Dataset copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

namespace {

const NumericCells& require_numeric(const Column& c, std::string_view role) {
  const auto* cells = c.numeric_cells();
  if (!cells) {
    throw Error(ErrorCode::kind_mismatch, std::string(role) + " column '" + c.name() +
                                              "' must be numeric, but it is categorical");
  }
  return *cells;
}

void require_leveled(const Column& c) {
  if (!c.is_leveled()) {
    throw Error(ErrorCode::too_many_levels,
                "column '" + c.name() + "' has " + std::to_string(c.schema().distinct_count) +
                    " distinct numeric values; at most " + std::to_string(kMaxNumericLevels) +
                    " can be used as levels");
  }
}

}  // namespace

stats::GroupedSample group_by_factor(const Dataset& ds, std::string_view dependent,
                                     std::string_view factor) {
  const auto& dep = ds.column(dependent);
  const auto& fac = ds.column(factor);
  const auto& values = require_numeric(dep, "dependent");
  require_leveled(fac);

  std::vector<stats::Group> groups;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t row = 0; row < ds.row_count(); ++row) {
    const auto& v = values[row];
    if (!v) continue;
    auto level = fac.label(row);
    if (!level) continue;
    auto [it, inserted] = index.try_emplace(*level, groups.size());
    if (inserted) groups.push_back({std::move(*level), {}});
    groups[it->second].values.push_back(*v);
  }
  if (groups.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "factor '" + fac.name() + "' has " + std::to_string(groups.size()) +
                    " level(s) among complete rows; ANOVA needs at least 2");
  }
  return stats::GroupedSample(std::move(groups));
}

PairedSeries pairwise_complete(const Dataset& ds, std::string_view a, std::string_view b) {
  const auto& xa = require_numeric(ds.column(a), "correlation");
  const auto& xb = require_numeric(ds.column(b), "correlation");
  PairedSeries out;
  for (std::size_t row = 0; row < ds.row_count(); ++row) {
    if (xa[row] && xb[row]) {
      out.x.push_back(*xa[row]);
      out.y.push_back(*xb[row]);
    }
  }
  return out;
}

CrossTab cross_tabulate(const Dataset& ds, std::string_view rows, std::string_view columns) {
  const auto& rc = ds.column(rows);
  const auto& cc = ds.column(columns);
  require_leveled(rc);
  require_leveled(cc);

  CrossTab out;
  std::unordered_map<std::string, std::size_t> row_index;
  std::unordered_map<std::string, std::size_t> col_index;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t row = 0; row < ds.row_count(); ++row) {
    auto r = rc.label(row);
    auto c = cc.label(row);
    if (!r || !c) continue;
    auto [ri, rnew] = row_index.try_emplace(*r, out.row_levels.size());
    if (rnew) out.row_levels.push_back(*r);
    auto [ci, cnew] = col_index.try_emplace(*c, out.column_levels.size());
    if (cnew) out.column_levels.push_back(*c);
    cells.emplace_back(ri->second, ci->second);
  }
  out.counts.assign(out.row_levels.size(), std::vector<double>(out.column_levels.size(), 0.0));
  for (auto [r, c] : cells) out.counts[r][c] += 1.0;
  return out;
}

}  // namespace kpiforge::data
