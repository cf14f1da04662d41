#include "kpiforge/stats/hypothesis.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kpiforge/error.hpp"
#include "kpiforge/simd/kernels.hpp"
#include "kpiforge/stats/distributions.hpp"

namespace kpiforge::stats {

GroupedSample::GroupedSample(std::vector<Group> groups) : groups_(std::move(groups)) {
  if (groups_.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "grouped sample needs at least 2 groups, got " +
                                                 std::to_string(groups_.size()));
  }
  for (const auto& g : groups_) {
    if (g.values.empty()) {
      throw Error(ErrorCode::invalid_argument, "group '" + g.label + "' is empty");
    }
    for (double v : g.values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::invalid_argument, "group '" + g.label + "' has a non-finite value");
      }
    }
    total_ += g.values.size();
  }
  if (total_ <= groups_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "grouped sample needs more observations than groups (N=" +
                    std::to_string(total_) + ", k=" + std::to_string(groups_.size()) + ")");
  }
}

AnovaTable one_way_anova(const GroupedSample& sample) {
  const auto& groups = sample.groups();
  const std::size_t k = groups.size();
  const std::size_t n = sample.total_count();

  std::vector<double> means(k);
  std::vector<bool> constant(k);
  double total_sum = 0.0;
  double global_min = std::numeric_limits<double>::infinity();
  double global_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const auto s = simd::summarize(groups[i].values);
    constant[i] = s.min == s.max;
    means[i] = constant[i] ? s.min : s.sum / static_cast<double>(s.count);
    total_sum += s.sum;
    global_min = std::min(global_min, s.min);
    global_max = std::max(global_max, s.max);
  }
  const bool all_identical = global_min == global_max;
  const double grand = all_identical ? global_min : total_sum / static_cast<double>(n);

  AnovaTable t;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& values = groups[i].values;
    const double dev = means[i] - grand;
    t.ss_between += static_cast<double>(values.size()) * dev * dev;
    if (!constant[i]) t.ss_within += simd::sum_sq_dev(values, means[i]);
    t.ss_total += simd::sum_sq_dev(values, grand);
  }
  t.df_between = static_cast<int>(k) - 1;
  t.df_within = static_cast<int>(n - k);
  t.df_total = static_cast<int>(n) - 1;
  t.ms_between = t.ss_between / t.df_between;
  t.ms_within = t.ss_within / t.df_within;

  if (all_identical) {
    t.f_stat = 0.0;
    t.p_value = 1.0;
    return t;
  }
  if (t.ss_within == 0.0) {
    throw Error(ErrorCode::degenerate_input,
                "no within-group variation but group means differ: F is infinite");
  }
  t.f_stat = t.ms_between / t.ms_within;
  t.p_value = f_sf(t.f_stat, t.df_between, t.df_within);
  return t;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::length_mismatch, "correlation series differ in length (" +
                                                std::to_string(x.size()) + " vs " +
                                                std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::too_few_points,
                "correlation needs at least 3 complete pairs, got " + std::to_string(x.size()));
  }
  const auto sx = simd::summarize(x);
  const auto sy = simd::summarize(y);
  if (!std::isfinite(sx.sum) || !std::isfinite(sy.sum)) {
    throw Error(ErrorCode::invalid_argument, "correlation input has non-finite values");
  }
  if (sx.min == sx.max || sy.min == sy.max) {
    throw Error(ErrorCode::constant_series, "correlation is undefined for a constant series");
  }
  const double n = static_cast<double>(x.size());
  const auto m = simd::co_moments(x, y, sx.sum / n, sy.sum / n);

  CorrelationResult out;
  out.n_pairs = static_cast<int>(x.size());
  out.df = out.n_pairs - 2;
  double r = m.sxy / std::sqrt(m.sxx * m.syy);
  // Rounding can push a perfectly linear relation a few ulps off +/-1.
  if (std::fabs(r) >= 1.0 - 4.0 * std::numeric_limits<double>::epsilon()) {
    r = std::copysign(1.0, r);
  }
  out.r = r;
  if (std::fabs(r) == 1.0) {
    out.t_stat = std::copysign(std::numeric_limits<double>::infinity(), r);
    out.p_two_tailed = 0.0;
    return out;
  }
  out.t_stat = r * std::sqrt(static_cast<double>(out.df)) / std::sqrt(1.0 - r * r);
  out.p_two_tailed = t_sf_two_tailed(out.t_stat, out.df);
  return out;
}

ChiSquareResult chi_square_independence(const ContingencyTable& table) {
  if (table.empty() || table.front().empty()) {
    throw Error(ErrorCode::empty_table, "contingency table is empty");
  }
  const std::size_t rows = table.size();
  const std::size_t cols = table.front().size();
  if (rows < 2 || cols < 2) {
    throw Error(ErrorCode::empty_table, "contingency table needs at least 2 rows and 2 columns");
  }
  std::vector<double> row_sum(rows, 0.0);
  std::vector<double> col_sum(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (table[i].size() != cols) {
      throw Error(ErrorCode::invalid_argument, "contingency table rows differ in length");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = table[i][j];
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorCode::invalid_argument, "contingency counts must be finite and >= 0");
      }
      row_sum[i] += c;
      col_sum[j] += c;
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_sum[i] <= 0.0) {
      throw Error(ErrorCode::zero_marginal, "row " + std::to_string(i) + " has a zero total");
    }
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (col_sum[j] <= 0.0) {
      throw Error(ErrorCode::zero_marginal, "column " + std::to_string(j) + " has a zero total");
    }
  }
  const double grand = simd::sum(row_sum);

  ChiSquareResult out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double expected = row_sum[i] * col_sum[j] / grand;
      const double diff = table[i][j] - expected;
      out.statistic += diff * diff / expected;
    }
  }
  out.df = static_cast<int>((rows - 1) * (cols - 1));
  out.p_value = chi_square_sf(out.statistic, out.df);
  return out;
}

}  // namespace kpiforge::stats
