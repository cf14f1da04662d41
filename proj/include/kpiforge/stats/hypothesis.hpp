#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kpiforge::stats {

struct Group {
  std::string label;
  std::vector<double> values;
};

// Dependent values partitioned by the levels of one grouping factor.
// Invariants (checked on construction): at least two groups, no empty
// group, finite values, and more observations than groups.
class GroupedSample {
 public:
  explicit GroupedSample(std::vector<Group> groups);

  const std::vector<Group>& groups() const noexcept { return groups_; }
  std::size_t group_count() const noexcept { return groups_.size(); }
  std::size_t total_count() const noexcept { return total_; }

 private:
  std::vector<Group> groups_;
  std::size_t total_ = 0;
};

struct AnovaTable {
  double ss_between = 0.0;
  double ss_within = 0.0;
  double ss_total = 0.0;
  int df_between = 0;
  int df_within = 0;
  int df_total = 0;
  double ms_between = 0.0;
  double ms_within = 0.0;
  double f_stat = 0.0;
  double p_value = 1.0;  // right tail of F(df_between, df_within)
};

struct CorrelationResult {
  double r = 0.0;
  int n_pairs = 0;
  int df = 0;
  double t_stat = 0.0;  // +/-inf when |r| == 1
  double p_two_tailed = 1.0;
};

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

// Rows of observed counts; every row must have the same length.
using ContingencyTable = std::vector<std::vector<double>>;

/// One-way analysis of variance.
///
/// The total sum of squares is accumulated independently from the grand
/// mean, so ss_between + ss_within == ss_total is a genuine check rather
/// than an identity. Exactly constant groups contribute exactly zero within
/// variation. All-identical input yields F = 0, p = 1; zero within-group
/// variation with differing means throws ErrorCode::degenerate_input.
AnovaTable one_way_anova(const GroupedSample& sample);

/// Pearson product-moment correlation with its two-tailed t-test
/// (df = n - 2). |r| == 1 reports p = 0.
///
/// Throws length_mismatch, too_few_points (n < 3) or constant_series.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

/// Pearson chi-square test of independence on an r x c table, no continuity
/// correction. The p-value is the upper regularized incomplete gamma
/// Q(df/2, statistic/2).
ChiSquareResult chi_square_independence(const ContingencyTable& table);

}  // namespace kpiforge::stats
