#include "kpiforge/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "kpiforge/data/dataset.hpp"
#include "kpiforge/error.hpp"
#include "kpiforge/kpi/json_io.hpp"
#include "kpiforge/olap/json_io.hpp"

namespace kpiforge::report {

using nlohmann::json;

Format parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw Error(ErrorCode::invalid_argument, "unknown output format '" + std::string(name) + "'");
}

std::string format_decimal(double value) {
  if (!std::isfinite(value)) return "";
  // std::round is half away from zero.
  const double scaled = std::round(std::fabs(value) * 1000.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", scaled / 1000.0);
  std::string s = buf;
  if (s.starts_with("0.")) s.erase(0, 1);
  if (value < 0.0 && scaled != 0.0) s.insert(s.begin(), '-');
  return s;
}

std::string format_correlation(double r, double p_two_tailed) {
  std::string s = format_decimal(r);
  if (p_two_tailed < 0.01) {
    s += "**";
  } else if (p_two_tailed < 0.05) {
    s += "*";
  }
  return s;
}

namespace {

// The first `left` columns are left-aligned, the rest right-aligned; two-space
// gutters.
std::string layout(const std::vector<std::vector<std::string>>& rows, std::size_t left = 1) {
  std::size_t ncols = 0;
  for (const auto& r : rows) ncols = std::max(ncols, r.size());
  std::vector<std::size_t> width(ncols, 0);
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::string cell = c < r.size() ? r[c] : "";
      const std::size_t pad = width[c] - cell.size();
      if (c) line += "  ";
      line += c < left ? cell + std::string(pad, ' ') : std::string(pad, ' ') + cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::string count(std::size_t n) { return std::to_string(n); }

std::string anova_table(const kpi::TestVerdict& v, const stats::AnovaTable& t) {
  std::string out = "ANOVA\n" + v.factor_b + "\n";
  out += layout({
      {"", "Sum of Squares", "df", "Mean Square", "F", "Sig."},
      {"Between Groups", format_decimal(t.ss_between), std::to_string(t.df_between),
       format_decimal(t.ms_between), format_decimal(t.f_stat), format_decimal(t.p_value)},
      {"Within Groups", format_decimal(t.ss_within), std::to_string(t.df_within),
       format_decimal(t.ms_within)},
      {"Total", format_decimal(t.ss_total), std::to_string(t.df_total)},
  });
  return out;
}

std::string correlation_table(const kpi::TestVerdict& v, const stats::CorrelationResult& c) {
  const std::string r = format_correlation(c.r, c.p_two_tailed);
  const std::string sig = format_decimal(c.p_two_tailed);
  const std::string pairs = std::to_string(c.n_pairs);
  const std::string na = v.valid_counts ? count(v.valid_counts->first) : pairs;
  const std::string nb = v.valid_counts ? count(v.valid_counts->second) : pairs;
  std::string out = "Correlations\n";
  out += layout({
      {"", "", v.factor_a, v.factor_b},
      {v.factor_a, "Pearson Correlation", "1", r},
      {"", "Sig. (2-tailed)", "", sig},
      {"", "N", na, pairs},
      {v.factor_b, "Pearson Correlation", r, "1"},
      {"", "Sig. (2-tailed)", sig, ""},
      {"", "N", pairs, nb},
  }, 2);
  if (c.p_two_tailed < 0.01) {
    out += std::string(kFootnote01) + '\n';
  } else if (c.p_two_tailed < 0.05) {
    out += std::string(kFootnote05) + '\n';
  }
  return out;
}

std::string chi_square_table(const kpi::TestVerdict& v, const stats::ChiSquareResult& x) {
  std::string out = "Chi-Square Tests\n" + v.factor_a + " * " + v.factor_b + "\n";
  out += layout({
      {"", "Value", "df", "Asymp. Sig. (2-sided)"},
      {"Pearson Chi-Square", format_decimal(x.statistic), std::to_string(x.df),
       format_decimal(x.p_value)},
  });
  return out;
}

// Table-less fallback for verdicts loaded without detail.
std::string summary_table(const kpi::TestVerdict& v) {
  return layout({{"", "Statistic", "Sig."},
                 {std::string(kpi::to_string(v.method)), format_decimal(v.statistic),
                  format_decimal(v.p_value)}});
}

std::string decision_line(const kpi::TestVerdict& v) {
  char alpha[32];
  std::snprintf(alpha, sizeof alpha, "%g", v.alpha);
  if (v.decision == kpi::Decision::reject_h0) {
    return std::string("Decision: reject H0 (p < ") + alpha + ")\n";
  }
  return std::string("Decision: fail to reject H0 (p >= ") + alpha + ")\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string display_statistic(const kpi::TestVerdict& v) {
  if (v.method == kpi::Method::correlation) return format_correlation(v.statistic, v.p_value);
  return format_decimal(v.statistic);
}

}  // namespace

std::string render_verdict_text(const kpi::TestVerdict& v) {
  std::string out = "Test " + v.test_id + " (" + std::string(kpi::to_string(v.method)) + "): " +
                    v.factor_a + " -> " + v.factor_b + "\n";
  if (v.decision == kpi::Decision::error) return out + "Error: " + v.error + "\n";
  if (const auto* a = std::get_if<stats::AnovaTable>(&v.detail)) {
    out += anova_table(v, *a);
  } else if (const auto* c = std::get_if<stats::CorrelationResult>(&v.detail)) {
    out += correlation_table(v, *c);
  } else if (const auto* x = std::get_if<stats::ChiSquareResult>(&v.detail)) {
    out += chi_square_table(v, *x);
  } else {
    out += summary_table(v);
  }
  return out + decision_line(v);
}

std::string render_verdicts(const std::vector<kpi::TestVerdict>& verdicts, Format format) {
  switch (format) {
    case Format::text: {
      std::string out;
      for (std::size_t i = 0; i < verdicts.size(); ++i) {
        if (i) out += '\n';
        out += render_verdict_text(verdicts[i]);
      }
      return out;
    }
    case Format::json: {
      json arr = json::array();
      for (const auto& v : verdicts) {
        json j = kpi::verdict_to_json(v);
        j["display"] = {{"statistic", display_statistic(v)}, {"sig", format_decimal(v.p_value)}};
        arr.push_back(std::move(j));
      }
      return arr.dump(2) + '\n';
    }
    case Format::csv: {
      std::string out = "test_id,method,factor_a,factor_b,statistic,sig,decision\n";
      for (const auto& v : verdicts) {
        out += csv_field(v.test_id) + ',' + std::string(kpi::to_string(v.method)) + ',' +
               csv_field(v.factor_a) + ',' + csv_field(v.factor_b) + ',' + display_statistic(v) +
               ',' + format_decimal(v.p_value) + ',' + std::string(kpi::to_string(v.decision)) +
               '\n';
      }
      return out;
    }
  }
  return "";
}

std::string render_condensed(const kpi::CondensedKpiList& list, Format format) {
  auto categories = [](const kpi::CandidateKpi& k) {
    std::string s;
    for (std::size_t i = 0; i < k.categories.size(); ++i) {
      if (i) s += " and ";
      s += kpi::to_string(k.categories[i]);
    }
    return s + " KPI";
  };
  switch (format) {
    case Format::text: {
      std::vector<std::vector<std::string>> rows{{"S. No.", "Condensed KPIs", "Category"}};
      for (std::size_t i = 0; i < list.retained.size(); ++i) {
        rows.push_back({std::to_string(i + 1) + ".", list.retained[i].name,
                        categories(list.retained[i])});
      }
      std::string out = "Condensed list of KPIs\n" + layout(rows, 3);
      if (!list.dropped.empty()) {
        std::vector<std::vector<std::string>> dropped{{"Dropped KPI", "Reason"}};
        for (const auto& d : list.dropped) dropped.push_back({d.kpi.name, d.reason});
        out += '\n' + layout(dropped, 2);
      }
      return out;
    }
    case Format::json:
      return kpi::condensed_to_json(list).dump(2) + '\n';
    case Format::csv: {
      std::string out = "name,category,status,reason\n";
      for (const auto& k : list.retained) {
        out += csv_field(k.name) + ',' + csv_field(categories(k)) + ",retained,\n";
      }
      for (const auto& d : list.dropped) {
        out += csv_field(d.kpi.name) + ',' + csv_field(categories(d.kpi)) + ",dropped," +
               csv_field(d.reason) + '\n';
      }
      return out;
    }
  }
  return "";
}

std::string render_aggregates(const std::vector<olap::AggregateResult>& results, Format format) {
  auto opt = [](const std::optional<double>& v) {
    return v ? data::format_number(*v) : std::string();
  };
  switch (format) {
    case Format::text: {
      auto short_num = [](const std::optional<double>& v) {
        if (!v) return std::string();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", *v);
        return std::string(buf);
      };
      std::vector<std::vector<std::string>> rows{{"group", "measure", "count", "sum", "mean", "min", "max"}};
      for (const auto& r : results) {
        for (const auto& row : r.rows) {
          rows.push_back({row.group.value_or(r.group_by ? "(missing)" : "(all)"), row.measure,
                          std::to_string(row.count), short_num(row.sum), short_num(row.mean),
                          short_num(row.min), short_num(row.max)});
        }
      }
      return layout(rows, 2);
    }
    case Format::json: {
      json arr = json::array();
      for (const auto& r : results) arr.push_back(olap::aggregate_to_json(r));
      return arr.dump(2) + '\n';
    }
    case Format::csv: {
      std::string out = "group,measure,count,sum,mean,min,max\n";
      for (const auto& r : results) {
        for (const auto& row : r.rows) {
          out += csv_field(row.group.value_or("")) + ',' + csv_field(row.measure) + ',' +
                 std::to_string(row.count) + ',' + opt(row.sum) + ',' + opt(row.mean) + ',' +
                 opt(row.min) + ',' + opt(row.max) + '\n';
        }
      }
      return out;
    }
  }
  return "";
}

}  // namespace kpiforge::report
