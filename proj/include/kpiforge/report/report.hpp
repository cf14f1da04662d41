#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kpiforge/kpi/engine.hpp"
#include "kpiforge/olap/cube.hpp"

namespace kpiforge::report {

enum class Format { text, json, csv };

// Throws ErrorCode::invalid_argument for anything but text|json|csv.
Format parse_format(std::string_view name);

inline constexpr std::string_view kFootnote01 =
    "** Correlation is significant at the 0.01 level (2-tailed).";
inline constexpr std::string_view kFootnote05 =
    "* Correlation is significant at the 0.05 level (2-tailed).";

/// Three decimals, half away from zero, leading zero dropped: 0.871 -> ".871",
/// -0.55 -> "-.550", 12.8606 -> "12.861". A p below .0005 therefore reads
/// ".000". Non-finite values render as an empty string.
std::string format_decimal(double value);

/// Correlation coefficient with "**" when p < .01 or "*" when p < .05.
std::string format_correlation(double r, double p_two_tailed);

// One SPSS-style table per verdict, separated by blank lines.
std::string render_verdict_text(const kpi::TestVerdict& v);
std::string render_verdicts(const std::vector<kpi::TestVerdict>& verdicts, Format format);

std::string render_condensed(const kpi::CondensedKpiList& list, Format format);

std::string render_aggregates(const std::vector<olap::AggregateResult>& results, Format format);

}  // namespace kpiforge::report
