#include "kpiforge/error.hpp"

namespace kpiforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_input: return "degenerate_input";
    case ErrorCode::length_mismatch: return "length_mismatch";
    case ErrorCode::too_few_points: return "too_few_points";
    case ErrorCode::constant_series: return "constant_series";
    case ErrorCode::zero_marginal: return "zero_marginal";
    case ErrorCode::empty_table: return "empty_table";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::malformed_csv: return "malformed_csv";
    case ErrorCode::empty_file: return "empty_file";
    case ErrorCode::too_many_levels: return "too_many_levels";
    case ErrorCode::kind_mismatch: return "kind_mismatch";
    case ErrorCode::unknown_column: return "unknown_column";
    case ErrorCode::unknown_dimension: return "unknown_dimension";
    case ErrorCode::unknown_level: return "unknown_level";
    case ErrorCode::overlap: return "overlap";
    case ErrorCode::invalid_plan: return "invalid_plan";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::empty_plan: return "empty_plan";
    case ErrorCode::unknown_kpi: return "unknown_kpi";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::io: return "io_error";
  }
  return "error";
}

}  // namespace kpiforge
