#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kpiforge {

enum class ErrorCode {
  domain,            // argument outside a function's domain
  invalid_argument,  // violated type invariant
  degenerate_input,  // statistic undefined for this input (e.g. infinite F)
  length_mismatch,
  too_few_points,
  constant_series,
  zero_marginal,
  empty_table,
  no_convergence,
  malformed_csv,
  empty_file,
  too_many_levels,
  kind_mismatch,
  unknown_column,
  unknown_dimension,
  unknown_level,
  overlap,
  invalid_plan,
  duplicate_id,
  empty_plan,
  unknown_kpi,
  not_found,
  io,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code drives CLI exit messages
// and HTTP status mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kpiforge
