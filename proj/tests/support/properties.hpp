#pragma once

// Randomized and exhaustive property checks. Shared by the unit tests and
// the acceptance runner so both exercise the same oracles.

#include <cstddef>
#include <cstdint>
#include <string>

#include "kpiforge/data/dataset.hpp"

namespace kpiforge::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
  }
};

// Relative comparison with an absolute floor for values near zero.
bool close_rel(double a, double b, double rel, double abs_floor = 0.0);

// ss_total == ss_between + ss_within, and F/p unchanged under x -> x + c and
// x -> k x (k != 0), on `instances` random grouped samples.
PropertyResult anova_additivity_and_invariance(std::size_t instances, std::uint64_t seed,
                                               double rel_tol = 1e-9);

// I_x(a,b) + I_{1-x}(b,a) == 1 over an n x n grid of (a, b) shapes, each at
// several x.
PropertyResult beta_complement_grid(std::size_t n = 50, double tol = 1e-10);

// Every dataset of at most `max_values` values from {0, 1, 3} split into 2..
// `max_groups` non-empty groups, checked against a long-double recomputation
// straight from the definitions.
PropertyResult anova_bruteforce(std::size_t max_values = 8, std::size_t max_groups = 3,
                                double tol = 1e-9);

// Exhaustive slice/dice soundness against a naive row filter: every
// combination of (dimension subset, level choice) on `ds`, plus filter-order
// commutativity and aggregate conservation.
PropertyResult slice_dice_oracle(const data::Dataset& ds, const std::vector<std::string>& dimensions,
                                 const std::vector<std::string>& measures);

// Random categorical/numeric dataset with some missing cells; rows <= 200.
data::Dataset random_cube_fixture(std::size_t rows, std::uint64_t seed);

}  // namespace kpiforge::testing
