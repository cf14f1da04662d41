#pragma once

// Reduction kernels behind every statistic in the library.
//
// Each kernel has a scalar reference implementation and optional vector
// variants (AVX2 on x86-64, NEON on AArch64). The variant is chosen once at
// first use from the CPU's capabilities; KPIFORGE_SIMD=scalar|avx2|neon|auto
// in the environment overrides the choice. Vector variants reassociate the
// additions, so results agree with the scalar reference to rounding only
// (min/max agree exactly).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace kpiforge::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

struct RangeSummary {
  double sum = 0.0;
  double min = 0.0;  // undefined when count == 0
  double max = 0.0;
  std::size_t count = 0;
};

// Centered second moments: sum (x-cx)^2, sum (y-cy)^2, sum (x-cx)(y-cy).
struct CoMoments {
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

struct KernelTable {
  Isa isa;
  double (*sum)(const double* x, std::size_t n);
  RangeSummary (*summarize)(const double* x, std::size_t n);
  double (*sum_sq_dev)(const double* x, std::size_t n, double center);
  CoMoments (*co_moments)(const double* x, const double* y, std::size_t n,
                          double cx, double cy);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Every variant usable on this machine; scalar first.
std::vector<const KernelTable*> available_kernels();

// The table used by the span wrappers below.
const KernelTable& active_kernels();

inline double sum(std::span<const double> x) {
  return active_kernels().sum(x.data(), x.size());
}

inline RangeSummary summarize(std::span<const double> x) {
  return active_kernels().summarize(x.data(), x.size());
}

inline double sum_sq_dev(std::span<const double> x, double center) {
  return active_kernels().sum_sq_dev(x.data(), x.size(), center);
}

// x and y must have equal length.
inline CoMoments co_moments(std::span<const double> x, std::span<const double> y,
                            double cx, double cy) {
  return active_kernels().co_moments(x.data(), y.data(), x.size(), cx, cy);
}

}  // namespace kpiforge::simd
