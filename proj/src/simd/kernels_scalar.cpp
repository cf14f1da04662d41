#include "kernel_variants.hpp"

namespace kpiforge::simd::detail {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

RangeSummary summarize_scalar(const double* x, std::size_t n) {
  RangeSummary r;
  r.count = n;
  if (n == 0) return r;
  r.min = x[0];
  r.max = x[0];
  for (std::size_t i = 0; i < n; ++i) {
    r.sum += x[i];
    if (x[i] < r.min) r.min = x[i];
    if (x[i] > r.max) r.max = x[i];
  }
  return r;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double center) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - center;
    s += d * d;
  }
  return s;
}

CoMoments co_moments_scalar(const double* x, const double* y, std::size_t n,
                            double cx, double cy) {
  CoMoments m;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - cx;
    const double dy = y[i] - cy;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

const KernelTable kScalarTable{Isa::scalar, sum_scalar, summarize_scalar,
                               sum_sq_dev_scalar, co_moments_scalar};

}  // namespace kpiforge::simd::detail
