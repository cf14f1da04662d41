#include <arm_neon.h>

#include <algorithm>

#include "kernel_variants.hpp"

namespace kpiforge::simd::detail {

namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vaddq_f64(a0, vld1q_f64(x + i));
    a1 = vaddq_f64(a1, vld1q_f64(x + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

RangeSummary summarize_neon(const double* x, std::size_t n) {
  RangeSummary r;
  r.count = n;
  if (n == 0) return r;
  std::size_t i = 0;
  double lo = x[0];
  double hi = x[0];
  double s = 0.0;
  if (n >= 2) {
    float64x2_t vs = vdupq_n_f64(0.0);
    float64x2_t vmin = vld1q_f64(x);
    float64x2_t vmax = vmin;
    for (; i + 2 <= n; i += 2) {
      const float64x2_t v = vld1q_f64(x + i);
      vs = vaddq_f64(vs, v);
      vmin = vminq_f64(vmin, v);
      vmax = vmaxq_f64(vmax, v);
    }
    lo = vminvq_f64(vmin);
    hi = vmaxvq_f64(vmax);
    s = vaddvq_f64(vs);
  }
  for (; i < n; ++i) {
    s += x[i];
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }
  r.sum = s;
  r.min = lo;
  r.max = hi;
  return r;
}

double sum_sq_dev_neon(const double* x, std::size_t n, double center) {
  const float64x2_t c = vdupq_n_f64(center);
  float64x2_t a = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + i), c);
    a = vaddq_f64(a, vmulq_f64(d, d));
  }
  double s = vaddvq_f64(a);
  for (; i < n; ++i) {
    const double d = x[i] - center;
    s += d * d;
  }
  return s;
}

CoMoments co_moments_neon(const double* x, const double* y, std::size_t n,
                          double cx, double cy) {
  const float64x2_t vcx = vdupq_n_f64(cx);
  const float64x2_t vcy = vdupq_n_f64(cy);
  float64x2_t axx = vdupq_n_f64(0.0);
  float64x2_t ayy = vdupq_n_f64(0.0);
  float64x2_t axy = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(x + i), vcx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(y + i), vcy);
    axx = vaddq_f64(axx, vmulq_f64(dx, dx));
    ayy = vaddq_f64(ayy, vmulq_f64(dy, dy));
    axy = vaddq_f64(axy, vmulq_f64(dx, dy));
  }
  CoMoments m{vaddvq_f64(axx), vaddvq_f64(ayy), vaddvq_f64(axy)};
  for (; i < n; ++i) {
    const double dx = x[i] - cx;
    const double dy = y[i] - cy;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

const KernelTable kNeonTable{Isa::neon, sum_neon, summarize_neon, sum_sq_dev_neon,
                             co_moments_neon};

}  // namespace kpiforge::simd::detail
