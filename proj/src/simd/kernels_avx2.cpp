// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "kernel_variants.hpp"

namespace kpiforge::simd::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

RangeSummary summarize_avx2(const double* x, std::size_t n) {
  RangeSummary r;
  r.count = n;
  if (n == 0) return r;
  std::size_t i = 0;
  double lo = x[0];
  double hi = x[0];
  double s = 0.0;
  if (n >= 4) {
    __m256d vs = _mm256_setzero_pd();
    __m256d vmin = _mm256_loadu_pd(x);
    __m256d vmax = vmin;
    for (; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(x + i);
      vs = _mm256_add_pd(vs, v);
      vmin = _mm256_min_pd(vmin, v);
      vmax = _mm256_max_pd(vmax, v);
    }
    alignas(32) double mins[4];
    alignas(32) double maxs[4];
    _mm256_store_pd(mins, vmin);
    _mm256_store_pd(maxs, vmax);
    lo = *std::min_element(mins, mins + 4);
    hi = *std::max_element(maxs, maxs + 4);
    s = hsum(vs);
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

double sum_sq_dev_avx2(const double* x, std::size_t n, double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), c);
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(d0, d0));
    a1 = _mm256_add_pd(a1, _mm256_mul_pd(d1, d1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    a0 = _mm256_add_pd(a0, _mm256_mul_pd(d, d));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) {
    const double d = x[i] - center;
    s += d * d;
  }
  return s;
}

CoMoments co_moments_avx2(const double* x, const double* y, std::size_t n,
                          double cx, double cy) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  __m256d axx = _mm256_setzero_pd();
  __m256d ayy = _mm256_setzero_pd();
  __m256d axy = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(x + i), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(y + i), vcy);
    axx = _mm256_add_pd(axx, _mm256_mul_pd(dx, dx));
    ayy = _mm256_add_pd(ayy, _mm256_mul_pd(dy, dy));
    axy = _mm256_add_pd(axy, _mm256_mul_pd(dx, dy));
  }
  CoMoments m{hsum(axx), hsum(ayy), hsum(axy)};
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

const KernelTable kAvx2Table{Isa::avx2, sum_avx2, summarize_avx2, sum_sq_dev_avx2,
                             co_moments_avx2};

}  // namespace kpiforge::simd::detail
