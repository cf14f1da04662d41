#include "kpiforge/stats/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kpiforge/error.hpp"

namespace kpiforge::stats {

namespace {

constexpr double kBetaTolerance = 1e-12;
constexpr int kBetaMaxIterations = 300;
constexpr double kGammaTolerance = 1e-14;
constexpr int kGammaMaxIterations = 1000;
constexpr double kTiny = 1e-300;

// std::lgamma writes the global signgam on glibc; lgamma_r keeps this
// reentrant.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

[[noreturn]] void domain_error(const std::string& what) {
  throw Error(ErrorCode::domain, what);
}

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kBetaMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kBetaTolerance) return h;
  }
  throw Error(ErrorCode::no_convergence,
              "incomplete beta continued fraction did not converge (a=" +
                  std::to_string(a) + ", b=" + std::to_string(b) +
                  ", x=" + std::to_string(x) + ")");
}

// x^a (1-x)^b / B(a,b)
double beta_prefactor(double x, double a, double b) {
  return std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                  a * std::log(x) + b * std::log1p(-x));
}

double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double total = term;
  for (int n = 1; n <= kGammaMaxIterations; ++n) {
    term *= x / (a + n);
    total += term;
    if (std::fabs(term) < std::fabs(total) * kGammaTolerance) {
      return total * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
  }
  throw Error(ErrorCode::no_convergence, "incomplete gamma series did not converge");
}

double gamma_q_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kGammaMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kGammaTolerance) {
      return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
    }
  }
  throw Error(ErrorCode::no_convergence,
              "incomplete gamma continued fraction did not converge");
}

double clamp_probability(double p) {
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) domain_error("incomplete beta: x must lie in [0, 1]");
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    domain_error("incomplete beta: a and b must be positive and finite");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double front = beta_prefactor(x, a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return clamp_probability(front * beta_continued_fraction(x, a, b) / a);
  }
  return clamp_probability(1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) domain_error("incomplete gamma: a must be positive");
  if (!(x >= 0.0)) domain_error("incomplete gamma: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return clamp_probability(1.0 - gamma_p_series(a, x));
  return clamp_probability(gamma_q_continued_fraction(a, x));
}

double f_sf(double f, int d1, int d2) {
  if (d1 < 1 || d2 < 1) domain_error("F tail: degrees of freedom must be >= 1");
  if (!(f >= 0.0)) domain_error("F tail: statistic must be non-negative");
  if (std::isinf(f)) return 0.0;
  const double x = d2 / (d2 + d1 * f);
  return regularized_incomplete_beta(x, 0.5 * d2, 0.5 * d1);
}

double t_sf_two_tailed(double t, int df) {
  if (df < 1) domain_error("t tail: degrees of freedom must be >= 1");
  if (std::isnan(t)) domain_error("t tail: statistic is NaN");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(x, 0.5 * df, 0.5);
}

double chi_square_sf(double x, int df) {
  if (df < 1) domain_error("chi-square tail: degrees of freedom must be >= 1");
  if (!(x >= 0.0)) domain_error("chi-square tail: statistic must be non-negative");
  return regularized_gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace kpiforge::stats
