#pragma once

// Distribution tails used for p-values. All functions are pure and throw
// kpiforge::Error(ErrorCode::domain) on arguments outside their domain.

namespace kpiforge::stats {

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated by the modified Lentz continued fraction (tolerance 1e-12,
/// at most 300 iterations). For x > (a+1)/(a+b+2) the symmetry
/// I_x(a,b) = 1 - I_{1-x}(b,a) is used so the fraction converges quickly.
/// Throws ErrorCode::no_convergence if the iteration cap is hit.
double regularized_incomplete_beta(double x, double a, double b);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Series for x < a + 1, continued fraction otherwise.
double regularized_gamma_q(double a, double x);

/// P(F(d1, d2) > f), via I_{d2/(d2+d1 f)}(d2/2, d1/2).
double f_sf(double f, int d1, int d2);

/// 2 P(T(df) > |t|), via I_{df/(df+t^2)}(df/2, 1/2).
double t_sf_two_tailed(double t, int df);

/// P(chi^2(df) > x), via Q(df/2, x/2).
double chi_square_sf(double x, int df);

}  // namespace kpiforge::stats
