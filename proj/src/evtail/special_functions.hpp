#pragma once

namespace evt {

/// Standard normal CDF, 0.5 * erfc(-x / sqrt 2).
double normal_cdf(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Power series for x < a + 1, modified Lentz continued fraction for Q otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// P{chi^2_dof > q}.
double chi_square_sf(double q, double dof);

}  // namespace evt
