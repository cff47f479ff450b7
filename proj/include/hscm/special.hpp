#pragma once

namespace hscm::special {

/// Upper incomplete gamma Gamma(a, x) for any real a and x > 0, by adaptive
/// quadrature of x^{a-1} e^{-x} int_0^1 (1 - log(1 - w) / x)^{a-1} dw.
double upper_gamma_quadrature(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// a > 0, x >= 0 (series below a + 1, continued fraction above).
double regularized_upper_gamma(double a, double x);

/// Hurwitz zeta sum_{k>=0} (k + q)^{-s} for s > 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

/// log(k!) for integer k >= 0.
double log_factorial(long long k);

} // namespace hscm::special
