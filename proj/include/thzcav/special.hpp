#pragma once

// Special functions behind the SINR law and the optimizer. All Gamma/Beta
// normalisations are evaluated in log space so shapes in the hundreds are safe.
// Functions are pure and reentrant.

namespace thzcav::special {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for x in [0, 1], a, b > 0.
/// Continued fraction with the symmetry switch at x = (a + 1) / (a + b + 2).
double reg_inc_beta(double x, double a, double b);

/// Inverse of I_x(a, b) in x. Bracketed Newton iteration with bisection fallback.
double inv_reg_inc_beta(double u, double a, double b);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
double reg_lower_gamma(double a, double x);

/// Inverse of P(a, x) in x for u in [0, 1). Returns +inf at u = 1.
double inv_reg_lower_gamma(double u, double a);

/// Inverse error function on (-1, 1).
double inv_erf(double y);

} // namespace thzcav::special
