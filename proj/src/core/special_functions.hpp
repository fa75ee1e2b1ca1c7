#pragma once

#include <cmath>

namespace burstcast {

/// Thread-safe log-gamma for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, continued fraction otherwise;
/// relative accuracy around 1e-14.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Chi-square survival function: P(X >= x) for X ~ chi2(df).
double chi_square_sf(double x, double df);

}  // namespace burstcast
