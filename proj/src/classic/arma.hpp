#pragma once

#include <utility>
#include <vector>

namespace burstcast {

// AR(p) fitted by conditional least squares (OLS on the lagged design).
struct ARModel {
    int order_p = 0;
    double intercept = 0.0;
    std::vector<double> coefficients;  // phi_1..phi_p
    double noise_variance = 0.0;       // CSS / (n - p)
    std::vector<double> residuals;     // aligned to observations p+1..n
    bool stationary = true;            // AR polynomial roots outside unit circle
};

// Requires length > 10 * order_p and order_p >= 1. Constant input is a
// singular design and throws ValidationError.
[[nodiscard]] ARModel fit_ar(const std::vector<double>& values, int order_p);

// ARMA(p,q) fitted by conditional sum of squares: innovations before the
// first forecastable point are fixed at 0 and the CSS over t = p+1..n is
// minimized by Nelder-Mead simplex search (convergence when the parameter
// step falls below 1e-8; at most 2000 iterations).
struct ARMAModel {
    int order_p = 0;
    int order_q = 0;
    double intercept = 0.0;
    std::vector<double> ar_coeffs;
    std::vector<double> ma_coeffs;
    double noise_variance = 0.0;    // CSS / (n - p)
    double aic = 0.0;               // (n - p) ln(sigma^2) + 2 (p + q + 1)
    bool stationary = true;
    std::vector<double> residuals;  // innovations for t = p+1..n
    int iterations = 0;             // simplex iterations used
};

// Requires length > 10 * (p + q) and p + q >= 1. Throws NumericError on
// simplex non-convergence (the message carries the best-so-far parameters
// and the final step size).
[[nodiscard]] ARMAModel fit_arma(const std::vector<double>& values, int order_p, int order_q);

// AIC grid search over 0 <= p <= p_max, 0 <= q <= q_max excluding (0,0);
// ties break toward smaller p+q, then smaller q. Grid cells that fail to
// converge are skipped; all cells failing is an error. p_max, q_max <= 3.
[[nodiscard]] std::pair<int, int> select_arma(const std::vector<double>& values, int p_max,
                                              int q_max);

// True when all roots of 1 - phi_1 z - ... - phi_p z^p lie outside the unit
// circle (computed via Durand-Kerner iteration on the companion polynomial).
[[nodiscard]] bool ar_is_stationary(const std::vector<double>& ar_coeffs);

}  // namespace burstcast
