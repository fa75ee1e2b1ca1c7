#pragma once

#include <cstddef>
#include <vector>

namespace burstcast {

// Ljung-Box portmanteau test for serial correlation.
//
//   Q = n(n+2) * sum_{k=1..h} rho_k^2 / (n-k)
//
// Under the null of white noise Q is asymptotically chi-square with h - df
// degrees of freedom, where df accounts for fitted ARMA parameters (p+q) when
// the test is applied to model residuals.
struct LjungBoxResult {
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t lags = 0;  // h
    std::size_t dof = 0;   // h - fitted_params
};

// Computes Q directly from precomputed autocorrelations rho_1..rho_h.
// `n` is the length of the original series.
[[nodiscard]] double ljung_box_statistic(const std::vector<double>& acf, std::size_t n);

// Full test on a series: computes the ACF to lag `lags`, then Q and the
// chi-square survival p-value on `lags - fitted_params` degrees of freedom.
// Requires lags > fitted_params and lags < n. Throws ValidationError for a
// constant series (ACF undefined).
[[nodiscard]] LjungBoxResult ljung_box(const std::vector<double>& values, std::size_t lags,
                                       std::size_t fitted_params = 0);

}  // namespace burstcast
