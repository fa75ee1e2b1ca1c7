#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace burstcast {

// Sample autocorrelation / partial autocorrelation analysis of a series.
//
// The ACF at lag k is computed about the sample mean with the lag-0
// autocovariance in the denominator:
//   rho_k = sum_{t=k+1..n} (y_t - ybar)(y_{t-k} - ybar) / sum_{t=1..n} (y_t - ybar)^2
// The PACF is obtained from the ACF by Durbin-Levinson recursion.
//
// For a constant series the denominator is zero; `defined` is false and the
// acf/pacf vectors are empty.
struct Correlogram {
    std::size_t n = 0;        // series length
    std::size_t max_lag = 0;  // largest lag computed
    bool defined = true;      // false for constant input
    std::vector<double> acf;  // acf[k] = rho_k, k = 0..max_lag (acf[0] == 1)
    std::vector<double> pacf; // pacf[k-1] = phi_kk, k = 1..max_lag
    double band = 0.0;        // +-1.96/sqrt(n) white-noise band
};

// Computes ACF (lags 0..max_lag) and PACF (lags 1..max_lag).
// Requires 1 <= max_lag < n/2.
[[nodiscard]] Correlogram correlogram(const std::vector<double>& values, std::size_t max_lag);

// JSON rendering: {"n":..,"max_lag":..,"band":..,"defined":true,
//                  "lags":[0,..],"acf":[1,..],"pacf":[..]}
// `acf` aligns with `lags`; `pacf` aligns with lags 1..max_lag.
// When undefined, acf/pacf are null.
[[nodiscard]] std::string correlogram_to_json(const Correlogram& c);

}  // namespace burstcast
