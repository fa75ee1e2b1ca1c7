#include "core/correlogram.hpp"

#include <cmath>

#include <json.hpp>

#include "core/errors.hpp"

namespace burstcast {

Correlogram correlogram(const std::vector<double>& values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (max_lag < 1) throw ValidationError("correlogram: max_lag must be >= 1");
    if (2 * max_lag >= n)
        throw ValidationError("correlogram: max_lag " + std::to_string(max_lag) +
                              " must be smaller than half the series length " + std::to_string(n));

    Correlogram c;
    c.n = n;
    c.max_lag = max_lag;
    c.band = 1.96 / std::sqrt(static_cast<double>(n));

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double v : values) c0 += (v - mean) * (v - mean);
    if (c0 == 0.0) {
        c.defined = false;
        return c;
    }

    c.acf.resize(max_lag + 1);
    c.acf[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < n; ++t) ck += (values[t] - mean) * (values[t - k] - mean);
        c.acf[k] = ck / c0;
    }

    // Durbin-Levinson: phi[k][j] coefficients of the order-k predictor.
    c.pacf.resize(max_lag);
    std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
    double v = 1.0;  // prediction error variance (relative to c0)
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = c.acf[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * c.acf[k - j];
        const double phi_kk = (v == 0.0) ? 0.0 : num / v;
        phi[k] = phi_kk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phi_kk * prev[k - j];
        v *= (1.0 - phi_kk * phi_kk);
        c.pacf[k - 1] = phi_kk;
        for (std::size_t j = 1; j <= k; ++j) prev[j] = phi[j];
    }
    return c;
}

std::string correlogram_to_json(const Correlogram& c) {
    nlohmann::ordered_json j;
    j["n"] = c.n;
    j["max_lag"] = c.max_lag;
    j["band"] = c.band;
    j["defined"] = c.defined;
    if (c.defined) {
        auto lags = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k <= c.max_lag; ++k) lags.push_back(k);
        j["lags"] = std::move(lags);
        j["acf"] = c.acf;
        j["pacf"] = c.pacf;
    } else {
        j["lags"] = nullptr;
        j["acf"] = nullptr;
        j["pacf"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace burstcast
