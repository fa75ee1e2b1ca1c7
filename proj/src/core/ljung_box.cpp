#include "core/ljung_box.hpp"

#include <string>

#include "core/correlogram.hpp"
#include "core/errors.hpp"
#include "core/special_functions.hpp"

namespace burstcast {

double ljung_box_statistic(const std::vector<double>& acf, std::size_t n) {
    if (acf.empty()) throw ValidationError("ljung_box_statistic: need at least one lag");
    if (acf.size() >= n)
        throw ValidationError("ljung_box_statistic: lags must be smaller than series length");
    double q = 0.0;
    for (std::size_t k = 1; k <= acf.size(); ++k)
        q += acf[k - 1] * acf[k - 1] / static_cast<double>(n - k);
    return static_cast<double>(n) * (static_cast<double>(n) + 2.0) * q;
}

LjungBoxResult ljung_box(const std::vector<double>& values, std::size_t lags,
                         std::size_t fitted_params) {
    if (lags <= fitted_params)
        throw ValidationError("ljung_box: lags (" + std::to_string(lags) +
                              ") must exceed fitted_params (" + std::to_string(fitted_params) +
                              ")");
    if (values.size() <= 3 * lags)
        throw ValidationError("ljung_box: series length must exceed 3x the lag count");
    const Correlogram c = correlogram(values, lags);
    if (!c.defined) throw ValidationError("ljung_box: series is constant, ACF undefined");

    LjungBoxResult r;
    r.lags = lags;
    r.dof = lags - fitted_params;
    const std::vector<double> rho(c.acf.begin() + 1, c.acf.end());  // drop lag 0
    r.statistic = ljung_box_statistic(rho, values.size());
    r.p_value = chi_square_sf(r.statistic, static_cast<double>(r.dof));
    return r;
}

}  // namespace burstcast
