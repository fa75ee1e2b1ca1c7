#include "bssm/nb.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/special_functions.hpp"

namespace burstcast {

double nb_log_pmf(std::int64_t y, double mean_mu, double shape_r) {
    if (y < 0) throw ValidationError("nb_log_pmf: y must be >= 0");
    if (!(mean_mu > 0.0)) throw ValidationError("nb_log_pmf: mean must be > 0");
    if (!(shape_r > 0.0)) throw ValidationError("nb_log_pmf: shape must be > 0");

    const double yd = static_cast<double>(y);
    // r ln(r/(r+mu)) = -r log1p(mu/r) stays accurate in the Poisson limit
    // r >> mu, where the direct ratio loses all precision.
    return log_gamma(yd + shape_r) - log_gamma(shape_r) - log_gamma(yd + 1.0) -
           shape_r * std::log1p(mean_mu / shape_r) + yd * std::log(mean_mu) -
           yd * std::log(shape_r + mean_mu);
}

}  // namespace burstcast
