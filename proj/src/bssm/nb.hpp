#pragma once

#include <cstdint>

namespace burstcast {

// Log PMF of the mean/shape negative binomial:
//   ln Gamma(y+r) - ln Gamma(r) - ln Gamma(y+1)
//     + r ln(r/(r+mu)) + y ln(mu/(r+mu))
// (variance mu + mu^2/r; NB(n,p) with n = r, p = r/(r+mu)).
// Requires mean_mu > 0, shape_r > 0, y >= 0.
[[nodiscard]] double nb_log_pmf(std::int64_t y, double mean_mu, double shape_r);

}  // namespace burstcast
