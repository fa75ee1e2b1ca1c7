#pragma once

#include <utility>

#include "bssm/model.hpp"
#include "core/count_series.hpp"

namespace burstcast {

// Samples the posterior of (alpha, phi, sigma_w, r, x_2..x_n). Requires
// n >= 20 and at least one nonzero count. Deterministic given (seed, chains):
// chain c draws from derive_seed(seed, "<stream_label>-c") and chains merge
// in (chain_id, draw_id) order regardless of scheduling.
[[nodiscard]] PosteriorSamples fit_bssm(const CountSeries& series, const BssmConfig& config);

// WBIC via a second run at inverse temperature beta = 1/ln(n_obs), where
// n_obs = n - 1 likelihood terms. Returns (deviance scale, natural scale):
// natural = -E_tempered[sum_t ln p(y_t | theta, x_t)], deviance = 2 * natural.
[[nodiscard]] std::pair<double, double> wbic(const CountSeries& series, const BssmConfig& config);

}  // namespace burstcast
