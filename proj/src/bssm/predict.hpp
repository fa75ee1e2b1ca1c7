#pragma once

#include "bssm/model.hpp"
#include "core/count_series.hpp"
#include "core/forecast_series.hpp"

namespace burstcast {

// One-week-ahead posterior predictive forecast. For every week t >= 2 and
// every retained draw: x ~ Normal(phi * g(y_{t-1}), sigma_w),
// mu = exp(alpha + x), y~ ~ NB(mu, r). The point forecast is the predictive
// mean, computed from the sampled mu (the NB mean given mu is mu, so the
// count-sampling step is marginalized out analytically); the median and the
// (1-level)/2, 1-(1-level)/2 bounds are empirical quantiles of the simulated
// counts. Week 1 is marked missing. Deterministic given the posterior's
// master seed (stream "predict").
[[nodiscard]] ForecastSeries predict_one_step(const PosteriorSamples& samples,
                                              const CountSeries& series, double level);

// Fitted model trendline: the posterior mean (and quantiles) of the modeled
// weekly rate mu_t = exp(alpha + x_t) using the per-week latent states
// inferred during fitting. Unlike predict_one_step, which integrates the
// state equation forward from the previous observation alone, the latent
// states here are conditioned on the full fitted series, so this is the
// in-sample trendline the model reports for each week (the curve accuracy
// tables score), not an out-of-sample simulation. Requires latents stored.
// Week 1 is marked missing.
[[nodiscard]] ForecastSeries fitted_trendline(const PosteriorSamples& samples,
                                              const CountSeries& series, double level);

}  // namespace burstcast
