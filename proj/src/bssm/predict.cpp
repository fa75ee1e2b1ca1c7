#include "bssm/predict.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace burstcast {

namespace {

// Type-7 (linear interpolation) quantile of sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

ForecastSeries predict_one_step(const PosteriorSamples& samples, const CountSeries& series,
                                double level) {
    series.validate();
    if (!(level > 0.0 && level < 1.0))
        throw ValidationError("predict_one_step: level must lie in (0, 1)");
    if (samples.n_weeks != series.size())
        throw ValidationError("predict_one_step: samples were fitted on a different series");
    const std::size_t d = samples.n_draws();
    if (d == 0) throw ValidationError("predict_one_step: empty posterior");

    Rng rng(derive_seed(samples.master_seed, "predict"));
    const std::size_t n = series.size();

    ForecastSeries out;
    out.model = "bssm";
    out.level = level;
    out.defined_from = 2;
    out.points.resize(n);
    out.points[0].week = 1;
    out.points[0].actual = static_cast<double>(series.counts[0]);
    out.points[0].defined = false;

    const double p_lo = (1.0 - level) / 2.0;
    const double p_hi = 1.0 - p_lo;
    std::vector<double> draws(d);
    for (std::size_t t = 1; t < n; ++t) {
        const double g_prev = std::log1p(static_cast<double>(series.counts[t - 1]));
        double mean_mu = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double x = samples.phi[k] * g_prev + samples.sigma_w[k] * rng.normal();
            // Cap the log mean: prior-predictive tails can otherwise overflow.
            const double log_mu = std::min(samples.alpha[k] + x, 30.0);
            const double mu = std::exp(log_mu);
            mean_mu += mu;
            draws[k] = static_cast<double>(rng.negative_binomial(mu, samples.shape_r[k]));
        }
        std::sort(draws.begin(), draws.end());

        ForecastPoint& fp = out.points[t];
        fp.week = static_cast<std::int64_t>(t) + 1;
        fp.actual = static_cast<double>(series.counts[t]);
        fp.defined = true;
        fp.point = mean_mu / static_cast<double>(d);
        fp.median = quantile_sorted(draws, 0.5);
        fp.lower = quantile_sorted(draws, p_lo);
        fp.upper = quantile_sorted(draws, p_hi);
    }
    return out;
}

ForecastSeries fitted_trendline(const PosteriorSamples& samples, const CountSeries& series,
                                double level) {
    series.validate();
    if (!(level > 0.0 && level < 1.0))
        throw ValidationError("fitted_trendline: level must lie in (0, 1)");
    if (samples.n_weeks != series.size())
        throw ValidationError("fitted_trendline: samples were fitted on a different series");
    const std::size_t d = samples.n_draws();
    if (d == 0) throw ValidationError("fitted_trendline: empty posterior");
    if (samples.latent_x.size() != d)
        throw ValidationError("fitted_trendline: posterior has no stored latent states");

    const std::size_t n = series.size();
    ForecastSeries out;
    out.model = "bssm-trendline";
    out.level = level;
    out.defined_from = 2;
    out.points.resize(n);
    out.points[0].week = 1;
    out.points[0].actual = static_cast<double>(series.counts[0]);
    out.points[0].defined = false;

    const double p_lo = (1.0 - level) / 2.0;
    const double p_hi = 1.0 - p_lo;
    std::vector<double> mus(d);
    for (std::size_t t = 1; t < n; ++t) {
        double mean_mu = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double log_mu =
                std::min(samples.alpha[k] + samples.latent_x[k][t - 1], 30.0);
            mus[k] = std::exp(log_mu);
            mean_mu += mus[k];
        }
        std::sort(mus.begin(), mus.end());

        ForecastPoint& fp = out.points[t];
        fp.week = static_cast<std::int64_t>(t) + 1;
        fp.actual = static_cast<double>(series.counts[t]);
        fp.defined = true;
        fp.point = mean_mu / static_cast<double>(d);
        fp.median = quantile_sorted(mus, 0.5);
        fp.lower = quantile_sorted(mus, p_lo);
        fp.upper = quantile_sorted(mus, p_hi);
    }
    return out;
}

}  // namespace burstcast
