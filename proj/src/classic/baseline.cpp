#include "classic/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "classic/arma.hpp"
#include "core/errors.hpp"

namespace burstcast {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZ95 = 1.96;

nlohmann::ordered_json trend_to_json(const TrendFit& t) {
    nlohmann::ordered_json j;
    j["break_week"] = t.break_point;
    j["beta0"] = t.beta0;
    j["beta1"] = t.beta1;
    j["beta2"] = t.beta2;
    j["rss"] = t.rss;
    j["r_squared"] = t.r_squared;
    if (std::isfinite(t.f_statistic))
        j["f_statistic"] = t.f_statistic;
    else
        j["f_statistic"] = nullptr;
    j["df"] = {t.df.first, t.df.second};
    return j;
}

}  // namespace

std::string baseline_model_name(BaselineModel model) {
    switch (model) {
        case BaselineModel::AR1: return "ar1";
        case BaselineModel::AR3: return "ar3";
        case BaselineModel::ARMA11: return "arma11";
        case BaselineModel::MA: return "ma";
        case BaselineModel::WMA: return "wma";
        case BaselineModel::ES: return "es";
        case BaselineModel::HoltWinters: return "holtwinters";
    }
    return "unknown";
}

BaselineResult classical_forecast(const CountSeries& series, const BaselineConfig& config) {
    series.validate();
    const std::size_t n = series.size();
    if (n < 4) throw ValidationError("classical_forecast: need at least 4 weeks");

    std::vector<double> counts(n);
    for (std::size_t i = 0; i < n; ++i) counts[i] = static_cast<double>(series.counts[i]);

    nlohmann::ordered_json j;
    j["model"] = baseline_model_name(config.model);
    j["detrended"] = !config.raw_counts;

    // Residual series the one-step model runs on, plus the additive component
    // restoring the count scale.
    std::vector<double> base(n, 0.0);
    std::vector<double> resid = counts;
    if (!config.raw_counts) {
        std::int64_t bp = config.break_week;
        if (bp == 0) {
            const std::int64_t lo = std::max<std::int64_t>(3, config.break_lo);
            const std::int64_t hi =
                std::min<std::int64_t>(static_cast<std::int64_t>(n) - 2, config.break_hi);
            if (lo > hi)
                throw ValidationError("classical_forecast: empty break-search range after clamping");
            const BreakSearch search = detect_break(series, lo, hi);
            bp = search.best_week;
            j["break_search"] = {{"lo", lo},
                                 {"hi", hi},
                                 {"week", search.best_week},
                                 {"no_evidence", search.no_evidence}};
        }
        const TrendFit trend = fit_trend_break(series, bp);
        base = trend.fitted;
        resid = trend.residuals;
        j["trend"] = trend_to_json(trend);
    }

    // One-step residual-scale predictions, NaN where undefined.
    std::vector<double> pred(n, kNaN);
    std::size_t defined_from = 0;
    double sigma2 = 0.0;
    nlohmann::ordered_json params;
    switch (config.model) {
        case BaselineModel::AR1:
        case BaselineModel::AR3: {
            const int p = config.model == BaselineModel::AR1 ? 1 : 3;
            const ARModel ar = fit_ar(resid, p);
            defined_from = static_cast<std::size_t>(p);
            for (std::size_t t = defined_from; t < n; ++t) {
                double v = ar.intercept;
                for (int i = 1; i <= p; ++i)
                    v += ar.coefficients[static_cast<std::size_t>(i - 1)] *
                         resid[t - static_cast<std::size_t>(i)];
                pred[t] = v;
            }
            sigma2 = ar.noise_variance;
            params["intercept"] = ar.intercept;
            params["ar"] = ar.coefficients;
            params["stationary"] = ar.stationary;
            break;
        }
        case BaselineModel::ARMA11: {
            const ARMAModel arma = fit_arma(resid, 1, 1);
            defined_from = 1;
            for (std::size_t t = 1; t < n; ++t) {
                // Innovation eps_{t-1}: 0 before the first forecastable index.
                const double eps_prev = t >= 2 ? arma.residuals[t - 2] : 0.0;
                pred[t] = arma.intercept + arma.ar_coeffs[0] * resid[t - 1] +
                          arma.ma_coeffs[0] * eps_prev;
            }
            sigma2 = arma.noise_variance;
            params["intercept"] = arma.intercept;
            params["ar"] = arma.ar_coeffs;
            params["ma"] = arma.ma_coeffs;
            params["aic"] = arma.aic;
            params["stationary"] = arma.stationary;
            break;
        }
        case BaselineModel::MA:
        case BaselineModel::WMA:
        case BaselineModel::ES:
        case BaselineModel::HoltWinters: {
            SmootherParams sp = config.smoother;
            sp.kind = config.model == BaselineModel::MA    ? SmootherKind::MA
                      : config.model == BaselineModel::WMA ? SmootherKind::WMA
                      : config.model == BaselineModel::ES  ? SmootherKind::ES
                                                           : SmootherKind::HoltWinters;
            const SmootherFit sf = fit_smoother(resid, sp);
            pred = sf.fitted;
            defined_from = sf.defined_from;
            double css = 0.0;
            std::size_t m = 0;
            for (std::size_t t = defined_from; t < n; ++t) {
                const double e = resid[t] - pred[t];
                css += e * e;
                ++m;
            }
            if (m == 0) throw ValidationError("classical_forecast: smoother has no defined weeks");
            sigma2 = css / static_cast<double>(m);
            if (sp.kind == SmootherKind::MA || sp.kind == SmootherKind::WMA) {
                params["k"] = sp.k;
            } else if (sp.kind == SmootherKind::ES) {
                params["alpha"] = sp.alpha;
            } else {
                params["alpha"] = sp.alpha;
                params["beta"] = sp.beta;
                params["gamma"] = sp.gamma;
                params["season"] = sp.season;
            }
            break;
        }
    }
    const double sigma = std::sqrt(sigma2);
    params["sigma"] = sigma;
    j["params"] = params;

    BaselineResult result;
    result.forecast.model = baseline_model_name(config.model);
    result.forecast.level = 0.95;
    result.forecast.defined_from = static_cast<std::int64_t>(defined_from) + 1;
    result.forecast.points.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        ForecastPoint& fp = result.forecast.points[t];
        fp.week = static_cast<std::int64_t>(t) + 1;
        fp.actual = counts[t];
        fp.defined = t >= defined_from && std::isfinite(pred[t]);
        if (fp.defined) {
            const double point = std::max(0.0, base[t] + pred[t]);
            fp.point = point;
            fp.median = point;
            fp.lower = std::max(0.0, point - kZ95 * sigma);
            fp.upper = point + kZ95 * sigma;
        }
    }
    result.model_json = j.dump(2);
    return result;
}

}  // namespace burstcast
