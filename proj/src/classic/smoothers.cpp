#include "classic/smoothers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace burstcast {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const std::vector<double>& values, const SmootherParams& p) {
    const std::size_t n = values.size();
    switch (p.kind) {
        case SmootherKind::MA:
        case SmootherKind::WMA:
            if (p.k < 1) throw ValidationError("fit_smoother: window k must be >= 1");
            if (n <= static_cast<std::size_t>(p.k))
                throw ValidationError("fit_smoother: series length must exceed the window");
            break;
        case SmootherKind::ES:
            if (!(p.alpha > 0.0 && p.alpha <= 1.0))
                throw ValidationError("fit_smoother: alpha must be in (0, 1]");
            if (n < 2) throw ValidationError("fit_smoother: need at least 2 observations");
            break;
        case SmootherKind::HoltWinters:
            if (!(p.alpha > 0.0 && p.alpha <= 1.0) || !(p.beta > 0.0 && p.beta <= 1.0) ||
                !(p.gamma > 0.0 && p.gamma <= 1.0))
                throw ValidationError("fit_smoother: alpha, beta, gamma must be in (0, 1]");
            if (p.season < 1) throw ValidationError("fit_smoother: season length must be >= 1");
            if (static_cast<std::size_t>(p.season) >= n)
                throw ValidationError("fit_smoother: season length must be smaller than the series");
            break;
    }
}

}  // namespace

std::string smoother_kind_name(SmootherKind kind) {
    switch (kind) {
        case SmootherKind::MA: return "ma";
        case SmootherKind::WMA: return "wma";
        case SmootherKind::ES: return "es";
        case SmootherKind::HoltWinters: return "holtwinters";
    }
    return "unknown";
}

SmootherFit fit_smoother(const std::vector<double>& values, const SmootherParams& p) {
    validate(values, p);
    const std::size_t n = values.size();
    SmootherFit fit;
    fit.fitted.assign(n, kNaN);

    switch (p.kind) {
        case SmootherKind::MA: {
            const auto k = static_cast<std::size_t>(p.k);
            fit.defined_from = k;
            auto window_mean = [&](std::size_t end) {  // mean of values[end-k..end-1]
                double s = 0.0;
                for (std::size_t i = end - k; i < end; ++i) s += values[i];
                return s / static_cast<double>(k);
            };
            for (std::size_t t = k; t < n; ++t) fit.fitted[t] = window_mean(t);
            fit.next = window_mean(n);
            break;
        }
        case SmootherKind::WMA: {
            const auto k = static_cast<std::size_t>(p.k);
            fit.defined_from = k;
            const double wsum = static_cast<double>(k) * (static_cast<double>(k) + 1.0) / 2.0;
            auto weighted = [&](std::size_t end) {  // values[end-1] weighted k, .., values[end-k] weighted 1
                double s = 0.0;
                for (std::size_t i = 1; i <= k; ++i)
                    s += static_cast<double>(k - i + 1) * values[end - i];
                return s / wsum;
            };
            for (std::size_t t = k; t < n; ++t) fit.fitted[t] = weighted(t);
            fit.next = weighted(n);
            break;
        }
        case SmootherKind::ES: {
            fit.defined_from = 1;
            double s = values[0];
            for (std::size_t t = 1; t < n; ++t) {
                fit.fitted[t] = s;
                s = p.alpha * values[t] + (1.0 - p.alpha) * s;
            }
            fit.next = s;
            break;
        }
        case SmootherKind::HoltWinters: {
            const auto m = static_cast<std::size_t>(p.season);
            fit.defined_from = m;
            double level = 0.0;
            for (std::size_t i = 0; i < m; ++i) level += values[i];
            level /= static_cast<double>(m);
            double trend = 0.0;
            if (2 * m <= n) {
                double second = 0.0;
                for (std::size_t i = m; i < 2 * m; ++i) second += values[i];
                second /= static_cast<double>(m);
                trend = (second - level) / static_cast<double>(m);
            }
            std::vector<double> season(n + 1, 0.0);
            for (std::size_t i = 0; i < m; ++i) season[i] = values[i] - level;
            for (std::size_t t = m; t < n; ++t) {
                fit.fitted[t] = level + trend + season[t - m];
                const double prev_level = level;
                level = p.alpha * (values[t] - season[t - m]) + (1.0 - p.alpha) * (level + trend);
                trend = p.beta * (level - prev_level) + (1.0 - p.beta) * trend;
                season[t] = p.gamma * (values[t] - level) + (1.0 - p.gamma) * season[t - m];
            }
            fit.next = level + trend + season[n - m];
            break;
        }
    }
    return fit;
}

}  // namespace burstcast
