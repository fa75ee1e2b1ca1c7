#include "classic/trend.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "classic/ols.hpp"
#include "core/errors.hpp"

namespace burstcast {

TrendFit fit_trend_break(const CountSeries& series, std::int64_t break_point) {
    series.validate();
    const std::size_t n = series.size();
    if (n < 4) throw ValidationError("fit_trend_break: need at least 4 weeks");
    if (break_point <= 1 || break_point >= static_cast<std::int64_t>(n))
        throw ValidationError("fit_trend_break: break_point " + std::to_string(break_point) +
                              " outside (1, " + std::to_string(n) + ")");

    std::vector<double> y(n), ones(n, 1.0), t(n), step(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = static_cast<double>(series.counts[i]);
        t[i] = static_cast<double>(i + 1);
        step[i] = static_cast<std::int64_t>(i + 1) >= break_point ? 1.0 : 0.0;
    }
    const OlsFit ols = ols_fit({ones, t, step}, y);

    TrendFit fit;
    fit.beta0 = ols.beta[0];
    fit.beta1 = ols.beta[1];
    fit.beta2 = ols.beta[2];
    fit.break_point = break_point;
    fit.fitted = ols.fitted;
    fit.residuals = ols.residuals;
    fit.rss = ols.rss;

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double tss = 0.0;
    for (double v : y) tss += (v - mean) * (v - mean);

    const int df_num = 2;
    const int df_den = static_cast<int>(n) - 3;
    fit.df = {df_num, df_den};
    if (fit.rss <= 0.0 || tss <= 0.0) {
        fit.r_squared = 1.0;
        fit.f_statistic = std::numeric_limits<double>::infinity();
    } else {
        fit.r_squared = 1.0 - fit.rss / tss;
        fit.f_statistic = ((tss - fit.rss) / df_num) / (fit.rss / df_den);
    }
    return fit;
}

BreakSearch detect_break(const CountSeries& series, std::int64_t lo, std::int64_t hi) {
    series.validate();
    const auto n = static_cast<std::int64_t>(series.size());
    if (lo > hi) throw ValidationError("detect_break: empty candidate range");
    if (lo <= 2 || hi >= n - 1)
        throw ValidationError("detect_break: candidate range [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] must lie within (2, " + std::to_string(n - 1) +
                              ")");

    BreakSearch search;
    search.rss_by_week.reserve(static_cast<std::size_t>(hi - lo + 1));
    double best_rss = std::numeric_limits<double>::infinity();
    double max_rss = -std::numeric_limits<double>::infinity();
    std::int64_t argmin = lo;
    for (std::int64_t w = lo; w <= hi; ++w) {
        const double rss = fit_trend_break(series, w).rss;
        search.rss_by_week.emplace_back(w, rss);
        if (rss < best_rss) {
            best_rss = rss;
            argmin = w;
        }
        if (rss > max_rss) max_rss = rss;
    }
    search.no_evidence = (max_rss - best_rss) <= 1e-6 * max_rss;
    search.best_week = search.no_evidence ? lo : argmin;
    return search;
}

}  // namespace burstcast
