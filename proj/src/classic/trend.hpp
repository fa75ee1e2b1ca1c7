#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/count_series.hpp"

namespace burstcast {

// OLS fit of counts on [1, t, 1{t >= break_point}] (linear trend plus a
// level shift at the structural break).
struct TrendFit {
    double beta0 = 0.0;  // intercept
    double beta1 = 0.0;  // slope per week
    double beta2 = 0.0;  // level shift at the break
    std::int64_t break_point = 0;
    std::vector<double> fitted;     // count scale, week order
    std::vector<double> residuals;  // counts - fitted
    double rss = 0.0;
    double r_squared = 0.0;
    double f_statistic = 0.0;  // overall F; +inf on an exact fit
    std::pair<int, int> df{0, 0};  // (numerator, denominator)
};

// Requires 1 < break_point < n and n >= 4.
[[nodiscard]] TrendFit fit_trend_break(const CountSeries& series, std::int64_t break_point);

// RSS grid search for the structural break over candidate weeks lo..hi
// (inclusive; the range must lie within (2, n-1)). When the RSS curve is flat
// to 1e-6 relative, there is no break evidence: `no_evidence` is set and
// `best_week` falls back to the range minimum.
struct BreakSearch {
    std::int64_t best_week = 0;
    bool no_evidence = false;
    std::vector<std::pair<std::int64_t, double>> rss_by_week;
};

[[nodiscard]] BreakSearch detect_break(const CountSeries& series, std::int64_t lo,
                                       std::int64_t hi);

}  // namespace burstcast
