#pragma once

#include <cstdint>
#include <string>

#include "classic/smoothers.hpp"
#include "classic/trend.hpp"
#include "core/count_series.hpp"
#include "core/forecast_series.hpp"

namespace burstcast {

enum class BaselineModel { AR1, AR3, ARMA11, MA, WMA, ES, HoltWinters };

struct BaselineConfig {
    BaselineModel model = BaselineModel::AR1;
    // When false (default), the model is fitted on trend/break residuals and
    // forecasts add the trend component back; when true it runs on raw counts.
    bool raw_counts = false;
    std::int64_t break_week = 0;  // 0 = search over [break_lo, break_hi]
    std::int64_t break_lo = 10;
    std::int64_t break_hi = 200;  // clamped to the valid candidate range
    SmootherParams smoother;      // window / smoothing parameters where relevant
};

struct BaselineResult {
    ForecastSeries forecast;
    std::string model_json;  // fitted parameters plus trend/break information
};

[[nodiscard]] std::string baseline_model_name(BaselineModel model);

// One-step-ahead count-scale forecast: residual-scale prediction plus the
// trend/break component, clamped below at 0, with a Gaussian 95% prediction
// interval (+-1.96 sigma, lower bound clamped at 0).
[[nodiscard]] BaselineResult classical_forecast(const CountSeries& series,
                                                const BaselineConfig& config);

}  // namespace burstcast
