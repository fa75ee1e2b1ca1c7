#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace burstcast {

// One week of a one-step-ahead forecast. Weeks without enough history to
// forecast (e.g. week 1, or the first k weeks of a window smoother) carry
// defined = false; their numeric fields are meaningless and serialize empty.
struct ForecastPoint {
    std::int64_t week = 0;
    double actual = 0.0;
    double point = 0.0;   // point forecast (posterior predictive mean for BSSM)
    double median = 0.0;  // predictive median (equals point for classical models)
    double lower = 0.0;   // interval lower bound, clamped at 0
    double upper = 0.0;   // interval upper bound
    bool defined = false;
};

// Per-week one-step-ahead forecast with interval bounds, one entry per week
// of the underlying series (weeks 1..n in order).
struct ForecastSeries {
    std::string model;               // model label, e.g. "bssm", "ar1"
    double level = 0.95;             // nominal interval level
    std::int64_t defined_from = 0;   // first forecastable week (0 if none)
    std::vector<ForecastPoint> points;
};

// CSV with header `week,actual,point,lower,upper,model`; one row per week,
// undefined weeks keep point/lower/upper empty.
[[nodiscard]] std::string forecast_to_csv(const ForecastSeries& f);

}  // namespace burstcast
