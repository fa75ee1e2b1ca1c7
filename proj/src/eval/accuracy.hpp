#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "burst/kleinberg.hpp"
#include "core/count_series.hpp"
#include "core/forecast_series.hpp"

namespace burstcast {

// Forecast-accuracy metrics over a masked set of weeks. MAPE skips weeks
// with actual = 0 (tracked in n_excluded_zero_actual); every other metric
// scores the full mask. Accuracies are 100 - MAPE and 100 - SMAPE.
struct AccuracyReport {
    std::string stratum = "all";  // all | level2 | level3
    std::string model;
    double mae = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
    double mape_accuracy = 0.0;   // meaningful only when mape_defined
    double smape_accuracy = 0.0;
    bool mape_defined = true;     // false when every masked week had actual 0
    std::size_t n_scored = 0;     // masked weeks scored by MAE/MSE/RMSE/SMAPE
    std::size_t n_excluded_zero_actual = 0;  // weeks MAPE dropped
};

// Core metric computation. `mask[t]` selects week t+1 for scoring; masked
// weeks must have a defined prediction. Throws when the mask is empty.
[[nodiscard]] AccuracyReport accuracy_report(const std::vector<double>& actual,
                                             const std::vector<double>& predicted,
                                             const std::vector<bool>& mask);

// Reports for the all-weeks stratum plus the level-2 and level-3 burst
// strata (weeks at exactly that reported level). Strata with no scoreable
// weeks are omitted and noted. Burst strata are asserted free of zero-actual
// weeks (burst weeks have high counts by construction).
struct StratifiedAccuracy {
    std::vector<AccuracyReport> reports;
    std::vector<std::string> notes;  // one entry per omitted stratum
};

[[nodiscard]] StratifiedAccuracy stratified_accuracy(const CountSeries& series,
                                                     const ForecastSeries& forecast,
                                                     const BurstAnnotation& bursts);

// Fraction of defined forecast weeks with lower <= actual <= upper.
[[nodiscard]] double interval_coverage(const CountSeries& series, const ForecastSeries& forecast);

// Tables II-IV style rendering for several models side by side: metrics as
// rows, models as columns, one block per stratum; plus a JSON document with
// the same content and interval coverage per model.
struct EvaluationTables {
    std::string json;
    std::string text;
};

[[nodiscard]] EvaluationTables evaluate_models(const CountSeries& series,
                                               const BurstAnnotation& bursts,
                                               const std::vector<const ForecastSeries*>& models);

}  // namespace burstcast
