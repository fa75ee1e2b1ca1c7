#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace burstcast {

enum class SmootherKind { MA, WMA, ES, HoltWinters };

struct SmootherParams {
    SmootherKind kind = SmootherKind::MA;
    int k = 3;              // window (MA, WMA), >= 1
    double alpha = 0.3;     // level smoothing (ES, Holt-Winters), in (0, 1]
    double beta = 0.1;      // trend smoothing (Holt-Winters), in (0, 1]
    double gamma = 0.1;     // season smoothing (Holt-Winters), in (0, 1]
    int season = 52;        // season length (Holt-Winters), >= 1
};

// One-step-ahead fitted values. fitted[t] predicts values[t] using only
// values[0..t-1]; the first `defined_from` entries are NaN (insufficient
// history). `next` extends the prediction one step past the end.
struct SmootherFit {
    std::vector<double> fitted;
    std::size_t defined_from = 0;  // first defined 0-based index
    double next = 0.0;
};

// MA: mean of the last k observations. WMA: linearly decaying weights k..1
// (most recent weighted k). ES: s_1 = y_1, prediction s_t, update
// s <- alpha*y + (1-alpha)*s. Holt-Winters: additive level/trend/season
// recursions, seasonal start-up over the first season (two seasons when
// available for the trend start).
[[nodiscard]] SmootherFit fit_smoother(const std::vector<double>& values,
                                       const SmootherParams& params);

[[nodiscard]] std::string smoother_kind_name(SmootherKind kind);

}  // namespace burstcast
