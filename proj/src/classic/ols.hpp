#pragma once

#include <vector>

namespace burstcast {

// Ordinary least squares via normal equations (column-major design matrix).
struct OlsFit {
    std::vector<double> beta;       // one per design column
    std::vector<double> fitted;     // X * beta
    std::vector<double> residuals;  // y - fitted
    double rss = 0.0;
};

// Solves min ||y - X beta||^2. `columns` holds the design matrix one column
// at a time; every column must have y.size() rows. Throws ValidationError
//("singular design matrix") when the normal equations are rank-deficient.
[[nodiscard]] OlsFit ols_fit(const std::vector<std::vector<double>>& columns,
                             const std::vector<double>& y);

}  // namespace burstcast
