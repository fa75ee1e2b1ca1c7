#include "classic/ols.hpp"

#include <cmath>
#include <cstddef>

#include "core/errors.hpp"

namespace burstcast {

OlsFit ols_fit(const std::vector<std::vector<double>>& columns, const std::vector<double>& y) {
    const std::size_t k = columns.size();
    const std::size_t n = y.size();
    if (k == 0) throw ValidationError("ols_fit: empty design matrix");
    for (const auto& col : columns)
        if (col.size() != n) throw ValidationError("ols_fit: design column length mismatch");
    if (n < k) throw ValidationError("singular design matrix");

    // Normal equations A beta = b with A = X'X, b = X'y.
    std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
    std::vector<double> b(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += columns[i][t] * columns[j][t];
            a[i][j] = a[j][i] = s;
        }
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += columns[i][t] * y[t];
        b[i] = s;
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::fabs(a[i][i]));
    const double tol = 1e-12 * std::max(scale, 1.0);

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < tol) throw ValidationError("singular design matrix");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    OlsFit fit;
    fit.beta.assign(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < k; ++j) s -= a[i][j] * fit.beta[j];
        fit.beta[i] = s / a[i][i];
    }

    fit.fitted.assign(n, 0.0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < n; ++t) fit.fitted[t] += columns[j][t] * fit.beta[j];
    fit.residuals.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        fit.residuals[t] = y[t] - fit.fitted[t];
        fit.rss += fit.residuals[t] * fit.residuals[t];
    }
    return fit;
}

}  // namespace burstcast
