#include "classic/arma.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>

#include "classic/ols.hpp"
#include "core/errors.hpp"

namespace burstcast {

namespace {

// Conditional residuals of an ARMA(p,q) with parameters (c, phi, theta):
// eps_t = v_t - c - sum phi_i v_{t-i} - sum theta_j eps_{t-j}, eps = 0 before
// the first forecastable index. Returns the residuals for t = p..n-1 (0-based).
std::vector<double> arma_residuals(const std::vector<double>& v, int p, int q,
                                   const double* params) {
    const double c = params[0];
    const double* phi = params + 1;
    const double* theta = params + 1 + p;
    const std::size_t n = v.size();
    std::vector<double> eps(n, 0.0);
    for (std::size_t t = static_cast<std::size_t>(p); t < n; ++t) {
        double pred = c;
        for (int i = 1; i <= p; ++i) pred += phi[i - 1] * v[t - static_cast<std::size_t>(i)];
        for (int j = 1; j <= q; ++j) {
            if (t >= static_cast<std::size_t>(j) && t - static_cast<std::size_t>(j) >= static_cast<std::size_t>(p))
                pred += theta[j - 1] * eps[t - static_cast<std::size_t>(j)];
        }
        eps[t] = v[t] - pred;
    }
    return std::vector<double>(eps.begin() + p, eps.end());
}

double arma_css(const std::vector<double>& v, int p, int q, const std::vector<double>& params) {
    const auto eps = arma_residuals(v, p, q, params.data());
    double css = 0.0;
    for (double e : eps) css += e * e;
    if (!std::isfinite(css)) return 1e300;
    return css;
}

}  // namespace

bool ar_is_stationary(const std::vector<double>& ar_coeffs) {
    const std::size_t p = ar_coeffs.size();
    if (p == 0) return true;
    // Roots of the companion polynomial z^p - phi_1 z^{p-1} - ... - phi_p must
    // lie inside the unit circle (equivalent to the AR polynomial's roots
    // lying outside it). Durand-Kerner simultaneous iteration.
    std::vector<std::complex<double>> coeff(p + 1);  // monic, degree p
    coeff[0] = 1.0;
    for (std::size_t i = 1; i <= p; ++i) coeff[i] = -ar_coeffs[i - 1];
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (const auto& cf : coeff) acc = acc * z + cf;
        return acc;
    };
    std::vector<std::complex<double>> roots(p);
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> pw = 1.0;
    for (std::size_t i = 0; i < p; ++i) {
        pw *= seed;
        roots[i] = pw;
    }
    for (int iter = 0; iter < 200; ++iter) {
        double moved = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            std::complex<double> denom = 1.0;
            for (std::size_t j = 0; j < p; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            const std::complex<double> delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-12) break;
    }
    for (const auto& r : roots)
        if (std::abs(r) >= 1.0) return false;
    return true;
}

ARModel fit_ar(const std::vector<double>& values, int order_p) {
    if (order_p < 1) throw ValidationError("fit_ar: order_p must be >= 1");
    const std::size_t n = values.size();
    if (n <= static_cast<std::size_t>(10 * order_p))
        throw ValidationError("fit_ar: series length must exceed 10x the order");

    const auto p = static_cast<std::size_t>(order_p);
    const std::size_t m = n - p;
    std::vector<std::vector<double>> cols(p + 1, std::vector<double>(m));
    std::vector<double> y(m);
    for (std::size_t t = 0; t < m; ++t) {
        cols[0][t] = 1.0;
        for (std::size_t i = 1; i <= p; ++i) cols[i][t] = values[t + p - i];
        y[t] = values[t + p];
    }
    const OlsFit ols = ols_fit(cols, y);

    ARModel model;
    model.order_p = order_p;
    model.intercept = ols.beta[0];
    model.coefficients.assign(ols.beta.begin() + 1, ols.beta.end());
    model.residuals = ols.residuals;
    model.noise_variance = ols.rss / static_cast<double>(m);
    model.stationary = ar_is_stationary(model.coefficients);
    return model;
}

ARMAModel fit_arma(const std::vector<double>& values, int order_p, int order_q) {
    if (order_p < 0 || order_q < 0 || order_p + order_q == 0)
        throw ValidationError("fit_arma: invalid order (p, q must be >= 0 and not both 0)");
    const std::size_t n = values.size();
    if (n <= static_cast<std::size_t>(10 * (order_p + order_q)))
        throw ValidationError("fit_arma: series length must exceed 10x the order");

    const int dim = 1 + order_p + order_q;

    // Start from the conditional-least-squares AR fit (theta = 0).
    std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
    if (order_p >= 1) {
        const ARModel ar = fit_ar(values, order_p);
        x0[0] = ar.intercept;
        for (int i = 0; i < order_p; ++i) x0[static_cast<std::size_t>(1 + i)] = ar.coefficients[static_cast<std::size_t>(i)];
    } else {
        double mean = 0.0;
        for (double v : values) mean += v;
        x0[0] = mean / static_cast<double>(n);
    }

    // Nelder-Mead simplex minimization of the CSS.
    const double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
    const int kMaxIter = 2000;
    const double kTol = 1e-8;

    std::vector<std::vector<double>> simplex(static_cast<std::size_t>(dim) + 1, x0);
    for (int i = 0; i < dim; ++i) simplex[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += 0.1;
    std::vector<double> fval(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i)
        fval[i] = arma_css(values, order_p, order_q, simplex[i]);

    auto order_simplex = [&] {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return fval[a] < fval[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> f2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            f2.push_back(fval[i]);
        }
        simplex.swap(s2);
        fval.swap(f2);
    };

    int iter = 0;
    double step = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (; iter < kMaxIter; ++iter) {
        order_simplex();
        step = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            for (int d = 0; d < dim; ++d)
                step = std::max(step, std::fabs(simplex[i][static_cast<std::size_t>(d)] -
                                                simplex[0][static_cast<std::size_t>(d)]));
        if (step < kTol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (int d = 0; d < dim; ++d)
                centroid[static_cast<std::size_t>(d)] += simplex[i][static_cast<std::size_t>(d)];
        for (int d = 0; d < dim; ++d) centroid[static_cast<std::size_t>(d)] /= dim;

        auto blend = [&](double w) {
            std::vector<double> pnt(static_cast<std::size_t>(dim));
            for (int d = 0; d < dim; ++d)
                pnt[static_cast<std::size_t>(d)] =
                    centroid[static_cast<std::size_t>(d)] +
                    w * (centroid[static_cast<std::size_t>(d)] -
                         simplex.back()[static_cast<std::size_t>(d)]);
            return pnt;
        };

        const auto reflected = blend(kReflect);
        const double fr = arma_css(values, order_p, order_q, reflected);
        if (fr < fval[0]) {
            const auto expanded = blend(kExpand);
            const double fe = arma_css(values, order_p, order_q, expanded);
            if (fe < fr) {
                simplex.back() = expanded;
                fval.back() = fe;
            } else {
                simplex.back() = reflected;
                fval.back() = fr;
            }
        } else if (fr < fval[fval.size() - 2]) {
            simplex.back() = reflected;
            fval.back() = fr;
        } else {
            const auto contracted = blend(fr < fval.back() ? kContract : -kContract);
            const double fc = arma_css(values, order_p, order_q, contracted);
            if (fc < std::min(fr, fval.back())) {
                simplex.back() = contracted;
                fval.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (int d = 0; d < dim; ++d)
                        simplex[i][static_cast<std::size_t>(d)] =
                            simplex[0][static_cast<std::size_t>(d)] +
                            kShrink * (simplex[i][static_cast<std::size_t>(d)] -
                                       simplex[0][static_cast<std::size_t>(d)]);
                    fval[i] = arma_css(values, order_p, order_q, simplex[i]);
                }
            }
        }
    }
    order_simplex();

    if (!converged) {
        std::ostringstream msg;
        msg << "fit_arma(" << order_p << "," << order_q << "): simplex did not converge after "
            << kMaxIter << " iterations (final step " << step << "); best-so-far c=" << simplex[0][0]
            << " ar=[";
        for (int i = 0; i < order_p; ++i)
            msg << (i ? "," : "") << simplex[0][static_cast<std::size_t>(1 + i)];
        msg << "] ma=[";
        for (int j = 0; j < order_q; ++j)
            msg << (j ? "," : "") << simplex[0][static_cast<std::size_t>(1 + order_p + j)];
        msg << "]";
        throw NumericError(msg.str());
    }

    ARMAModel model;
    model.order_p = order_p;
    model.order_q = order_q;
    model.intercept = simplex[0][0];
    model.ar_coeffs.assign(simplex[0].begin() + 1, simplex[0].begin() + 1 + order_p);
    model.ma_coeffs.assign(simplex[0].begin() + 1 + order_p, simplex[0].end());
    model.residuals = arma_residuals(values, order_p, order_q, simplex[0].data());
    const double m = static_cast<double>(n) - order_p;
    model.noise_variance = fval[0] / m;
    model.aic = m * std::log(model.noise_variance) + 2.0 * (order_p + order_q + 1);
    model.stationary = ar_is_stationary(model.ar_coeffs);
    model.iterations = iter;
    return model;
}

std::pair<int, int> select_arma(const std::vector<double>& values, int p_max, int q_max) {
    if (p_max < 0 || q_max < 0 || p_max > 3 || q_max > 3)
        throw ValidationError("select_arma: p_max and q_max must be within 0..3");

    bool found = false;
    double best_aic = 0.0;
    std::pair<int, int> best{0, 0};
    std::string last_error = "no candidate orders";
    for (int p = 0; p <= p_max; ++p) {
        for (int q = 0; q <= q_max; ++q) {
            if (p == 0 && q == 0) continue;
            double aic;
            try {
                aic = fit_arma(values, p, q).aic;
            } catch (const std::exception& e) {
                last_error = e.what();
                continue;
            }
            const bool better =
                !found || aic < best_aic ||
                (aic == best_aic && (p + q < best.first + best.second ||
                                     (p + q == best.first + best.second && q < best.second)));
            if (better) {
                found = true;
                best_aic = aic;
                best = {p, q};
            }
        }
    }
    if (!found) throw NumericError("select_arma: every grid cell failed to fit: " + last_error);
    return best;
}

}  // namespace burstcast
