#include "bssm/diagnostics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include <json.hpp>

#include "core/errors.hpp"

namespace burstcast {

RhatEss rhat_ess(const std::vector<double>& draws, int chains, int draws_per_chain) {
    if (chains < 2) throw ValidationError("diagnostics: need at least 2 chains");
    if (draws.size() != static_cast<std::size_t>(chains) * static_cast<std::size_t>(draws_per_chain))
        throw ValidationError("diagnostics: draw count mismatch");
    const std::size_t half = static_cast<std::size_t>(draws_per_chain) / 2;
    if (half < 2) throw ValidationError("diagnostics: too few draws per chain");

    // Split each chain into two halves (dropping the middle draw when odd).
    const std::size_t m = 2 * static_cast<std::size_t>(chains);
    std::vector<const double*> seq(m);
    for (int c = 0; c < chains; ++c) {
        const double* chain = draws.data() + static_cast<std::size_t>(c) * draws_per_chain;
        seq[2 * static_cast<std::size_t>(c)] = chain;
        seq[2 * static_cast<std::size_t>(c) + 1] = chain + (draws_per_chain - half);
    }

    std::vector<double> mean(m, 0.0), var(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < half; ++i) mean[j] += seq[j][i];
        mean[j] /= static_cast<double>(half);
        for (std::size_t i = 0; i < half; ++i) {
            const double dlt = seq[j][i] - mean[j];
            var[j] += dlt * dlt;
        }
        var[j] /= static_cast<double>(half - 1);
    }
    double w = 0.0;
    for (double v : var) w += v;
    w /= static_cast<double>(m);

    double grand = 0.0;
    for (double v : mean) grand += v;
    grand /= static_cast<double>(m);
    double b = 0.0;
    for (double v : mean) b += (v - grand) * (v - grand);
    b *= static_cast<double>(half) / static_cast<double>(m - 1);

    RhatEss out;
    if (w <= 0.0) {
        out.rhat_defined = false;
        out.ess = 0.0;
        return out;
    }
    const double ld = static_cast<double>(half);
    const double var_plus = (ld - 1.0) / ld * w + b / ld;
    out.rhat = std::sqrt(var_plus / w);

    // Combined autocorrelations: rho_t = 1 - (W - mean_j c_{j,t}) / var_plus,
    // with per-sequence autocovariances c_{j,t} (divisor half).
    const std::size_t max_lag = half - 1;
    std::vector<double> rho(max_lag + 1, 0.0);
    for (std::size_t t = 0; t <= max_lag; ++t) {
        double acov = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i + t < half; ++i)
                s += (seq[j][i] - mean[j]) * (seq[j][i + t] - mean[j]);
            acov += s / ld;
        }
        acov /= static_cast<double>(m);
        rho[t] = 1.0 - (w - acov) / var_plus;
    }

    // Geyer initial positive sequence over paired sums, with the monotone
    // non-increasing refinement.
    double tau = -1.0;
    double prev_pair = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; 2 * k + 1 <= max_lag; ++k) {
        double pair = rho[2 * k] + rho[2 * k + 1];
        if (pair <= 0.0) break;
        pair = std::min(pair, prev_pair);
        prev_pair = pair;
        tau += 2.0 * pair;
    }
    tau = std::max(tau, 1e-12);
    out.ess = static_cast<double>(m) * ld / tau;
    return out;
}

DiagnosticsReport diagnostics(const PosteriorSamples& samples) {
    if (samples.chains < 2) throw ValidationError("diagnostics: need at least 2 chains");

    DiagnosticsReport report;
    const struct {
        const char* name;
        const std::vector<double>* values;
    } params[] = {{"alpha", &samples.alpha},
                  {"phi", &samples.phi},
                  {"sigma_w", &samples.sigma_w},
                  {"shape_r", &samples.shape_r}};
    bool all = true;
    for (const auto& p : params) {
        const RhatEss re = rhat_ess(*p.values, samples.chains, samples.draws_per_chain);
        ParamDiagnostics pd;
        pd.name = p.name;
        pd.rhat = re.rhat;
        pd.rhat_defined = re.rhat_defined;
        pd.ess = re.ess;
        pd.pass = re.rhat_defined && re.rhat < 1.05 && re.ess > 400.0;
        all = all && pd.pass;
        report.params.push_back(std::move(pd));
    }
    report.all_pass = all;
    report.warnings = samples.warnings;
    return report;
}

std::string diagnostics_to_json(const DiagnosticsReport& report) {
    nlohmann::ordered_json j;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& p : report.params) {
        nlohmann::ordered_json jp;
        if (p.rhat_defined)
            jp["rhat"] = p.rhat;
        else
            jp["rhat"] = nullptr;
        jp["ess"] = p.ess;
        jp["pass"] = p.pass;
        j["parameters"][p.name] = jp;
    }
    j["all_pass"] = report.all_pass;
    j["warnings"] = report.warnings;
    return j.dump(2);
}

}  // namespace burstcast
