#pragma once

#include <string>
#include <vector>

#include "bssm/model.hpp"

namespace burstcast {

struct ParamDiagnostics {
    std::string name;
    double rhat = 0.0;
    bool rhat_defined = true;  // false for zero-variance (constant) chains
    double ess = 0.0;
    bool pass = false;  // rhat < 1.05 and ess > 400
};

struct DiagnosticsReport {
    std::vector<ParamDiagnostics> params;  // alpha, phi, sigma_w, shape_r
    bool all_pass = false;
    std::vector<std::string> warnings;  // forwarded sampler warnings
};

// Split-Rhat and effective sample size per scalar parameter. Each chain is
// split in half; Rhat = sqrt(var_plus / W) with var_plus the weighted
// within/between mixture, and ESS uses Geyer's initial-positive-sequence
// truncation of the combined autocorrelations. Requires >= 2 chains.
[[nodiscard]] DiagnosticsReport diagnostics(const PosteriorSamples& samples);

// Split-Rhat/ESS of one parameter laid out as `chains` consecutive blocks of
// `draws_per_chain` values. Exposed for direct testing.
struct RhatEss {
    double rhat = 0.0;
    bool rhat_defined = true;
    double ess = 0.0;
};
[[nodiscard]] RhatEss rhat_ess(const std::vector<double>& draws, int chains,
                               int draws_per_chain);

[[nodiscard]] std::string diagnostics_to_json(const DiagnosticsReport& report);

}  // namespace burstcast
