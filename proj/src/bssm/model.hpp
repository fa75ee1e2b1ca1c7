#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace burstcast {

// Bayesian negative-binomial local-level model
//   x_t ~ Normal(phi * g(y_{t-1}), sigma_w),  g(y) = ln(1 + y)
//   y_t ~ NB(mean exp(alpha + x_t), shape r)
// for t = 2..n, fitted by adaptive random-walk Metropolis-within-Gibbs.
//
// Priors: alpha ~ Normal(0, 5), phi ~ Normal(0, 2),
// sigma_w ~ Half-Normal(0, 1), r ~ Gamma(shape 2, rate 0.1).
struct BssmConfig {
    int chains = 4;
    int iterations = 3000;
    int warmup = 1000;
    std::uint64_t seed = 0;
    double credible_level = 0.95;
    bool store_latents = true;

    // Likelihood inverse temperature; 1 for posterior sampling, 1/ln(n_obs)
    // for the WBIC run. Only the NB observation terms are tempered.
    double tempering_beta = 1.0;
    // Seed-derivation label, so the WBIC run draws an independent stream.
    std::string stream_label = "chain";

    // Reduced-model switches used by validation harnesses: a fixed value is
    // excluded from sampling. fixed_sigma_w = 0 pins every latent x_t at
    // phi * g(y_{t-1}) (and requires fixed_phi).
    std::optional<double> fixed_phi;
    std::optional<double> fixed_sigma_w;

    void validate() const;
};

// Prior hyperparameters (see BssmConfig).
inline constexpr double kPriorAlphaSd = 5.0;
inline constexpr double kPriorPhiSd = 2.0;
inline constexpr double kPriorSigmaWScale = 1.0;
inline constexpr double kPriorShapeK = 2.0;     // Gamma shape
inline constexpr double kPriorShapeRate = 0.1;  // Gamma rate

// Merged posterior draws, ordered by (chain_id, draw_id).
struct PosteriorSamples {
    std::vector<double> alpha;
    std::vector<double> phi;
    std::vector<double> sigma_w;
    std::vector<double> shape_r;
    std::vector<int> chain_id;
    std::vector<int> draw_id;
    // Per-draw latent states x_2..x_n (empty when store_latents was false).
    std::vector<std::vector<double>> latent_x;

    std::size_t n_weeks = 0;      // length of the fitted series
    int chains = 0;
    int draws_per_chain = 0;
    std::uint64_t master_seed = 0;
    double credible_level = 0.95;

    // Mean over draws of sum_t ln p(y_t | theta, x_t) (untempered), the WBIC
    // building block.
    double mean_obs_loglik = 0.0;

    std::vector<std::string> warnings;  // e.g. extreme acceptance rates

    [[nodiscard]] std::size_t n_draws() const { return alpha.size(); }

    // CSV export, one row per draw: chain,draw,alpha,phi,sigma_w,shape_r.
    [[nodiscard]] std::string to_csv() const;
};

}  // namespace burstcast
