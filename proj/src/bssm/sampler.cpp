#include "bssm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <thread>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/special_functions.hpp"

namespace burstcast {

void BssmConfig::validate() const {
    if (chains < 2) throw ValidationError("bssm.chains must be >= 2");
    if (iterations < 8) throw ValidationError("bssm.iterations must be >= 8");
    if (warmup >= iterations)
        throw ValidationError("bssm.iterations must exceed bssm.warmup");
    if (warmup < iterations / 4)
        throw ValidationError("bssm.warmup must be at least bssm.iterations/4");
    if (!(credible_level > 0.0 && credible_level < 1.0))
        throw ValidationError("bssm.credible_level must lie in (0, 1)");
    if (!(tempering_beta > 0.0) || tempering_beta > 1.0)
        throw ValidationError("bssm tempering beta must lie in (0, 1]");
    if (fixed_sigma_w) {
        if (*fixed_sigma_w < 0.0) throw ValidationError("bssm fixed sigma_w must be >= 0");
        if (*fixed_sigma_w == 0.0 && !fixed_phi)
            throw ValidationError("bssm fixed sigma_w = 0 requires a fixed phi");
    }
}

namespace {

struct ChainResult {
    std::vector<double> alpha, phi, sigma_w, shape_r;
    std::vector<std::vector<double>> latent_x;
    double sum_obs_loglik = 0.0;  // over retained draws
    std::vector<std::string> warnings;
};

// Tracks proposal-scale adaptation for one block: batches of 50 warmup
// proposals steered into the 20-50% acceptance window, frozen afterwards.
struct AdaptiveScale {
    double scale;
    int accepted = 0;
    int proposed = 0;
    int accepted_post = 0;  // after warmup
    int proposed_post = 0;

    explicit AdaptiveScale(double s) : scale(s) {}

    void record(bool accept, bool in_warmup) {
        if (in_warmup) {
            ++proposed;
            accepted += accept ? 1 : 0;
            if (proposed == 50) {
                const double rate = accepted / 50.0;
                if (rate < 0.20)
                    scale *= 0.8;
                else if (rate > 0.50)
                    scale *= 1.25;
                accepted = 0;
                proposed = 0;
            }
        } else {
            ++proposed_post;
            accepted_post += accept ? 1 : 0;
        }
    }

    [[nodiscard]] double post_rate() const {
        return proposed_post == 0 ? 0.0
                                  : static_cast<double>(accepted_post) /
                                        static_cast<double>(proposed_post);
    }
};

class ChainSampler {
public:
    ChainSampler(const CountSeries& series, const BssmConfig& config, int chain)
        : cfg_(config),
          chain_(chain),
          rng_(derive_seed(config.seed, config.stream_label + "-" + std::to_string(chain))) {
        const std::size_t n = series.size();
        m_ = n - 1;
        y_.resize(m_);
        g_prev_.resize(m_);
        lnfact_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            y_[i] = series.counts[i + 1];
            g_prev_[i] = std::log1p(static_cast<double>(series.counts[i]));
            lnfact_[i] = log_gamma(static_cast<double>(y_[i]) + 1.0);
        }
        // Unique counts let the r-block recompute its Gamma-function terms in
        // O(#unique) instead of O(n).
        std::map<std::int64_t, std::size_t> uniq;
        for (std::size_t i = 0; i < m_; ++i) uniq.emplace(y_[i], 0);
        unique_y_.reserve(uniq.size());
        for (auto& [value, index] : uniq) {
            index = unique_y_.size();
            unique_y_.push_back(value);
        }
        idx_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) idx_[i] = uniq[y_[i]];

        gbar_ = 0.0;
        for (std::size_t i = 0; i < m_; ++i) gbar_ += g_prev_[i];
        gbar_ /= static_cast<double>(m_);

        pin_latents_ = cfg_.fixed_sigma_w && *cfg_.fixed_sigma_w == 0.0;
    }

    ChainResult run() {
        init_state();
        const int retained = cfg_.iterations - cfg_.warmup;
        ChainResult out;
        out.alpha.reserve(static_cast<std::size_t>(retained));
        out.phi.reserve(static_cast<std::size_t>(retained));
        out.sigma_w.reserve(static_cast<std::size_t>(retained));
        out.shape_r.reserve(static_cast<std::size_t>(retained));
        if (cfg_.store_latents) out.latent_x.reserve(static_cast<std::size_t>(retained));

        for (int it = 0; it < cfg_.iterations; ++it) {
            const bool in_warmup = it < cfg_.warmup;
            update_alpha(in_warmup);
            if (!cfg_.fixed_phi) update_phi(in_warmup);
            if (!cfg_.fixed_sigma_w) update_lsig(in_warmup);
            update_lr(in_warmup);
            if (!pin_latents_) {
                update_translation(in_warmup);
                if (!cfg_.fixed_phi) update_shear(in_warmup);
                if (!cfg_.fixed_sigma_w) update_sigma_scale(in_warmup);
                update_latents(in_warmup);
                if (!cfg_.fixed_sigma_w) update_sigma_scale(in_warmup);
                update_lr(in_warmup);
                update_latents(in_warmup);
                if (!cfg_.fixed_sigma_w) update_sigma_scale(in_warmup);
                update_latents(in_warmup);
            }
            if (!in_warmup) {
                out.alpha.push_back(alpha_);
                out.phi.push_back(phi_);
                out.sigma_w.push_back(sigma_);
                out.shape_r.push_back(r_);
                if (cfg_.store_latents) out.latent_x.push_back(x_);
                out.sum_obs_loglik += obs_sum();
            }
        }

        auto warn_rate = [&](const char* name, double rate) {
            if (rate < 0.05 || rate > 0.95) {
                std::ostringstream msg;
                msg << "chain " << chain_ << ": " << name << " acceptance " << rate
                    << " outside [0.05, 0.95] after warmup";
                out.warnings.push_back(msg.str());
            }
        };
        warn_rate("alpha", s_alpha_.post_rate());
        if (!cfg_.fixed_phi) warn_rate("phi", s_phi_.post_rate());
        if (!cfg_.fixed_sigma_w) warn_rate("sigma_w", s_lsig_.post_rate());
        warn_rate("shape_r", s_lr_.post_rate());
        if (!pin_latents_) {
            double acc = 0.0, prop = 0.0;
            for (const auto& s : s_x_) {
                acc += s.accepted_post;
                prop += s.proposed_post;
            }
            warn_rate("latent_x", prop == 0.0 ? 0.0 : acc / prop);
        }
        return out;
    }

private:
    const BssmConfig& cfg_;
    int chain_;
    Rng rng_;

    std::size_t m_ = 0;                  // likelihood terms (weeks 2..n)
    double gbar_ = 0.0;                  // mean of g_prev_
    std::vector<std::int64_t> y_;        // y_t for t = 2..n
    std::vector<double> g_prev_;         // ln(1 + y_{t-1})
    std::vector<double> lnfact_;         // ln Gamma(y_t + 1)
    std::vector<std::int64_t> unique_y_; // sorted distinct counts
    std::vector<std::size_t> idx_;       // week -> unique index
    bool pin_latents_ = false;

    // Current state.
    double alpha_ = 0.0, phi_ = 0.0, lsig_ = 0.0, sigma_ = 1.0, lr_ = 0.0, r_ = 1.0;
    std::vector<double> x_;

    // Caches: mu_[i] = exp(alpha + x_i); core_[i] = NB log PMF term that
    // depends on (mu, r); lgc_[i] = ln Gamma(y+r) - ln Gamma(r) - ln Gamma(y+1).
    std::vector<double> mu_, core_, lgc_, table_;
    std::vector<double> scratch_mu_, scratch_core_, scratch_lgc_, scratch_table_;

    AdaptiveScale s_alpha_{0.1}, s_phi_{0.1}, s_lsig_{0.2}, s_lr_{0.2}, s_shift_{0.1},
        s_shear_{0.1}, s_scale_{0.1};
    std::vector<AdaptiveScale> s_x_;

    [[nodiscard]] double core_term(std::size_t i, double mu, double r) const {
        const double yd = static_cast<double>(y_[i]);
        return -r * std::log1p(mu / r) + yd * std::log(mu) - yd * std::log(r + mu);
    }

    void rebuild_r_tables(double r, std::vector<double>& table, std::vector<double>& lgc) const {
        table.resize(unique_y_.size());
        const double lg_r = log_gamma(r);
        for (std::size_t k = 0; k < unique_y_.size(); ++k)
            table[k] = log_gamma(static_cast<double>(unique_y_[k]) + r) - lg_r;
        lgc.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) lgc[i] = table[idx_[i]] - lnfact_[i];
    }

    [[nodiscard]] double obs_sum() const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) s += lgc_[i] + core_[i];
        return s;
    }

    [[nodiscard]] double state_ss() const {  // sum of squared level errors
        double ss = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double d = x_[i] - phi_ * g_prev_[i];
            ss += d * d;
        }
        return ss;
    }

    void init_state() {
        double mean_y = 0.0, mean_g = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            mean_y += static_cast<double>(y_[i]);
            mean_g += g_prev_[i];
        }
        mean_y /= static_cast<double>(m_);
        mean_g /= static_cast<double>(m_);

        const double base_alpha = std::log1p(mean_y) - 0.5 * mean_g;
        alpha_ = base_alpha + 0.5 * rng_.normal();
        phi_ = cfg_.fixed_phi ? *cfg_.fixed_phi : 0.5 + 0.25 * rng_.normal();
        lsig_ = cfg_.fixed_sigma_w ? std::log(std::max(*cfg_.fixed_sigma_w, 1e-12))
                                   : std::log(0.5) + 0.3 * rng_.normal();
        sigma_ = cfg_.fixed_sigma_w ? *cfg_.fixed_sigma_w : std::exp(lsig_);
        lr_ = std::log(5.0) + 0.3 * rng_.normal();
        r_ = std::exp(lr_);

        x_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i)
            x_[i] = phi_ * g_prev_[i] + (pin_latents_ ? 0.0 : 0.1 * rng_.normal());

        mu_.resize(m_);
        core_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            mu_[i] = std::exp(alpha_ + x_[i]);
            core_[i] = core_term(i, mu_[i], r_);
        }
        rebuild_r_tables(r_, table_, lgc_);
        s_x_.assign(m_, AdaptiveScale{0.5});
    }

    void update_alpha(bool in_warmup) {
        const double prop = alpha_ + s_alpha_.scale * rng_.normal();
        scratch_mu_.resize(m_);
        scratch_core_.resize(m_);
        double delta_obs = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            scratch_mu_[i] = std::exp(prop + x_[i]);
            scratch_core_[i] = core_term(i, scratch_mu_[i], r_);
            delta_obs += scratch_core_[i] - core_[i];
        }
        const double delta_prior =
            -(prop * prop - alpha_ * alpha_) / (2.0 * kPriorAlphaSd * kPriorAlphaSd);
        const bool accept =
            std::log(rng_.uniform()) < cfg_.tempering_beta * delta_obs + delta_prior;
        if (accept) {
            alpha_ = prop;
            mu_.swap(scratch_mu_);
            core_.swap(scratch_core_);
        }
        s_alpha_.record(accept, in_warmup);
    }

    void update_phi(bool in_warmup) {
        const double prop = phi_ + s_phi_.scale * rng_.normal();
        double delta_state = 0.0;
        const double inv2s2 = 1.0 / (2.0 * sigma_ * sigma_);
        for (std::size_t i = 0; i < m_; ++i) {
            const double d_new = x_[i] - prop * g_prev_[i];
            const double d_old = x_[i] - phi_ * g_prev_[i];
            delta_state += (d_old * d_old - d_new * d_new) * inv2s2;
        }
        const double delta_prior =
            -(prop * prop - phi_ * phi_) / (2.0 * kPriorPhiSd * kPriorPhiSd);
        const bool accept = std::log(rng_.uniform()) < delta_state + delta_prior;
        if (accept) phi_ = prop;
        s_phi_.record(accept, in_warmup);
    }

    void update_lsig(bool in_warmup) {
        const double prop_l = lsig_ + s_lsig_.scale * rng_.normal();
        const double prop_s = std::exp(prop_l);
        const double ss = state_ss();
        const double md = static_cast<double>(m_);
        const double delta_state = -md * prop_l - ss / (2.0 * prop_s * prop_s) -
                                   (-md * lsig_ - ss / (2.0 * sigma_ * sigma_));
        // Half-Normal(0, 1) prior density plus the log-scale Jacobian.
        const double delta_prior = -(prop_s * prop_s - sigma_ * sigma_) /
                                       (2.0 * kPriorSigmaWScale * kPriorSigmaWScale) +
                                   (prop_l - lsig_);
        const bool accept = std::log(rng_.uniform()) < delta_state + delta_prior;
        if (accept) {
            lsig_ = prop_l;
            sigma_ = prop_s;
        }
        s_lsig_.record(accept, in_warmup);
    }

    void update_lr(bool in_warmup) {
        const double prop_l = lr_ + s_lr_.scale * rng_.normal();
        const double prop_r = std::exp(prop_l);
        rebuild_r_tables(prop_r, scratch_table_, scratch_lgc_);
        scratch_core_.resize(m_);
        double delta_obs = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            scratch_core_[i] = core_term(i, mu_[i], prop_r);
            delta_obs += scratch_lgc_[i] + scratch_core_[i] - lgc_[i] - core_[i];
        }
        // Gamma(shape 2, rate 0.1) prior plus the log-scale Jacobian folds to
        // shape * ln r - rate * r.
        const double delta_prior = kPriorShapeK * (prop_l - lr_) -
                                   kPriorShapeRate * (prop_r - r_);
        const bool accept =
            std::log(rng_.uniform()) < cfg_.tempering_beta * delta_obs + delta_prior;
        if (accept) {
            lr_ = prop_l;
            r_ = prop_r;
            table_.swap(scratch_table_);
            lgc_.swap(scratch_lgc_);
            core_.swap(scratch_core_);
        }
        s_lr_.record(accept, in_warmup);
    }

    // Ridge move: alpha' = alpha + d, x' = x - d leaves every mu_t unchanged,
    // so only the state terms and the alpha prior enter the ratio. This cuts
    // the alpha/x posterior correlation that plain scalar walks mix through
    // slowly.
    void update_translation(bool in_warmup) {
        const double d = s_shift_.scale * rng_.normal();
        const double prop_alpha = alpha_ + d;
        double delta_state = 0.0;
        const double inv2s2 = 1.0 / (2.0 * sigma_ * sigma_);
        for (std::size_t i = 0; i < m_; ++i) {
            const double r_old = x_[i] - phi_ * g_prev_[i];
            const double r_new = r_old - d;
            delta_state += (r_old * r_old - r_new * r_new) * inv2s2;
        }
        const double delta_prior = -(prop_alpha * prop_alpha - alpha_ * alpha_) /
                                   (2.0 * kPriorAlphaSd * kPriorAlphaSd);
        const bool accept = std::log(rng_.uniform()) < delta_state + delta_prior;
        if (accept) {
            alpha_ = prop_alpha;
            for (std::size_t i = 0; i < m_; ++i) x_[i] -= d;
        }
        s_shift_.record(accept, in_warmup);
    }

    // Shear move along the phi/alpha ridge: phi' = phi + d, x_t' = x_t + d g_t,
    // alpha' = alpha - d gbar. The state residuals x_t - phi g_t are exactly
    // invariant and the observation means move only by d (g_t - gbar), so the
    // chain can traverse the phi direction in large steps that scalar walks
    // (which hold the tightly-constrained x field fixed) cannot take.
    void update_shear(bool in_warmup) {
        const double d = s_shear_.scale * rng_.normal();
        const double prop_phi = phi_ + d;
        const double prop_alpha = alpha_ - d * gbar_;
        scratch_mu_.resize(m_);
        scratch_core_.resize(m_);
        double delta_obs = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            scratch_mu_[i] = mu_[i] * std::exp(d * (g_prev_[i] - gbar_));
            scratch_core_[i] = core_term(i, scratch_mu_[i], r_);
            delta_obs += scratch_core_[i] - core_[i];
        }
        const double delta_prior =
            -(prop_alpha * prop_alpha - alpha_ * alpha_) /
                (2.0 * kPriorAlphaSd * kPriorAlphaSd) -
            (prop_phi * prop_phi - phi_ * phi_) / (2.0 * kPriorPhiSd * kPriorPhiSd);
        const bool accept =
            std::log(rng_.uniform()) < cfg_.tempering_beta * delta_obs + delta_prior;
        if (accept) {
            phi_ = prop_phi;
            alpha_ = prop_alpha;
            for (std::size_t i = 0; i < m_; ++i) x_[i] += d * g_prev_[i];
            mu_.swap(scratch_mu_);
            core_.swap(scratch_core_);
        }
        s_shear_.record(accept, in_warmup);
    }

    // Scale move against the sigma_w funnel: lsig' = lsig + d together with
    // x_t' = phi g_t + (x_t - phi g_t) e^d. The state density change (-m d)
    // cancels against the transformation Jacobian (+m d) exactly, leaving the
    // observation terms and the sigma prior, so sigma_w can move without
    // waiting for the latent field to random-walk into the new scale.
    void update_sigma_scale(bool in_warmup) {
        const double d = s_scale_.scale * rng_.normal();
        const double prop_l = lsig_ + d;
        const double prop_s = std::exp(prop_l);
        const double grow = std::exp(d) - 1.0;
        scratch_mu_.resize(m_);
        scratch_core_.resize(m_);
        double delta_obs = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double resid = x_[i] - phi_ * g_prev_[i];
            scratch_mu_[i] = mu_[i] * std::exp(resid * grow);
            scratch_core_[i] = core_term(i, scratch_mu_[i], r_);
            delta_obs += scratch_core_[i] - core_[i];
        }
        const double delta_prior = -(prop_s * prop_s - sigma_ * sigma_) /
                                       (2.0 * kPriorSigmaWScale * kPriorSigmaWScale) +
                                   (prop_l - lsig_);
        const bool accept =
            std::log(rng_.uniform()) < cfg_.tempering_beta * delta_obs + delta_prior;
        if (accept) {
            lsig_ = prop_l;
            sigma_ = prop_s;
            for (std::size_t i = 0; i < m_; ++i)
                x_[i] = phi_ * g_prev_[i] + (x_[i] - phi_ * g_prev_[i]) * (1.0 + grow);
            mu_.swap(scratch_mu_);
            core_.swap(scratch_core_);
        }
        s_scale_.record(accept, in_warmup);
    }

    void update_latents(bool in_warmup) {
        const double inv2s2 = 1.0 / (2.0 * sigma_ * sigma_);
        for (std::size_t i = 0; i < m_; ++i) {
            const double prop = x_[i] + s_x_[i].scale * rng_.normal();
            const double mu_prop = std::exp(alpha_ + prop);
            const double core_prop = core_term(i, mu_prop, r_);
            const double d_new = prop - phi_ * g_prev_[i];
            const double d_old = x_[i] - phi_ * g_prev_[i];
            const double delta = (d_old * d_old - d_new * d_new) * inv2s2 +
                                 cfg_.tempering_beta * (core_prop - core_[i]);
            const bool accept = std::log(rng_.uniform()) < delta;
            if (accept) {
                x_[i] = prop;
                mu_[i] = mu_prop;
                core_[i] = core_prop;
            }
            s_x_[i].record(accept, in_warmup);
        }
    }
};

}  // namespace

PosteriorSamples fit_bssm(const CountSeries& series, const BssmConfig& config) {
    series.validate();
    config.validate();
    const std::size_t n = series.size();
    if (n < 20) throw ValidationError("fit_bssm: need at least 20 weeks");
    if (series.total() == 0) throw ValidationError("fit_bssm: all-zero series");

    std::vector<ChainResult> results(static_cast<std::size_t>(config.chains));
    std::vector<std::thread> workers;
    workers.reserve(results.size());
    for (int c = 0; c < config.chains; ++c) {
        workers.emplace_back([&series, &config, &results, c] {
            ChainSampler sampler(series, config, c);
            results[static_cast<std::size_t>(c)] = sampler.run();
        });
    }
    for (auto& w : workers) w.join();

    PosteriorSamples merged;
    merged.n_weeks = n;
    merged.chains = config.chains;
    merged.draws_per_chain = config.iterations - config.warmup;
    merged.master_seed = config.seed;
    merged.credible_level = config.credible_level;
    const std::size_t total =
        static_cast<std::size_t>(config.chains) * static_cast<std::size_t>(merged.draws_per_chain);
    merged.alpha.reserve(total);
    merged.phi.reserve(total);
    merged.sigma_w.reserve(total);
    merged.shape_r.reserve(total);
    merged.chain_id.reserve(total);
    merged.draw_id.reserve(total);
    if (config.store_latents) merged.latent_x.reserve(total);

    double loglik_sum = 0.0;
    for (int c = 0; c < config.chains; ++c) {
        auto& res = results[static_cast<std::size_t>(c)];
        for (int d = 0; d < merged.draws_per_chain; ++d) {
            const auto i = static_cast<std::size_t>(d);
            merged.alpha.push_back(res.alpha[i]);
            merged.phi.push_back(res.phi[i]);
            merged.sigma_w.push_back(res.sigma_w[i]);
            merged.shape_r.push_back(res.shape_r[i]);
            merged.chain_id.push_back(c);
            merged.draw_id.push_back(d);
            if (config.store_latents) merged.latent_x.push_back(std::move(res.latent_x[i]));
        }
        loglik_sum += res.sum_obs_loglik;
        for (auto& w : res.warnings) merged.warnings.push_back(std::move(w));
    }
    merged.mean_obs_loglik = loglik_sum / static_cast<double>(total);
    return merged;
}

std::pair<double, double> wbic(const CountSeries& series, const BssmConfig& config) {
    const auto n_obs = static_cast<double>(series.size()) - 1.0;
    if (n_obs < 3.0) throw ValidationError("wbic: series too short");
    BssmConfig tempered = config;
    tempered.tempering_beta = 1.0 / std::log(n_obs);
    tempered.store_latents = false;
    tempered.stream_label = "wbic";
    const PosteriorSamples samples = fit_bssm(series, tempered);
    const double natural = -samples.mean_obs_loglik;
    return {2.0 * natural, natural};
}

}  // namespace burstcast
