#include "burstcast.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#ifndef BURSTCAST_VERSION
#define BURSTCAST_VERSION "0.1.0"
#endif

#include "bssm/diagnostics.hpp"
#include "bssm/model.hpp"
#include "bssm/predict.hpp"
#include "bssm/sampler.hpp"
#include "burst/kleinberg.hpp"
#include "classic/baseline.hpp"
#include "core/correlogram.hpp"
#include "core/count_series.hpp"
#include "core/errors.hpp"
#include "core/forecast_series.hpp"
#include "core/format.hpp"
#include "core/ljung_box.hpp"
#include "core/summary.hpp"
#include "eval/accuracy.hpp"

#include <json.hpp>

using burstcast::BurstAnnotation;
using burstcast::CountSeries;
using burstcast::ForecastSeries;
using burstcast::PosteriorSamples;

struct bc_series {
    CountSeries value;
};
struct bc_bursts {
    BurstAnnotation value;
};
struct bc_posterior {
    PosteriorSamples value;
};
struct bc_forecast {
    ForecastSeries value;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& message) { t_last_error = message; }

// Runs `fn`, translating exceptions into status codes + bc_last_error().
template <typename Fn>
bc_status guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return BC_OK;
    } catch (const burstcast::ValidationError& e) {
        set_error(e.what());
        return BC_EINVAL;
    } catch (const burstcast::NumericError& e) {
        set_error(e.what());
        return BC_ENUMERIC;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return BC_ENUMERIC;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BC_EINVAL;
    } catch (...) {
        set_error("unknown error");
        return BC_EINVAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bc_status require(bool ok, const char* message) {
    if (ok) return BC_OK;
    set_error(message);
    return BC_EINVAL;
}

burstcast::KleinbergConfig to_cpp(const bc_kleinberg_config* c) {
    burstcast::KleinbergConfig cfg;
    if (c != nullptr) {
        cfg.s = c->s;
        cfg.gamma = c->gamma;
        if (c->max_states < 0) throw burstcast::ValidationError("kleinberg: max_states must be >= 2");
        cfg.max_states = static_cast<std::size_t>(c->max_states);
    }
    return cfg;
}

burstcast::BssmConfig to_cpp(const bc_bssm_config* c) {
    burstcast::BssmConfig cfg;
    if (c != nullptr) {
        cfg.chains = c->chains;
        cfg.iterations = c->iterations;
        cfg.warmup = c->warmup;
        cfg.seed = c->seed;
        cfg.credible_level = c->credible_level;
    }
    return cfg;
}

burstcast::BaselineConfig to_cpp(bc_model model, const bc_baseline_opts* o) {
    burstcast::BaselineConfig cfg;
    switch (model) {
        case BC_MODEL_AR1: cfg.model = burstcast::BaselineModel::AR1; break;
        case BC_MODEL_AR3: cfg.model = burstcast::BaselineModel::AR3; break;
        case BC_MODEL_ARMA11: cfg.model = burstcast::BaselineModel::ARMA11; break;
        case BC_MODEL_MA: cfg.model = burstcast::BaselineModel::MA; break;
        case BC_MODEL_WMA: cfg.model = burstcast::BaselineModel::WMA; break;
        case BC_MODEL_ES: cfg.model = burstcast::BaselineModel::ES; break;
        case BC_MODEL_HOLTWINTERS: cfg.model = burstcast::BaselineModel::HoltWinters; break;
        default: throw burstcast::ValidationError("unknown baseline model");
    }
    if (o != nullptr) {
        cfg.raw_counts = o->raw_counts != 0;
        cfg.break_week = o->break_week;
        cfg.break_lo = o->break_lo;
        cfg.break_hi = o->break_hi;
        cfg.smoother.k = o->window_k;
        cfg.smoother.alpha = o->alpha;
        cfg.smoother.beta = o->beta;
        cfg.smoother.gamma = o->gamma;
        cfg.smoother.season = o->season;
    }
    return cfg;
}

}  // namespace

extern "C" {

const char* bc_version(void) { return BURSTCAST_VERSION; }

const char* bc_last_error(void) { return t_last_error.c_str(); }

void bc_string_free(char* s) { delete[] s; }

bc_status bc_series_load(const char* path, bc_series** out) {
    if (bc_status st = require(path != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] { *out = new bc_series{burstcast::load_count_series(path)}; });
}

bc_status bc_series_create(const long long* counts, size_t n_weeks, const char* label,
                           bc_series** out) {
    if (bc_status st = require(counts != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        CountSeries s;
        s.counts.assign(counts, counts + n_weeks);
        s.label = label != nullptr ? label : "";
        s.validate();
        *out = new bc_series{std::move(s)};
    });
}

void bc_series_free(bc_series* s) { delete s; }

size_t bc_series_size(const bc_series* s) { return s == nullptr ? 0 : s->value.size(); }

bc_status bc_series_count(const bc_series* s, size_t week, long long* out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        if (week < 1 || week > s->value.size())
            throw burstcast::ValidationError("week index out of range");
        *out = s->value.counts[week - 1];
    });
}

bc_status bc_summary_json(const bc_series* s, char** out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded(
        [&] { *out = copy_string(burstcast::summary_to_json(burstcast::summarize(s->value))); });
}

bc_status bc_histogram_csv(const bc_series* s, char** out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        const auto stats = burstcast::summarize(s->value);
        std::string csv = "bin_lower,bin_upper,n_weeks\n";
        for (const auto& bin : stats.histogram) {
            csv += std::to_string(bin.bin_lower);
            csv += ',';
            csv += std::to_string(bin.bin_upper);
            csv += ',';
            csv += std::to_string(bin.n_weeks);
            csv += '\n';
        }
        *out = copy_string(csv);
    });
}

bc_status bc_correlogram_json(const bc_series* s, size_t max_lag, char** out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        std::vector<double> values(s->value.counts.begin(), s->value.counts.end());
        *out = copy_string(
            burstcast::correlogram_to_json(burstcast::correlogram(values, max_lag)));
    });
}

bc_status bc_ljung_box(const double* values, size_t n, size_t lags, size_t fitted_df,
                       double* statistic, double* p_value) {
    if (bc_status st =
            require(values != nullptr && statistic != nullptr && p_value != nullptr,
                    "null argument");
        st != BC_OK)
        return st;
    return guarded([&] {
        const std::vector<double> v(values, values + n);
        const auto r = burstcast::ljung_box(v, lags, fitted_df);
        *statistic = r.statistic;
        *p_value = r.p_value;
    });
}

bc_status bc_detect_break(const bc_series* s, long long lo, long long hi, long long* week,
                          int* no_evidence) {
    if (bc_status st = require(s != nullptr && week != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        const auto search = burstcast::detect_break(s->value, lo, hi);
        *week = search.best_week;
        if (no_evidence != nullptr) *no_evidence = search.no_evidence ? 1 : 0;
    });
}

bc_status bc_trend_json(const bc_series* s, long long break_week, char** out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        const auto fit = burstcast::fit_trend_break(s->value, break_week);
        nlohmann::ordered_json j;
        j["break_week"] = fit.break_point;
        j["beta0"] = fit.beta0;
        j["beta1"] = fit.beta1;
        j["beta2"] = fit.beta2;
        j["rss"] = fit.rss;
        j["r_squared"] = fit.r_squared;
        if (std::isfinite(fit.f_statistic))
            j["f_statistic"] = fit.f_statistic;
        else
            j["f_statistic"] = nullptr;
        j["df"] = {fit.df.first, fit.df.second};
        *out = copy_string(j.dump(2));
    });
}

bc_status bc_bursts_detect(const bc_series* s, const bc_kleinberg_config* config,
                           bc_bursts** out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded(
        [&] { *out = new bc_bursts{burstcast::annotate_bursts(s->value, to_cpp(config))}; });
}

void bc_bursts_free(bc_bursts* b) { delete b; }

bc_status bc_bursts_json(const bc_bursts* b, char** out) {
    if (bc_status st = require(b != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] { *out = copy_string(burstcast::bursts_to_json(b->value)); });
}

bc_status bc_bursts_levels_csv(const bc_bursts* b, char** out) {
    if (bc_status st = require(b != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        std::string csv = "week,level\n";
        for (std::size_t t = 0; t < b->value.week_levels.size(); ++t) {
            csv += std::to_string(t + 1);
            csv += ',';
            csv += std::to_string(b->value.week_levels[t]);
            csv += '\n';
        }
        *out = copy_string(csv);
    });
}

bc_status bc_baseline_forecast(const bc_series* s, bc_model model, const bc_baseline_opts* opts,
                               bc_forecast** out, char** model_json) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        auto result = burstcast::classical_forecast(s->value, to_cpp(model, opts));
        if (model_json != nullptr) *model_json = copy_string(result.model_json);
        *out = new bc_forecast{std::move(result.forecast)};
    });
}

bc_status bc_bssm_fit(const bc_series* s, const bc_bssm_config* config, bc_posterior** out) {
    if (bc_status st = require(s != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] { *out = new bc_posterior{burstcast::fit_bssm(s->value, to_cpp(config))}; });
}

void bc_posterior_free(bc_posterior* p) { delete p; }

bc_status bc_posterior_csv(const bc_posterior* p, char** out) {
    if (bc_status st = require(p != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] { *out = copy_string(p->value.to_csv()); });
}

bc_status bc_bssm_predict(const bc_posterior* p, const bc_series* s, double level,
                          bc_forecast** out) {
    if (bc_status st = require(p != nullptr && s != nullptr && out != nullptr, "null argument");
        st != BC_OK)
        return st;
    return guarded([&] {
        *out = new bc_forecast{burstcast::predict_one_step(p->value, s->value, level)};
    });
}

bc_status bc_bssm_wbic(const bc_series* s, const bc_bssm_config* config, double* deviance,
                       double* natural) {
    if (bc_status st = require(s != nullptr, "null argument"); st != BC_OK) return st;
    return guarded([&] {
        const auto [dev, nat] = burstcast::wbic(s->value, to_cpp(config));
        if (deviance != nullptr) *deviance = dev;
        if (natural != nullptr) *natural = nat;
    });
}

bc_status bc_diagnostics_json(const bc_posterior* p, const double* wbic_deviance,
                              const double* wbic_natural, char** out) {
    if (bc_status st = require(p != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] {
        const auto report = burstcast::diagnostics(p->value);
        auto j = nlohmann::ordered_json::parse(burstcast::diagnostics_to_json(report));
        if (wbic_deviance != nullptr || wbic_natural != nullptr) {
            nlohmann::ordered_json jw;
            if (wbic_deviance != nullptr) jw["deviance"] = *wbic_deviance;
            if (wbic_natural != nullptr) jw["natural"] = *wbic_natural;
            j["wbic"] = jw;
        }
        *out = copy_string(j.dump(2));
    });
}

void bc_forecast_free(bc_forecast* f) { delete f; }

bc_status bc_forecast_csv(const bc_forecast* f, char** out) {
    if (bc_status st = require(f != nullptr && out != nullptr, "null argument"); st != BC_OK)
        return st;
    return guarded([&] { *out = copy_string(burstcast::forecast_to_csv(f->value)); });
}

bc_status bc_evaluate(const bc_series* s, const bc_bursts* b, const bc_forecast* const* forecasts,
                      size_t n_models, char** json_out, char** text_out) {
    if (bc_status st = require(s != nullptr && b != nullptr && forecasts != nullptr,
                               "null argument");
        st != BC_OK)
        return st;
    return guarded([&] {
        std::vector<const ForecastSeries*> models;
        models.reserve(n_models);
        for (size_t i = 0; i < n_models; ++i) {
            if (forecasts[i] == nullptr) throw burstcast::ValidationError("null forecast handle");
            models.push_back(&forecasts[i]->value);
        }
        const auto tables = burstcast::evaluate_models(s->value, b->value, models);
        if (json_out != nullptr) *json_out = copy_string(tables.json);
        if (text_out != nullptr) *text_out = copy_string(tables.text);
    });
}

bc_status bc_plot_csv(const bc_forecast* f, const bc_bursts* b, char** out) {
    if (bc_status st = require(f != nullptr && b != nullptr && out != nullptr, "null argument");
        st != BC_OK)
        return st;
    return guarded([&] {
        const auto& fc = f->value;
        const auto& levels = b->value.week_levels;
        if (fc.points.size() != levels.size())
            throw burstcast::ValidationError("plot data: forecast/annotation week mismatch");
        std::string csv = "week,actual,point,lower,upper,burst_level\n";
        for (std::size_t t = 0; t < fc.points.size(); ++t) {
            const auto& p = fc.points[t];
            csv += std::to_string(p.week);
            csv += ',';
            csv += burstcast::format_number(p.actual);
            csv += ',';
            if (p.defined) {
                csv += burstcast::format_number(p.point);
                csv += ',';
                csv += burstcast::format_number(p.lower);
                csv += ',';
                csv += burstcast::format_number(p.upper);
            } else {
                csv += ",,";
            }
            csv += ',';
            csv += std::to_string(levels[t]);
            csv += '\n';
        }
        *out = copy_string(csv);
    });
}

}  // extern "C"
