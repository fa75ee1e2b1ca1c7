/* burstcast — weekly event-count analysis: dispersion diagnostics, Kleinberg
 * burst detection, Bayesian negative-binomial state-space forecasting,
 * classical baselines, and burst-stratified accuracy evaluation.
 *
 * C interface to the shared library. All functions return BC_OK on success;
 * on failure they return an error class and leave a message retrievable via
 * bc_last_error() (thread-local). Strings returned through char** out
 * parameters are heap-allocated; release them with bc_string_free(). Handles
 * are released with their matching *_free() function.
 */
#ifndef BURSTCAST_H
#define BURSTCAST_H

#include <stddef.h>

#if defined(_WIN32)
#define BC_API __declspec(dllexport)
#else
#define BC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
    BC_OK = 0,
    BC_EINVAL = 1,  /* invalid input data or configuration */
    BC_ENUMERIC = 2,/* numerical failure (non-convergence, ...) */
    BC_EIO = 3      /* file I/O failure */
} bc_status;

typedef struct bc_series bc_series;       /* weekly count series */
typedef struct bc_bursts bc_bursts;       /* burst annotation */
typedef struct bc_posterior bc_posterior; /* BSSM posterior samples */
typedef struct bc_forecast bc_forecast;   /* one-step-ahead forecast */

typedef struct bc_kleinberg_config {
    double s;       /* rate ratio between adjacent states, > 1 (default 2) */
    double gamma;   /* transition-cost coefficient, > 0 (default 1) */
    int max_states; /* state-count cap, >= 2 (default 25) */
} bc_kleinberg_config;

typedef struct bc_bssm_config {
    int chains;             /* >= 2 (default 4) */
    int iterations;         /* per chain (default 3000) */
    int warmup;             /* < iterations, >= iterations/4 (default 1000) */
    unsigned long long seed;
    double credible_level;  /* in (0,1) (default 0.95) */
} bc_bssm_config;

typedef enum bc_model {
    BC_MODEL_AR1 = 0,
    BC_MODEL_AR3 = 1,
    BC_MODEL_ARMA11 = 2,
    BC_MODEL_MA = 3,
    BC_MODEL_WMA = 4,
    BC_MODEL_ES = 5,
    BC_MODEL_HOLTWINTERS = 6
} bc_model;

typedef struct bc_baseline_opts {
    int raw_counts;        /* 0: fit on trend/break residuals (default); 1: raw */
    long long break_week;  /* 0: grid-search [break_lo, break_hi] */
    long long break_lo;    /* default 10 */
    long long break_hi;    /* default 200; clamped to the valid range */
    int window_k;          /* MA/WMA window (default 3) */
    double alpha;          /* ES & Holt-Winters level (default 0.3) */
    double beta;           /* Holt-Winters trend (default 0.1) */
    double gamma;          /* Holt-Winters season (default 0.1) */
    int season;            /* Holt-Winters season length (default 52) */
} bc_baseline_opts;

/* Library version string ("major.minor.patch"). */
BC_API const char* bc_version(void);

/* Message from the most recent failing call on this thread ("" if none). */
BC_API const char* bc_last_error(void);

BC_API void bc_string_free(char* s);

/* ---- series ---- */

/* Loads a `week,count` CSV (weeks contiguous from 1). */
BC_API bc_status bc_series_load(const char* path, bc_series** out);
BC_API bc_status bc_series_create(const long long* counts, size_t n_weeks, const char* label,
                                  bc_series** out);
BC_API void bc_series_free(bc_series* s);
BC_API size_t bc_series_size(const bc_series* s);
/* 1-based week index. */
BC_API bc_status bc_series_count(const bc_series* s, size_t week, long long* out);

/* Summary statistics (mean, variance, dispersion index, histogram) as JSON. */
BC_API bc_status bc_summary_json(const bc_series* s, char** out);
/* Histogram rows `bin_lower,bin_upper,n_weeks`. */
BC_API bc_status bc_histogram_csv(const bc_series* s, char** out);
/* ACF/PACF to max_lag (< n/2) with the white-noise band, as JSON. */
BC_API bc_status bc_correlogram_json(const bc_series* s, size_t max_lag, char** out);
/* Ljung-Box portmanteau test on an arbitrary residual vector. */
BC_API bc_status bc_ljung_box(const double* values, size_t n, size_t lags, size_t fitted_df,
                              double* statistic, double* p_value);

/* ---- structural break / trend ---- */

/* RSS grid search for the break week over [lo, hi] within (2, n-1).
 * no_evidence is set when the RSS curve is flat to 1e-6 relative. */
BC_API bc_status bc_detect_break(const bc_series* s, long long lo, long long hi, long long* week,
                                 int* no_evidence);
/* OLS fit of counts on [1, t, 1{t >= break_week}] as JSON. */
BC_API bc_status bc_trend_json(const bc_series* s, long long break_week, char** out);

/* ---- bursts ---- */

/* config may be NULL for defaults (s=2, gamma=1, max_states=25). */
BC_API bc_status bc_bursts_detect(const bc_series* s, const bc_kleinberg_config* config,
                                  bc_bursts** out);
BC_API void bc_bursts_free(bc_bursts* b);
BC_API bc_status bc_bursts_json(const bc_bursts* b, char** out);
/* Rows `week,level`, one per week. */
BC_API bc_status bc_bursts_levels_csv(const bc_bursts* b, char** out);

/* ---- classical baselines ---- */

/* One-step-ahead count-scale forecast for one baseline model; model_json
 * receives the fitted parameters (pass NULL to skip). opts may be NULL. */
BC_API bc_status bc_baseline_forecast(const bc_series* s, bc_model model,
                                      const bc_baseline_opts* opts, bc_forecast** out,
                                      char** model_json);

/* ---- BSSM ---- */

/* config may be NULL for defaults. */
BC_API bc_status bc_bssm_fit(const bc_series* s, const bc_bssm_config* config,
                             bc_posterior** out);
BC_API void bc_posterior_free(bc_posterior* p);
/* One row per retained draw: chain,draw,alpha,phi,sigma_w,shape_r. */
BC_API bc_status bc_posterior_csv(const bc_posterior* p, char** out);
/* Posterior predictive one-week-ahead forecast at the given interval level. */
BC_API bc_status bc_bssm_predict(const bc_posterior* p, const bc_series* s, double level,
                                 bc_forecast** out);
/* WBIC from a second tempered run; either output pointer may be NULL. */
BC_API bc_status bc_bssm_wbic(const bc_series* s, const bc_bssm_config* config, double* deviance,
                              double* natural);
/* Split-Rhat/ESS report as JSON; pass non-NULL wbic values to embed them. */
BC_API bc_status bc_diagnostics_json(const bc_posterior* p, const double* wbic_deviance,
                                     const double* wbic_natural, char** out);

/* ---- forecasts & evaluation ---- */

BC_API void bc_forecast_free(bc_forecast* f);
/* CSV `week,actual,point,lower,upper,model`; undefined weeks keep the
 * numeric fields empty. */
BC_API bc_status bc_forecast_csv(const bc_forecast* f, char** out);
/* Accuracy tables (all weeks / level-2 / level-3 strata) for several models:
 * JSON and an aligned text table (models as columns, metrics as rows).
 * Either output pointer may be NULL. */
BC_API bc_status bc_evaluate(const bc_series* s, const bc_bursts* b,
                             const bc_forecast* const* forecasts, size_t n_models,
                             char** json_out, char** text_out);
/* Plot-ready CSV `week,actual,point,lower,upper,burst_level`, one row per
 * week; undefined forecast weeks keep the numeric fields empty. */
BC_API bc_status bc_plot_csv(const bc_forecast* f, const bc_bursts* b, char** out);

#ifdef __cplusplus
}
#endif

#endif /* BURSTCAST_H */
