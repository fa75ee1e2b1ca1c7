// burstcast command-line tool.
//
// Subcommands: stats | bursts | forecast | baselines | evaluate | pipeline.
// Every artifact is deterministic given the config and seed; only the
// pipeline manifest carries timestamps. All output is UTF-8.
//
// The tool is a thin orchestrator over the shared library's C interface
// (burstcast.h); it owns no numerics of its own.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "burstcast.h"

namespace {

using nlohmann::ordered_json;

// ---- RAII over the C handles ----

struct SeriesDeleter {
    void operator()(bc_series* p) const { bc_series_free(p); }
};
struct BurstsDeleter {
    void operator()(bc_bursts* p) const { bc_bursts_free(p); }
};
struct PosteriorDeleter {
    void operator()(bc_posterior* p) const { bc_posterior_free(p); }
};
struct ForecastDeleter {
    void operator()(bc_forecast* p) const { bc_forecast_free(p); }
};
struct StringDeleter {
    void operator()(char* p) const { bc_string_free(p); }
};

using SeriesPtr = std::unique_ptr<bc_series, SeriesDeleter>;
using BurstsPtr = std::unique_ptr<bc_bursts, BurstsDeleter>;
using PosteriorPtr = std::unique_ptr<bc_posterior, PosteriorDeleter>;
using ForecastPtr = std::unique_ptr<bc_forecast, ForecastDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

// Stage-tagged failure: the process exits with 1 for invalid input/config or
// I/O trouble and 2 for numerical failures, and the message names the stage.
[[noreturn]] void fail(bc_status status, const std::string& stage, const std::string& message) {
    std::cerr << "burstcast: [" << stage << "] " << message << "\n";
    std::exit(status == BC_ENUMERIC ? 2 : 1);
}

void check(bc_status status, const std::string& stage) {
    if (status != BC_OK) fail(status, stage, bc_last_error());
}

// ---- effective configuration ----

struct Options {
    std::string input;
    std::string output_dir = ".";
    unsigned long long seed = 1729;
    std::string models = "bssm,ar1,ar3,arma11,ma,wma,es,holtwinters";
    // Kleinberg
    double burst_s = 2.0;
    double burst_gamma = 1.0;
    int max_states = 25;
    // BSSM
    int chains = 4;
    int iterations = 3000;
    int warmup = 1000;
    double credible_level = 0.95;
    bool wbic = false;
    // classical baselines
    bool raw_counts = false;
    long long break_week = 0;
    long long break_lo = 10;
    long long break_hi = 200;
    int window = 3;
    double es_alpha = 0.3;
    double hw_beta = 0.1;
    double hw_gamma = 0.1;
    int season = 52;
};

bc_kleinberg_config kleinberg_config(const Options& o) {
    return bc_kleinberg_config{o.burst_s, o.burst_gamma, o.max_states};
}

bc_bssm_config bssm_config(const Options& o) {
    return bc_bssm_config{o.chains, o.iterations, o.warmup, o.seed, o.credible_level};
}

bc_baseline_opts baseline_opts(const Options& o) {
    bc_baseline_opts b{};
    b.raw_counts = o.raw_counts ? 1 : 0;
    b.break_week = o.break_week;
    b.break_lo = o.break_lo;
    b.break_hi = o.break_hi;
    b.window_k = o.window;
    b.alpha = o.es_alpha;
    b.beta = o.hw_beta;
    b.gamma = o.hw_gamma;
    b.season = o.season;
    return b;
}

std::vector<std::string> split_models(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

const std::map<std::string, bc_model>& model_table() {
    static const std::map<std::string, bc_model> table = {
        {"ar1", BC_MODEL_AR1}, {"ar3", BC_MODEL_AR3},   {"arma11", BC_MODEL_ARMA11},
        {"ma", BC_MODEL_MA},   {"wma", BC_MODEL_WMA},   {"es", BC_MODEL_ES},
        {"holtwinters", BC_MODEL_HOLTWINTERS}};
    return table;
}

void validate_models(const Options& o, const std::string& stage) {
    const auto names = split_models(o.models);
    if (names.empty())
        fail(BC_EINVAL, stage, "models must name at least one of bssm,ar1,ar3,arma11,ma,wma,es,holtwinters");
    for (const auto& name : names) {
        if (name != "bssm" && model_table().count(name) == 0)
            fail(BC_EINVAL, stage, "unknown model '" + name + "' in models");
    }
}

// Flat key = value echo of the effective configuration; the keys are the
// long flag names, so the block can be fed back through --config unchanged.
std::map<std::string, std::string> config_echo(const Options& o) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    std::map<std::string, std::string> kv;
    kv["input"] = o.input;
    kv["output-dir"] = o.output_dir;
    kv["seed"] = std::to_string(o.seed);
    kv["models"] = o.models;
    kv["burst-s"] = num(o.burst_s);
    kv["burst-gamma"] = num(o.burst_gamma);
    kv["max-states"] = std::to_string(o.max_states);
    kv["chains"] = std::to_string(o.chains);
    kv["iterations"] = std::to_string(o.iterations);
    kv["warmup"] = std::to_string(o.warmup);
    kv["credible-level"] = num(o.credible_level);
    kv["wbic"] = o.wbic ? "true" : "false";
    kv["raw-counts"] = o.raw_counts ? "true" : "false";
    kv["break-week"] = std::to_string(o.break_week);
    kv["break-lo"] = std::to_string(o.break_lo);
    kv["break-hi"] = std::to_string(o.break_hi);
    kv["window"] = std::to_string(o.window);
    kv["es-alpha"] = num(o.es_alpha);
    kv["hw-beta"] = num(o.hw_beta);
    kv["hw-gamma"] = num(o.hw_gamma);
    kv["season"] = std::to_string(o.season);
    return kv;
}

// ---- artifact writing (serialized, stage "write") ----

void ensure_output_dir(const Options& o) {
    std::error_code ec;
    std::filesystem::create_directories(o.output_dir, ec);
    if (ec) fail(BC_EIO, "write", "cannot create output directory '" + o.output_dir + "': " + ec.message());
}

void write_artifact(const Options& o, const std::string& name, const std::string& content) {
    const auto path = std::filesystem::path(o.output_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(BC_EIO, "write", "cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) fail(BC_EIO, "write", "short write to '" + path.string() + "'");
}

// ---- stages ----

SeriesPtr load_series(const Options& o) {
    bc_series* raw = nullptr;
    check(bc_series_load(o.input.c_str(), &raw), "load");
    return SeriesPtr(raw);
}

std::vector<std::string> run_stats(const Options& o, const bc_series* series) {
    CString summary;
    {
        char* out = nullptr;
        check(bc_summary_json(series, &out), "stats");
        summary.reset(out);
    }
    CString hist;
    {
        char* out = nullptr;
        check(bc_histogram_csv(series, &out), "stats");
        hist.reset(out);
    }
    write_artifact(o, "summary.json", std::string(summary.get()) + "\n");
    write_artifact(o, "histogram.csv", hist.get());
    return {"summary.json", "histogram.csv"};
}

BurstsPtr detect_bursts(const Options& o, const bc_series* series) {
    const auto cfg = kleinberg_config(o);
    bc_bursts* raw = nullptr;
    check(bc_bursts_detect(series, &cfg, &raw), "bursts");
    return BurstsPtr(raw);
}

std::vector<std::string> run_bursts(const Options& o, const bc_bursts* bursts) {
    CString json;
    {
        char* out = nullptr;
        check(bc_bursts_json(bursts, &out), "bursts");
        json.reset(out);
    }
    CString levels;
    {
        char* out = nullptr;
        check(bc_bursts_levels_csv(bursts, &out), "bursts");
        levels.reset(out);
    }
    write_artifact(o, "bursts.json", std::string(json.get()) + "\n");
    write_artifact(o, "burst_levels.csv", levels.get());
    return {"bursts.json", "burst_levels.csv"};
}

struct BssmStage {
    PosteriorPtr posterior;
    ForecastPtr forecast;
};

BssmStage run_bssm(const Options& o, const bc_series* series) {
    const auto cfg = bssm_config(o);
    BssmStage stage;
    bc_posterior* post = nullptr;
    check(bc_bssm_fit(series, &cfg, &post), "forecast");
    stage.posterior.reset(post);
    bc_forecast* fc = nullptr;
    check(bc_bssm_predict(post, series, o.credible_level, &fc), "forecast");
    stage.forecast.reset(fc);
    return stage;
}

std::vector<std::string> run_forecast(const Options& o, const bc_series* series,
                                      const BssmStage& stage) {
    CString csv;
    {
        char* out = nullptr;
        check(bc_forecast_csv(stage.forecast.get(), &out), "forecast");
        csv.reset(out);
    }
    double deviance = 0.0;
    double natural = 0.0;
    bool have_wbic = false;
    if (o.wbic) {
        const auto cfg = bssm_config(o);
        check(bc_bssm_wbic(series, &cfg, &deviance, &natural), "forecast");
        have_wbic = true;
    }
    CString diag;
    {
        char* out = nullptr;
        check(bc_diagnostics_json(stage.posterior.get(), have_wbic ? &deviance : nullptr,
                                  have_wbic ? &natural : nullptr, &out),
              "forecast");
        diag.reset(out);
    }
    write_artifact(o, "forecast_bssm.csv", csv.get());
    write_artifact(o, "diagnostics.json", std::string(diag.get()) + "\n");
    return {"forecast_bssm.csv", "diagnostics.json"};
}

struct BaselineStage {
    std::vector<std::string> names;         // model names in run order
    std::vector<ForecastPtr> forecasts;     // parallel to names
    ordered_json models_json = ordered_json::object();
};

BaselineStage run_baseline_models(const Options& o, const bc_series* series) {
    BaselineStage stage;
    const auto opts = baseline_opts(o);
    for (const auto& name : split_models(o.models)) {
        if (name == "bssm") continue;
        const auto it = model_table().find(name);
        if (it == model_table().end()) fail(BC_EINVAL, "baselines", "unknown model '" + name + "'");
        bc_forecast* fc = nullptr;
        char* model_json = nullptr;
        check(bc_baseline_forecast(series, it->second, &opts, &fc, &model_json), "baselines");
        stage.names.push_back(name);
        stage.forecasts.emplace_back(fc);
        CString owned(model_json);
        stage.models_json[name] = ordered_json::parse(owned.get());
    }
    return stage;
}

std::vector<std::string> run_baselines(const Options& o, const BaselineStage& stage) {
    std::vector<std::string> files;
    for (std::size_t i = 0; i < stage.names.size(); ++i) {
        char* out = nullptr;
        check(bc_forecast_csv(stage.forecasts[i].get(), &out), "baselines");
        CString csv(out);
        const std::string file = "forecast_" + stage.names[i] + ".csv";
        write_artifact(o, file, csv.get());
        files.push_back(file);
    }
    write_artifact(o, "models.json", stage.models_json.dump(2) + "\n");
    files.push_back("models.json");
    return files;
}

std::vector<std::string> run_evaluate(const Options& o, const bc_series* series,
                                      const bc_bursts* bursts, const BssmStage* bssm,
                                      const BaselineStage& baselines) {
    std::vector<const bc_forecast*> handles;
    if (bssm != nullptr) handles.push_back(bssm->forecast.get());
    for (const auto& fc : baselines.forecasts) handles.push_back(fc.get());
    if (handles.empty()) fail(BC_EINVAL, "evaluate", "models must name at least one model");
    char* json_out = nullptr;
    char* text_out = nullptr;
    check(bc_evaluate(series, bursts, handles.data(), handles.size(), &json_out, &text_out),
          "evaluate");
    CString json(json_out);
    CString text(text_out);
    write_artifact(o, "accuracy.json", std::string(json.get()) + "\n");
    write_artifact(o, "accuracy.txt", text.get());
    return {"accuracy.json", "accuracy.txt"};
}

std::vector<std::string> run_plot(const Options& o, const bc_forecast* forecast,
                                  const bc_bursts* bursts) {
    char* out = nullptr;
    check(bc_plot_csv(forecast, bursts, &out), "plot");
    CString csv(out);
    write_artifact(o, "plot_data.csv", csv.get());
    return {"plot_data.csv"};
}

std::string iso8601_utc(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool has_model(const Options& o, const std::string& name) {
    for (const auto& m : split_models(o.models))
        if (m == name) return true;
    return false;
}

int run_pipeline(const Options& o) {
    const auto started = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();
    validate_models(o, "pipeline");
    if (!has_model(o, "bssm"))
        fail(BC_EINVAL, "pipeline", "models must include 'bssm' (the forecast and plot stages need it)");
    ensure_output_dir(o);

    const auto series = load_series(o);
    ordered_json artifacts;
    artifacts["stats"] = run_stats(o, series.get());
    const auto bursts = detect_bursts(o, series.get());
    artifacts["bursts"] = run_bursts(o, bursts.get());
    const auto bssm = run_bssm(o, series.get());
    artifacts["forecast"] = run_forecast(o, series.get(), bssm);
    const auto baselines = run_baseline_models(o, series.get());
    artifacts["baselines"] = run_baselines(o, baselines);
    artifacts["evaluate"] = run_evaluate(o, series.get(), bursts.get(), &bssm, baselines);
    artifacts["plot"] = run_plot(o, bssm.forecast.get(), bursts.get());

    const auto wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json manifest;
    manifest["tool"] = "burstcast";
    manifest["version"] = bc_version();
    manifest["command"] = "pipeline";
    manifest["seed"] = o.seed;
    ordered_json cfg;
    for (const auto& [k, v] : config_echo(o)) cfg[k] = v;
    manifest["config"] = cfg;
    manifest["artifacts"] = artifacts;
    manifest["started_utc"] = iso8601_utc(started);
    manifest["wall_seconds"] = std::round(wall * 1000.0) / 1000.0;
    write_artifact(o, "manifest.json", manifest.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"burstcast — burst detection and forecasting for overdispersed weekly event counts"};
    app.set_version_flag("--version", std::string("burstcast ") + bc_version());
    app.require_subcommand(1);

    Options opts;

    auto add_common = [&](CLI::App* sub) {
        sub->set_config("--config", "", "flat key = value config file (# comments); flags win");
        sub->add_option("-i,--input", opts.input, "weekly count CSV (week,count)")->required();
        sub->add_option("-o,--output-dir", opts.output_dir, "artifact directory")
            ->capture_default_str();
        sub->add_option("--seed", opts.seed, "master RNG seed")
            ->envname("BURSTCAST_SEED")
            ->capture_default_str();
    };
    auto add_burst = [&](CLI::App* sub) {
        sub->add_option("--burst-s", opts.burst_s, "Kleinberg rate ratio s (> 1)")
            ->capture_default_str();
        sub->add_option("--burst-gamma", opts.burst_gamma, "Kleinberg transition cost gamma (> 0)")
            ->capture_default_str();
        sub->add_option("--max-states", opts.max_states, "Kleinberg state cap (>= 2)")
            ->capture_default_str();
    };
    auto add_bssm = [&](CLI::App* sub) {
        sub->add_option("--chains", opts.chains, "MCMC chains (>= 2)")->capture_default_str();
        sub->add_option("--iterations", opts.iterations, "MCMC iterations per chain")
            ->capture_default_str();
        sub->add_option("--warmup", opts.warmup, "MCMC warmup iterations per chain")
            ->capture_default_str();
        sub->add_option("--credible-level", opts.credible_level, "credible interval level in (0,1)")
            ->capture_default_str();
        sub->add_flag("--wbic", opts.wbic, "also run the tempered WBIC chain");
    };
    auto add_baseline = [&](CLI::App* sub) {
        sub->add_flag("--raw-counts", opts.raw_counts,
                      "fit baselines on raw counts instead of trend/break residuals");
        sub->add_option("--break-week", opts.break_week, "fixed break week (0 = grid search)")
            ->capture_default_str();
        sub->add_option("--break-lo", opts.break_lo, "break search lower bound")
            ->capture_default_str();
        sub->add_option("--break-hi", opts.break_hi, "break search upper bound")
            ->capture_default_str();
        sub->add_option("--window", opts.window, "MA/WMA window size")->capture_default_str();
        sub->add_option("--es-alpha", opts.es_alpha, "exponential smoothing level weight")
            ->capture_default_str();
        sub->add_option("--hw-beta", opts.hw_beta, "Holt-Winters trend weight")
            ->capture_default_str();
        sub->add_option("--hw-gamma", opts.hw_gamma, "Holt-Winters season weight")
            ->capture_default_str();
        sub->add_option("--season", opts.season, "Holt-Winters season length")
            ->capture_default_str();
    };
    auto add_models = [&](CLI::App* sub) {
        sub->add_option("--models", opts.models,
                        "comma list from bssm,ar1,ar3,arma11,ma,wma,es,holtwinters")
            ->capture_default_str();
    };

    CLI::App* stats = app.add_subcommand("stats", "summary statistics, dispersion, histogram");
    add_common(stats);

    CLI::App* bursts = app.add_subcommand("bursts", "Kleinberg burst annotation");
    add_common(bursts);
    add_burst(bursts);

    CLI::App* forecast = app.add_subcommand("forecast", "Bayesian state-space one-week-ahead forecast");
    add_common(forecast);
    add_bssm(forecast);

    CLI::App* baselines = app.add_subcommand("baselines", "classical baseline forecasts");
    add_common(baselines);
    add_baseline(baselines);
    add_models(baselines);

    CLI::App* evaluate = app.add_subcommand("evaluate", "burst-stratified accuracy tables");
    add_common(evaluate);
    add_burst(evaluate);
    add_bssm(evaluate);
    add_baseline(evaluate);
    add_models(evaluate);

    CLI::App* pipeline = app.add_subcommand("pipeline", "full analysis: all stages plus manifest");
    add_common(pipeline);
    add_burst(pipeline);
    add_bssm(pipeline);
    add_baseline(pipeline);
    add_models(pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "burstcast: [cli] " << e.what() << "\n";
        return 1;
    }

    if (app.got_subcommand(stats)) {
        ensure_output_dir(opts);
        const auto series = load_series(opts);
        run_stats(opts, series.get());
        return 0;
    }
    if (app.got_subcommand(bursts)) {
        ensure_output_dir(opts);
        const auto series = load_series(opts);
        const auto annotation = detect_bursts(opts, series.get());
        run_bursts(opts, annotation.get());
        return 0;
    }
    if (app.got_subcommand(forecast)) {
        ensure_output_dir(opts);
        const auto series = load_series(opts);
        const auto stage = run_bssm(opts, series.get());
        run_forecast(opts, series.get(), stage);
        return 0;
    }
    if (app.got_subcommand(baselines)) {
        validate_models(opts, "baselines");
        ensure_output_dir(opts);
        const auto series = load_series(opts);
        const auto stage = run_baseline_models(opts, series.get());
        if (stage.names.empty())
            fail(BC_EINVAL, "baselines", "models must name at least one classical model");
        run_baselines(opts, stage);
        return 0;
    }
    if (app.got_subcommand(evaluate)) {
        validate_models(opts, "evaluate");
        ensure_output_dir(opts);
        const auto series = load_series(opts);
        const auto annotation = detect_bursts(opts, series.get());
        const auto baseline_stage = run_baseline_models(opts, series.get());
        if (has_model(opts, "bssm")) {
            const auto bssm = run_bssm(opts, series.get());
            run_evaluate(opts, series.get(), annotation.get(), &bssm, baseline_stage);
        } else {
            run_evaluate(opts, series.get(), annotation.get(), nullptr, baseline_stage);
        }
        return 0;
    }
    if (app.got_subcommand(pipeline)) {
        return run_pipeline(opts);
    }
    return 0;
}
