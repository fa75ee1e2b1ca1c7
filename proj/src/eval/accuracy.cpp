#include "eval/accuracy.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "core/errors.hpp"

namespace burstcast {

AccuracyReport accuracy_report(const std::vector<double>& actual,
                               const std::vector<double>& predicted,
                               const std::vector<bool>& mask) {
    if (actual.size() != predicted.size() || actual.size() != mask.size())
        throw ValidationError("accuracy_report: input length mismatch");

    AccuracyReport r;
    double abs_sum = 0.0, sq_sum = 0.0, mape_sum = 0.0, smape_sum = 0.0;
    std::size_t mape_n = 0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        if (!mask[t]) continue;
        const double e = actual[t] - predicted[t];
        abs_sum += std::fabs(e);
        sq_sum += e * e;
        const double denom = actual[t] + predicted[t];
        smape_sum += denom == 0.0 ? 0.0 : 2.0 * std::fabs(e) / denom;
        if (actual[t] > 0.0) {
            mape_sum += std::fabs(e) / actual[t];
            ++mape_n;
        } else {
            ++r.n_excluded_zero_actual;
        }
        ++r.n_scored;
    }
    if (r.n_scored == 0) throw ValidationError("accuracy_report: empty mask after exclusions");

    const auto m = static_cast<double>(r.n_scored);
    r.mae = abs_sum / m;
    r.mse = sq_sum / m;
    r.rmse = std::sqrt(r.mse);
    r.smape_accuracy = 100.0 - 100.0 * smape_sum / m;
    if (mape_n > 0) {
        r.mape_accuracy = 100.0 - 100.0 * mape_sum / static_cast<double>(mape_n);
    } else {
        r.mape_defined = false;
    }
    return r;
}

namespace {

std::vector<bool> stratum_mask(const ForecastSeries& forecast, const BurstAnnotation& bursts,
                               int level) {
    std::vector<bool> mask(forecast.points.size(), false);
    for (std::size_t t = 0; t < forecast.points.size(); ++t) {
        if (!forecast.points[t].defined) continue;
        if (level == 0 || bursts.week_levels[t] == level) mask[t] = true;
    }
    return mask;
}

}  // namespace

StratifiedAccuracy stratified_accuracy(const CountSeries& series, const ForecastSeries& forecast,
                                       const BurstAnnotation& bursts) {
    if (forecast.points.size() != series.size() || bursts.week_levels.size() != series.size())
        throw ValidationError("stratified_accuracy: forecast/annotation week mismatch");

    std::vector<double> actual(series.size()), predicted(series.size(), 0.0);
    for (std::size_t t = 0; t < series.size(); ++t) {
        actual[t] = static_cast<double>(series.counts[t]);
        predicted[t] = forecast.points[t].point;
    }

    StratifiedAccuracy out;
    const struct {
        const char* name;
        int level;
    } strata[] = {{"all", 0}, {"level2", 2}, {"level3", 3}};
    for (const auto& s : strata) {
        const auto mask = stratum_mask(forecast, bursts, s.level);
        std::size_t weeks = 0;
        for (bool b : mask) weeks += b ? 1 : 0;
        if (weeks == 0) {
            out.notes.push_back(std::string("stratum ") + s.name + " omitted: no scoreable weeks");
            continue;
        }
        if (s.level >= 2) {
            for (std::size_t t = 0; t < mask.size(); ++t)
                if (mask[t] && actual[t] == 0.0)
                    throw ValidationError(
                        "stratified_accuracy: burst stratum contains a zero-actual week");
        }
        AccuracyReport r = accuracy_report(actual, predicted, mask);
        r.stratum = s.name;
        r.model = forecast.model;
        out.reports.push_back(std::move(r));
    }
    return out;
}

double interval_coverage(const CountSeries& series, const ForecastSeries& forecast) {
    if (forecast.points.size() != series.size())
        throw ValidationError("interval_coverage: forecast/series week mismatch");
    std::size_t defined = 0, inside = 0;
    for (std::size_t t = 0; t < forecast.points.size(); ++t) {
        const ForecastPoint& p = forecast.points[t];
        if (!p.defined) continue;
        ++defined;
        const auto a = static_cast<double>(series.counts[t]);
        if (p.lower <= a && a <= p.upper) ++inside;
    }
    if (defined == 0) throw ValidationError("interval_coverage: no defined forecast weeks");
    return static_cast<double>(inside) / static_cast<double>(defined);
}

EvaluationTables evaluate_models(const CountSeries& series, const BurstAnnotation& bursts,
                                 const std::vector<const ForecastSeries*>& models) {
    if (models.empty()) throw ValidationError("evaluate_models: no models given");

    struct ModelEval {
        const ForecastSeries* forecast;
        StratifiedAccuracy acc;
        double coverage;
    };
    std::vector<ModelEval> evals;
    evals.reserve(models.size());
    for (const ForecastSeries* f : models) {
        if (f == nullptr) throw ValidationError("evaluate_models: null forecast");
        evals.push_back({f, stratified_accuracy(series, *f, bursts), interval_coverage(series, *f)});
    }

    const char* stratum_names[] = {"all", "level2", "level3"};
    const char* stratum_titles[] = {"All weeks", "Level 2 burst weeks", "Level 3 burst weeks"};

    nlohmann::ordered_json j;
    j["strata"] = nlohmann::ordered_json::array();
    std::string text;
    char buf[160];

    for (int si = 0; si < 3; ++si) {
        const std::string sname = stratum_names[si];

        nlohmann::ordered_json js;
        js["stratum"] = sname;
        js["models"] = nlohmann::ordered_json::object();
        bool any = false;

        std::string header = "metric            ";
        std::vector<const AccuracyReport*> reports;
        for (const auto& ev : evals) {
            const AccuracyReport* rep = nullptr;
            for (const auto& r : ev.acc.reports)
                if (r.stratum == sname) rep = &r;
            reports.push_back(rep);
            if (rep != nullptr) any = true;
        }
        if (!any) {
            js["omitted"] = true;
            js["note"] = "no scoreable weeks";
            j["strata"].push_back(js);
            text += std::string("=== ") + stratum_titles[si] + " ===\n(no scoreable weeks)\n\n";
            continue;
        }

        for (const auto& ev : evals) {
            std::snprintf(buf, sizeof(buf), "%12s", ev.forecast->model.c_str());
            header += buf;
        }
        text += std::string("=== ") + stratum_titles[si] + " ===\n" + header + "\n";

        auto row = [&](const char* label, auto value_of) {
            std::snprintf(buf, sizeof(buf), "%-18s", label);
            text += buf;
            for (std::size_t mi = 0; mi < evals.size(); ++mi) {
                if (reports[mi] == nullptr) {
                    std::snprintf(buf, sizeof(buf), "%12s", "-");
                } else {
                    value_of(buf, sizeof(buf), *reports[mi], evals[mi]);
                }
                text += buf;
            }
            text += '\n';
        };
        row("MAE", [](char* b, std::size_t sz, const AccuracyReport& r, const ModelEval&) {
            std::snprintf(b, sz, "%12.2f", r.mae);
        });
        row("MSE", [](char* b, std::size_t sz, const AccuracyReport& r, const ModelEval&) {
            std::snprintf(b, sz, "%12.2f", r.mse);
        });
        row("RMSE", [](char* b, std::size_t sz, const AccuracyReport& r, const ModelEval&) {
            std::snprintf(b, sz, "%12.2f", r.rmse);
        });
        row("MAPE acc (%)", [](char* b, std::size_t sz, const AccuracyReport& r, const ModelEval&) {
            if (r.mape_defined)
                std::snprintf(b, sz, "%12.2f", r.mape_accuracy);
            else
                std::snprintf(b, sz, "%12s", "undef");
        });
        row("SMAPE acc (%)", [](char* b, std::size_t sz, const AccuracyReport& r, const ModelEval&) {
            std::snprintf(b, sz, "%12.2f", r.smape_accuracy);
        });
        row("coverage", [](char* b, std::size_t sz, const AccuracyReport&, const ModelEval& ev) {
            std::snprintf(b, sz, "%12.3f", ev.coverage);
        });
        row("n scored", [](char* b, std::size_t sz, const AccuracyReport& r, const ModelEval&) {
            std::snprintf(b, sz, "%12zu", r.n_scored);
        });
        text += '\n';

        for (std::size_t mi = 0; mi < evals.size(); ++mi) {
            if (reports[mi] == nullptr) continue;
            const AccuracyReport& r = *reports[mi];
            nlohmann::ordered_json jm;
            jm["mae"] = r.mae;
            jm["mse"] = r.mse;
            jm["rmse"] = r.rmse;
            if (r.mape_defined)
                jm["mape_accuracy"] = r.mape_accuracy;
            else
                jm["mape_accuracy"] = nullptr;
            jm["smape_accuracy"] = r.smape_accuracy;
            jm["n_scored"] = r.n_scored;
            jm["n_excluded_zero_actual"] = r.n_excluded_zero_actual;
            jm["interval_coverage"] = evals[mi].coverage;
            js["models"][evals[mi].forecast->model] = jm;
        }
        j["strata"].push_back(js);
    }

    nlohmann::ordered_json notes = nlohmann::ordered_json::array();
    for (const auto& ev : evals)
        for (const auto& note : ev.acc.notes) notes.push_back(ev.forecast->model + ": " + note);
    j["notes"] = notes;

    return {j.dump(2), text};
}

}  // namespace burstcast
