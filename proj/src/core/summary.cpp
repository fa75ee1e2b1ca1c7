#include "core/summary.hpp"

#include <algorithm>

#include <json.hpp>

#include "core/errors.hpp"

namespace burstcast {

SummaryStats summarize(const CountSeries& series) {
    series.validate();
    const std::size_t n = series.size();
    if (n < 2) throw ValidationError("summarize: need at least 2 weeks, got " + std::to_string(n));

    SummaryStats s;
    s.n_weeks = n;
    s.total_events = series.total();
    s.zero_weeks = series.zero_weeks();
    s.mean = static_cast<double>(s.total_events) / static_cast<double>(n);

    double ss = 0.0;
    for (auto c : series.counts) {
        const double d = static_cast<double>(c) - s.mean;
        ss += d * d;
    }
    s.variance = ss / static_cast<double>(n - 1);
    if (s.mean > 0.0) s.dispersion_index = s.variance / s.mean;

    const std::int64_t max_count = *std::max_element(series.counts.begin(), series.counts.end());
    const std::int64_t n_bins = max_count / 10 + 1;
    s.histogram.resize(static_cast<std::size_t>(n_bins));
    for (std::int64_t b = 0; b < n_bins; ++b) {
        s.histogram[static_cast<std::size_t>(b)].bin_lower = 10 * b;
        s.histogram[static_cast<std::size_t>(b)].bin_upper = 10 * (b + 1);
    }
    for (auto c : series.counts) ++s.histogram[static_cast<std::size_t>(c / 10)].n_weeks;
    return s;
}

std::string summary_to_json(const SummaryStats& stats) {
    nlohmann::ordered_json j;
    j["n_weeks"] = stats.n_weeks;
    j["total_events"] = stats.total_events;
    j["zero_weeks"] = stats.zero_weeks;
    j["mean"] = stats.mean;
    j["variance"] = stats.variance;
    if (stats.dispersion_index)
        j["dispersion_index"] = *stats.dispersion_index;
    else
        j["dispersion_index"] = nullptr;
    j["histogram"] = nlohmann::ordered_json::array();
    for (const auto& bin : stats.histogram) {
        j["histogram"].push_back({{"bin_lower", bin.bin_lower},
                                  {"bin_upper", bin.bin_upper},
                                  {"n_weeks", bin.n_weeks}});
    }
    return j.dump(2);
}

}  // namespace burstcast
