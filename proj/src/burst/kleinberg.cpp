#include "burst/kleinberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "core/errors.hpp"

namespace burstcast {

namespace {

void validate_config(const KleinbergConfig& config) {
    if (!(config.s > 1.0)) throw ValidationError("kleinberg: s must be > 1");
    if (!(config.gamma > 0.0)) throw ValidationError("kleinberg: gamma must be > 0");
    if (config.max_states < 2) throw ValidationError("kleinberg: max_states must be >= 2");
}

}  // namespace

GapSequence expand_to_offsets(const CountSeries& series) {
    series.validate();
    if (series.total() < 2) throw ValidationError("insufficient events for gap model");

    GapSequence g;
    g.offsets.reserve(static_cast<std::size_t>(series.total()));
    for (std::size_t w = 0; w < series.size(); ++w) {
        const std::int64_t c = series.counts[w];
        for (std::int64_t j = 1; j <= c; ++j) {
            g.offsets.push_back(static_cast<double>(w) +
                                (static_cast<double>(j) - 0.5) / static_cast<double>(c));
        }
    }
    g.gaps.reserve(g.offsets.size() - 1);
    g.week_of_gap.reserve(g.offsets.size() - 1);
    for (std::size_t i = 0; i + 1 < g.offsets.size(); ++i) {
        g.gaps.push_back(g.offsets[i + 1] - g.offsets[i]);
        g.week_of_gap.push_back(static_cast<std::int64_t>(std::floor(g.offsets[i + 1])) + 1);
    }
    return g;
}

std::size_t kleinberg_state_count(const GapSequence& gaps, const KleinbergConfig& config) {
    validate_config(config);
    const double total = [&] {
        double t = 0.0;
        for (double x : gaps.gaps) t += x;
        return t;
    }();
    const double min_gap = *std::min_element(gaps.gaps.begin(), gaps.gaps.end());
    const double log_s = std::log(config.s);
    const double k_raw = std::ceil(1.0 + std::log(total) / log_s + std::log(1.0 / min_gap) / log_s);
    std::size_t k = config.max_states;
    if (k_raw < static_cast<double>(k)) k = static_cast<std::size_t>(std::max(1.0, k_raw));
    return std::max<std::size_t>(k, 1);
}

std::vector<int> kleinberg_states(const GapSequence& gaps, const KleinbergConfig& config) {
    validate_config(config);
    const std::size_t m = gaps.gaps.size();
    if (m == 0) throw ValidationError("kleinberg: empty gap sequence");
    for (double x : gaps.gaps)
        if (!(x > 0.0)) throw ValidationError("kleinberg: gaps must be positive");

    const std::size_t k = kleinberg_state_count(gaps, config);
    double total = 0.0;
    for (double x : gaps.gaps) total += x;
    const double lambda0 = static_cast<double>(m) / total;
    std::vector<double> lambda(k), log_lambda(k);
    for (std::size_t i = 0; i < k; ++i) {
        lambda[i] = lambda0 * std::pow(config.s, static_cast<double>(i));
        log_lambda[i] = std::log(lambda[i]);
    }
    const double log_n = std::log(static_cast<double>(m));

    auto emission = [&](std::size_t state, double x) {
        return -log_lambda[state] + lambda[state] * x;
    };
    auto transition = [&](std::size_t from, std::size_t to) {
        return to > from ? config.gamma * static_cast<double>(to - from) * log_n : 0.0;
    };

    // suffix[i][p] = min cost of emitting gaps i..m-1 when the state before
    // gap i is p. Computing costs back-to-front means the cost of any path is
    // the right-associated sum of its step costs, so the minimum is exact over
    // the same floating-point expression an enumerating checker would use.
    std::vector<std::vector<double>> suffix(m + 1, std::vector<double>(k, 0.0));
    for (std::size_t ii = m; ii-- > 0;) {
        for (std::size_t p = 0; p < k; ++p) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t q = 0; q < k; ++q) {
                const double c = transition(p, q) + emission(q, gaps.gaps[ii]) + suffix[ii + 1][q];
                if (c < best) best = c;
            }
            suffix[ii][p] = best;
        }
    }

    // Forward reconstruction; picking the smallest state that achieves the
    // suffix optimum at each step yields the lexicographically smallest
    // minimum-cost path, i.e. ties break toward the lower state.
    std::vector<int> states(m);
    std::size_t prev = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t chosen = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t q = 0; q < k; ++q) {
            const double c = transition(prev, q) + emission(q, gaps.gaps[i]) + suffix[i + 1][q];
            if (c < best) {
                best = c;
                chosen = q;
            }
        }
        states[i] = static_cast<int>(chosen);
        prev = chosen;
    }
    return states;
}

BurstAnnotation annotate_bursts(const CountSeries& series, const KleinbergConfig& config) {
    const GapSequence gaps = expand_to_offsets(series);
    BurstAnnotation a;
    a.state_sequence = kleinberg_states(gaps, config);
    a.n_states = kleinberg_state_count(gaps, config);
    double total = 0.0;
    for (double x : gaps.gaps) total += x;
    a.lambda0 = static_cast<double>(gaps.gaps.size()) / total;

    a.week_levels.assign(series.size(), 1);
    for (std::size_t i = 0; i < gaps.gaps.size(); ++i) {
        const std::size_t w = static_cast<std::size_t>(gaps.week_of_gap[i] - 1);
        if (w < a.week_levels.size())
            a.week_levels[w] = std::max(a.week_levels[w], 1 + a.state_sequence[i]);
    }

    const int max_level = *std::max_element(a.week_levels.begin(), a.week_levels.end());
    for (int level = 2; level <= max_level; ++level) {
        std::size_t t = 0;
        while (t < a.week_levels.size()) {
            if (a.week_levels[t] >= level) {
                std::size_t start = t;
                while (t < a.week_levels.size() && a.week_levels[t] >= level) ++t;
                a.intervals.push_back({level, static_cast<std::int64_t>(start + 1),
                                       static_cast<std::int64_t>(t)});
            } else {
                ++t;
            }
        }
    }
    return a;
}

std::string bursts_to_json(const BurstAnnotation& annotation) {
    nlohmann::ordered_json j;
    j["weeks"] = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < annotation.week_levels.size(); ++t)
        j["weeks"].push_back({{"week", t + 1}, {"level", annotation.week_levels[t]}});
    j["intervals"] = nlohmann::ordered_json::array();
    for (const auto& iv : annotation.intervals)
        j["intervals"].push_back(
            {{"level", iv.level}, {"start", iv.start_week}, {"end", iv.end_week}});
    return j.dump(2);
}

}  // namespace burstcast
