#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "core/count_series.hpp"

namespace burstcast {

// Configuration of the Kleinberg infinite-state burst automaton.
struct KleinbergConfig {
    double s = 2.0;              // rate ratio between adjacent states, > 1
    double gamma = 1.0;          // transition-cost coefficient, > 0
    std::size_t max_states = 25; // cap on the number of automaton states, >= 2
};

// Event offsets derived from weekly counts and the gaps between them.
// A week w with count c contributes events at w - 1 + (j - 0.5)/c, j = 1..c;
// zero-count weeks contribute nothing (they widen the spanning gap).
struct GapSequence {
    std::vector<double> offsets;            // strictly increasing event times (weeks)
    std::vector<double> gaps;               // gaps[i] = offsets[i+1] - offsets[i], all > 0
    std::vector<std::int64_t> week_of_gap;  // 1-based week each gap terminates in
};

// A maximal run of consecutive weeks whose reported level is >= `level`.
struct BurstInterval {
    int level = 0;             // reported level, >= 2
    std::int64_t start_week = 0;
    std::int64_t end_week = 0; // inclusive
};

// Per-week burst levels plus the hierarchical interval decomposition.
// Reported levels use the 1-based convention: level 1 = no burst, level
// 1 + k for automaton state k. Intervals for level L are maximal runs of
// weeks at level >= L, so every level-L interval nests inside one at L-1.
struct BurstAnnotation {
    std::vector<int> week_levels;        // week_levels[t-1] = level of week t, >= 1
    std::vector<BurstInterval> intervals; // sorted by (level, start_week)
    std::vector<int> state_sequence;     // optimal automaton state per gap (0-based)
    std::size_t n_states = 0;            // state count used by the DP
    double lambda0 = 0.0;                // base event rate n_gaps / T
};

// Expands weekly counts to event offsets. Requires total events >= 2.
[[nodiscard]] GapSequence expand_to_offsets(const CountSeries& series);

// Minimum-cost state path over the gap sequence.
//
// With n = #gaps, T = sum(gaps), base rate lambda_0 = n/T and state-i rate
// lambda_i = lambda_0 * s^i, the automaton has
//   k = min(max_states, ceil(1 + log_s T + log_s(1 / min gap)))
// states. Emitting gap x from state i costs -ln(lambda_i) + lambda_i * x;
// moving i -> j costs gamma * (j - i) * ln(n) when j > i and 0 otherwise.
// The path starts in state 0; ties break toward the lower state (the
// lexicographically smallest minimum-cost path is returned).
[[nodiscard]] std::vector<int> kleinberg_states(const GapSequence& gaps,
                                                const KleinbergConfig& config);

// Full pipeline: offsets -> optimal states -> per-week levels -> intervals.
[[nodiscard]] BurstAnnotation annotate_bursts(const CountSeries& series,
                                              const KleinbergConfig& config = {});

// JSON rendering:
// {"weeks":[{"week":1,"level":1},...],
//  "intervals":[{"level":2,"start":105,"end":109},...]}
[[nodiscard]] std::string bursts_to_json(const BurstAnnotation& annotation);

// Number of automaton states the DP will use for a given gap sequence.
[[nodiscard]] std::size_t kleinberg_state_count(const GapSequence& gaps,
                                                const KleinbergConfig& config);

}  // namespace burstcast
