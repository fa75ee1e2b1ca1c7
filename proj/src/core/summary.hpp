#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/count_series.hpp"

namespace burstcast {

struct HistogramBin {
    std::int64_t bin_lower = 0;
    std::int64_t bin_upper = 0;  // exclusive
    std::size_t n_weeks = 0;
};

struct SummaryStats {
    std::size_t n_weeks = 0;
    std::int64_t total_events = 0;
    std::size_t zero_weeks = 0;
    double mean = 0.0;
    double variance = 0.0;  // sample variance, divisor n - 1
    std::optional<double> dispersion_index;  // variance / mean; empty when mean == 0
    std::vector<HistogramBin> histogram;     // fixed bin width 10 from 0
};

/// Summary statistics and the index of dispersion. Requires n >= 2.
SummaryStats summarize(const CountSeries& series);

/// JSON object with field names matching SummaryStats; an undefined
/// dispersion index serializes as null.
std::string summary_to_json(const SummaryStats& stats);

}  // namespace burstcast
