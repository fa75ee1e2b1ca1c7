#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace burstcast {

/// Contiguous weekly event counts. Week indices run 1..size() with no gaps;
/// the vector position of week w is w - 1.
struct CountSeries {
    std::vector<std::int64_t> counts;
    std::string label;

    std::size_t size() const { return counts.size(); }
    std::int64_t at_week(int week) const { return counts.at(static_cast<std::size_t>(week - 1)); }
    std::int64_t total() const;
    std::size_t zero_weeks() const;

    /// Throws ValidationError if any count is negative or the series is empty.
    void validate() const;
};

/// Reads a `week,count` CSV (UTF-8, LF or CRLF). Weeks must start at 1 and be
/// contiguous; comment and blank lines are rejected. Parse errors name the
/// offending data row (header excluded from the numbering).
CountSeries load_count_series(const std::string& path);

/// Same parser over an in-memory buffer; `source` is used in error messages.
CountSeries parse_count_series(const std::string& text, const std::string& source);

}  // namespace burstcast
