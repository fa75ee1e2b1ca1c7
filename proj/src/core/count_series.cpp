#include "core/count_series.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"

namespace burstcast {

std::int64_t CountSeries::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::size_t CountSeries::zero_weeks() const {
    std::size_t z = 0;
    for (auto c : counts)
        if (c == 0) ++z;
    return z;
}

void CountSeries::validate() const {
    if (counts.empty()) throw ValidationError("count series is empty");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] < 0)
            throw ValidationError("negative count at week " + std::to_string(i + 1));
    }
}

namespace {

bool parse_int64(std::string_view field, std::int64_t& out) {
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

CountSeries parse_count_series(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string raw;

    if (!std::getline(in, raw))
        throw ValidationError(source + ": file is empty");
    if (strip_cr(raw) != "week,count")
        throw ValidationError(source + ": expected header `week,count`, got `" + raw + "`");

    CountSeries series;
    series.label = source;
    int row = 0;
    while (std::getline(in, raw)) {
        ++row;
        const std::string_view line = strip_cr(raw);
        if (line.empty())
            throw ValidationError(source + ": blank line at row " + std::to_string(row));
        if (line.front() == '#')
            throw ValidationError(source + ": comment line at row " + std::to_string(row));

        const auto comma = line.find(',');
        if (comma == std::string_view::npos)
            throw ValidationError(source + ": missing comma at row " + std::to_string(row));

        std::int64_t week = 0;
        std::int64_t count = 0;
        if (!parse_int64(line.substr(0, comma), week) ||
            !parse_int64(line.substr(comma + 1), count))
            throw ValidationError(source + ": non-integer field at row " + std::to_string(row));

        const std::int64_t expected = static_cast<std::int64_t>(series.counts.size()) + 1;
        if (week >= 1 && week < expected)
            throw ValidationError(source + ": duplicate week index at row " + std::to_string(row));
        if (week != expected)
            throw ValidationError(source + ": non-contiguous week index at row " +
                                  std::to_string(row) + " (expected week " +
                                  std::to_string(expected) + ", got " + std::to_string(week) + ")");
        if (count < 0)
            throw ValidationError(source + ": negative count at row " + std::to_string(row));
        series.counts.push_back(count);
    }
    if (series.counts.empty()) throw ValidationError(source + ": no data rows");
    return series;
}

CountSeries load_count_series(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_count_series(buf.str(), path);
}

}  // namespace burstcast
