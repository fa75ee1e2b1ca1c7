#pragma once

#include <cstdio>
#include <string>

namespace burstcast {

// Compact deterministic rendering of a double for CSV output ("%.10g").
[[nodiscard]] inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace burstcast
