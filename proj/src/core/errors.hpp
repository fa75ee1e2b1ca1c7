#pragma once

#include <stdexcept>
#include <string>

namespace burstcast {

/// Invalid input data or configuration (bad CSV, out-of-range parameter, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure (non-convergence, singular design, degenerate posterior, ...).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace burstcast
