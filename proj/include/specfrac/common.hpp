#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace specfrac {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Round to `digits` significant decimal digits. Reports use 12 so that
// repeated runs serialize byte-identically.
inline double round_sig(double x, int digits = 12) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    double mag = std::pow(10.0, digits - 1 - std::floor(std::log10(std::fabs(x))));
    return std::round(x * mag) / mag;
}

inline bool nearly_equal(double a, double b, double tol) {
    if (a == b) return true;
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace specfrac
