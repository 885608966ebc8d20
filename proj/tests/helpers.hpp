#pragma once

// Shared helpers for the test suites.

#include <cmath>
#include <span>
#include <vector>

namespace testutil {

inline double mean(std::span<const double> v) {
    double m = 0;
    for (double x : v) m += x;
    return m / double(v.size());
}

inline double variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / double(v.size() - 1);
}

// 1% critical value of chi^2 with 49 degrees of freedom.
inline constexpr double kChi2Crit49 = 74.919;

} // namespace testutil
