#pragma once

// Generalized exponential integral E_p(z) = \int_1^inf t^{-p} e^{-z t} dt for
// real order p > 0 and complex argument z (principal branch). Used to express
// the truncated tails of oscillatory Bessel integrals in closed form:
//   \int_K^inf t^{-p} e^{i w t} dt = K^{1-p} E_p(-i w K).
//
// Small |z|: power series (separate branch when p is a positive integer,
// where the series picks up a logarithm). Large |z|: modified Lentz
// continued fraction. The crossover at |z| = 8 keeps the series free of
// destructive cancellation.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cavpol/special.hpp"

namespace cavpol::expint {

using cd = std::complex<double>;

namespace detail {

inline bool is_integer(double p) { return p == std::floor(p); }

inline cd series_noninteger(double p, cd z) {
    // E_p(z) = Gamma(1-p) z^{p-1} - sum_{n>=0} (-z)^n / (n! (n+1-p))
    cd sum = 0.0;
    cd term = 1.0; // (-z)^n / n!
    for (int n = 0; n < 300; ++n) {
        const cd contrib = term / (double(n) + 1.0 - p);
        sum += contrib;
        term *= -z / double(n + 1);
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && n > 4) break;
    }
    const double g1p = std::tgamma(1.0 - p);
    return g1p * std::pow(z, p - 1.0) - sum;
}

inline cd series_integer(int p, cd z) {
    // E_p(z) = ((-z)^{p-1}/(p-1)!) (-log z + psi(p)) - sum_{n != p-1} (-z)^n/(n!(n+1-p))
    double psi = -special::kEulerGamma;
    for (int k = 1; k <= p - 1; ++k) psi += 1.0 / k;
    cd pow_term = 1.0; // (-z)^{p-1}/(p-1)!
    for (int k = 1; k <= p - 1; ++k) pow_term *= -z / double(k);
    cd sum = 0.0;
    cd term = 1.0;
    for (int n = 0; n < 300; ++n) {
        if (n != p - 1) sum += term / (double(n) + 1.0 - p);
        term *= -z / double(n + 1);
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)) && n > p + 4) break;
    }
    return pow_term * (-std::log(z) + psi) - sum;
}

inline cd lentz_cf(double p, cd z) {
    // E_p(z) = e^{-z} / (z + p - 1 p/(z + p + 2 - 2(p+1)/(z + p + 4 - ...)))
    constexpr double kTiny = 1e-290;
    cd b = z + p;
    cd c = 1.0 / kTiny;
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i < 200000; ++i) {
        const cd a = -double(i) * (p - 1.0 + i);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const cd del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return std::exp(-z) * h;
    }
    throw std::runtime_error("expint: continued fraction failed to converge");
}

} // namespace detail

// E_p(z), p > 0. z on or near the imaginary axis is the intended regime.
inline cd En(double p, cd z) {
    if (!(p > 0)) throw std::domain_error("expint::En requires p > 0");
    if (z == cd(0.0, 0.0)) {
        if (p <= 1.0) throw std::domain_error("expint::En diverges at z=0 for p<=1");
        return cd(1.0 / (p - 1.0), 0.0);
    }
    if (std::abs(z) < 8.0) {
        if (detail::is_integer(p)) return detail::series_integer(int(p), z);
        return detail::series_noninteger(p, z);
    }
    return detail::lentz_cf(p, z);
}

// \int_K^inf t^{-p} e^{i w t} dt, K > 0. For w = 0 requires p > 1.
inline cd oscillatory_tail(double p, double w, double K) {
    if (w == 0.0) {
        if (!(p > 1.0)) throw std::domain_error("oscillatory_tail: divergent zero-frequency term");
        return cd(std::pow(K, 1.0 - p) / (p - 1.0), 0.0);
    }
    return std::pow(K, 1.0 - p) * En(p, cd(0.0, -w * K));
}

} // namespace cavpol::expint
