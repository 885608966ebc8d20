#pragma once

// Special functions used throughout: a fast Bessel J0, stable log(erf),
// and small arithmetic helpers.
//
// J0 is evaluated ~1e7 times per sweep inside the oscillatory quadratures,
// so the generic std::cyl_bessel_j (microseconds per call on this toolchain)
// is only used once, at startup, to seed piecewise Chebyshev interpolants.
// For x >= 30 the Hankel asymptotic expansion reaches machine precision.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cavpol::special {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kInvSqrt2 = 0.70710678118654752440084436210484904;
inline constexpr double kInvSqrt3 = 0.57735026918962576450914878050195746;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// x^n for integer n >= 0 by squaring; |x| <= 1 in all call sites.
inline double ipow(double x, int n) {
    double r = 1.0, b = x;
    for (; n > 0; n >>= 1) {
        if (n & 1) r *= b;
        b *= b;
    }
    return r;
}

// Binomial coefficient as double (exact up to 2^53, ~1e-16 relative beyond).
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

namespace detail {

// Chebyshev interpolant of a function on [a, b], built from point values.
struct Cheb {
    double a = 0, b = 1;
    std::vector<double> c;

    template <class F>
    static Cheb fit(F&& f, double a, double b, int n) {
        Cheb ch;
        ch.a = a;
        ch.b = b;
        ch.c.resize(n);
        std::vector<double> fv(n);
        for (int k = 0; k < n; ++k) {
            const double y = std::cos(kPi * (k + 0.5) / n);
            fv[k] = f(0.5 * (b - a) * y + 0.5 * (b + a));
        }
        for (int j = 0; j < n; ++j) {
            double s = 0;
            for (int k = 0; k < n; ++k) s += fv[k] * std::cos(kPi * j * (k + 0.5) / n);
            ch.c[j] = 2.0 * s / n;
        }
        return ch;
    }

    double eval(double x) const {
        const double y = (2.0 * x - a - b) / (b - a);
        double d = 0, dd = 0;
        for (int j = int(c.size()) - 1; j >= 1; --j) {
            const double sv = d;
            d = 2.0 * y * d - dd + c[j];
            dd = sv;
        }
        return y * d - dd + 0.5 * c[0];
    }
};

struct J0Tables {
    static constexpr int kPieces = 5;
    static constexpr double kSwitch = 30.0;
    std::array<Cheb, kPieces> pieces;
    // Hankel coefficients a_k = ((2k-1)!!)^2 / (k! 8^k) with alternating signs
    // folded into the P (even k) and Q (odd k) cosine/sine series.
    std::array<double, 16> ak{};

    J0Tables() {
        const double w = kSwitch / kPieces;
        for (int i = 0; i < kPieces; ++i) {
            pieces[i] = Cheb::fit([](double x) { return std::cyl_bessel_j(0.0, x); },
                                  i * w, (i + 1) * w, 48);
        }
        ak[0] = 1.0;
        for (int k = 0; k + 1 < int(ak.size()); ++k)
            ak[k + 1] = -ak[k] * double(2 * k + 1) * double(2 * k + 1) / (8.0 * (k + 1));
    }
};

inline const J0Tables& j0_tables() {
    static const J0Tables t;
    return t;
}

} // namespace detail

// Bessel function of the first kind, order zero. Absolute accuracy ~1e-14.
inline double bessel_j0(double x) {
    x = std::fabs(x);
    const auto& t = detail::j0_tables();
    if (x < detail::J0Tables::kSwitch) {
        const double w = detail::J0Tables::kSwitch / detail::J0Tables::kPieces;
        int i = int(x / w);
        if (i >= detail::J0Tables::kPieces) i = detail::J0Tables::kPieces - 1;
        return t.pieces[i].eval(x);
    }
    // J0(x) ~ sqrt(2/(pi x)) [P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)]
    const double u = 1.0 / x, u2 = u * u;
    double p = 0, q = 0;
    for (int j = 7; j >= 0; --j) p = p * u2 + (j % 2 ? -1.0 : 1.0) * t.ak[2 * j];
    for (int j = 7; j >= 0; --j) q = q * u2 + (j % 2 ? -1.0 : 1.0) * t.ak[2 * j + 1];
    q *= u;
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// log(erf(x)) for x > 0, stable down to denormal arguments.
inline double log_erf(double x) {
    if (!(x > 0)) throw std::domain_error("log_erf: argument must be positive");
    if (x > 1e-2) return std::log(std::erf(x));
    // erf(x) = (2/sqrt(pi)) x (1 - x^2/3 + x^4/10 - x^6/42 + ...)
    const double x2 = x * x;
    const double series = -x2 / 3.0 + x2 * x2 / 10.0 - x2 * x2 * x2 / 42.0;
    return std::log(2.0 / std::sqrt(kPi)) + std::log(x) + std::log1p(series);
}

} // namespace cavpol::special
