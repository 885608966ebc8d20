#include <doctest.h>

#include <cmath>
#include <complex>

#include "cavpol/expint.hpp"
#include "cavpol/quadrature.hpp"

using namespace cavpol;
using cd = std::complex<double>;

TEST_SUITE("expint") {

TEST_CASE("E_p(0) and domain checks") {
    CHECK(expint::En(2.0, cd(0, 0)).real() == doctest::Approx(1.0));
    CHECK(expint::En(3.5, cd(0, 0)).real() == doctest::Approx(1.0 / 2.5));
    CHECK_THROWS(expint::En(0.5, cd(0, 0)));
    CHECK_THROWS(expint::En(-1.0, cd(0, 1)));
}

TEST_CASE("recurrence p E_{p+1}(z) = e^{-z} - z E_p(z) across both branches") {
    for (double p : {0.5, 1.0, 2.5, 3.0, 6.5, 12.0}) {
        for (double w : {0.01, 0.4, 1.0, 4.0, 9.0, 30.0, 200.0}) {
            const cd z(0.0, -w);
            const cd lhs = double(p) * expint::En(p + 1.0, z);
            const cd rhs = std::exp(-z) - z * expint::En(p, z);
            CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("matches direct quadrature for rapidly decaying orders") {
    // For p = 8 the truncated integral over [1, 60] is accurate to ~1e-13.
    for (double w : {0.5, 3.0, 12.0}) {
        const cd z(0.0, -w);
        auto re = quad::integrate([&](double t) { return std::pow(t, -8.0) * std::cos(w * t); },
                                  1.0, 60.0, 1e-13, 1e-16);
        auto im = quad::integrate([&](double t) { return std::pow(t, -8.0) * std::sin(w * t); },
                                  1.0, 60.0, 1e-13, 1e-16);
        const cd direct(re.value, im.value);
        CHECK(std::abs(expint::En(8.0, z) - direct) < 1e-11);
    }
}

TEST_CASE("series/continued-fraction crossover is seamless") {
    for (double p : {1.0, 2.5, 4.0}) {
        const cd a = expint::En(p, cd(0.0, -7.999));
        const cd b = expint::En(p, cd(0.0, -8.001));
        // d/dz E_p = -E_{p-1}; the step is 0.002 so the jump must be ~0.002*|E_{p-1}| at most.
        CHECK(std::abs(a - b) < 0.01);
        const cd mid = expint::En(p, cd(0.0, -8.0));
        CHECK(std::abs(a - mid) < 0.005);
    }
}

TEST_CASE("oscillatory_tail reproduces analytic special cases") {
    // w = 0: plain power-law tail.
    CHECK(expint::oscillatory_tail(3.0, 0.0, 2.0).real() ==
          doctest::Approx(std::pow(2.0, -2.0) / 2.0).epsilon(1e-14));
    CHECK_THROWS(expint::oscillatory_tail(1.0, 0.0, 2.0));
    // Large-w tail of t^{-2}: leading integration by parts ~ -sin(wK)/(w K^2).
    const double w = 1000.0, K = 5.0;
    const cd v = expint::oscillatory_tail(2.0, w, K);
    const double leading = -std::sin(w * K) / (w * K * K);
    CHECK(v.real() == doctest::Approx(leading).epsilon(1e-2));
}

} // TEST_SUITE
