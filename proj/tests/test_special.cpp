#include <doctest.h>

#include <cmath>

#include "cavpol/special.hpp"

using namespace cavpol;

TEST_SUITE("special") {

TEST_CASE("bessel_j0 reference values") {
    // Literature values to 16 digits.
    CHECK(std::fabs(special::bessel_j0(0.0) - 1.0) < 1e-14);
    CHECK(special::bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-13));
    CHECK(special::bessel_j0(2.0) == doctest::Approx(0.2238907791412357).epsilon(1e-13));
    CHECK(special::bessel_j0(5.0) == doctest::Approx(-0.1775967713143383).epsilon(1e-12));
    // First zeros.
    CHECK(std::fabs(special::bessel_j0(2.404825557695773)) < 1e-13);
    CHECK(std::fabs(special::bessel_j0(5.520078110286311)) < 1e-13);
    CHECK(std::fabs(special::bessel_j0(8.653727912911013)) < 1e-13);
}

TEST_CASE("bessel_j0 tracks the library implementation everywhere") {
    double worst = 0;
    for (int i = 1; i <= 40000; ++i) {
        const double x = 0.005 * i; // up to 200, spanning both branches
        worst = std::max(worst, std::fabs(special::bessel_j0(x) - std::cyl_bessel_j(0.0, x)));
    }
    CHECK(worst < 5e-13);
}

TEST_CASE("log_erf matches direct evaluation and is stable for tiny arguments") {
    for (double x : {0.02, 0.5, 1.0, 3.0}) {
        CHECK(special::log_erf(x) == doctest::Approx(std::log(std::erf(x))).epsilon(1e-13));
    }
    // The series branch agrees with direct evaluation where both are exact.
    CHECK(special::log_erf(0.00999) ==
          doctest::Approx(std::log(std::erf(0.00999))).epsilon(1e-12));
    // No overflow or -inf for denormal-ish arguments.
    const double v = special::log_erf(1e-300);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(std::log(2.0 / std::sqrt(special::kPi)) + std::log(1e-300)));
    CHECK_THROWS(special::log_erf(0.0));
}

TEST_CASE("ipow and binomial") {
    CHECK(special::ipow(0.5, 10) == doctest::Approx(std::pow(0.5, 10)).epsilon(1e-15));
    CHECK(special::ipow(-0.9, 7) == doctest::Approx(std::pow(-0.9, 7)).epsilon(1e-15));
    CHECK(special::ipow(2.0, 0) == 1.0);
    CHECK(special::binomial(10, 3) == 120.0);
    CHECK(special::binomial(64, 32) == doctest::Approx(1.832624140942591e18).epsilon(1e-14));
    CHECK(special::binomial(5, 6) == 0.0);
}

} // TEST_SUITE
