#include <doctest.h>

#include <cmath>

#include "cavpol/oscillatory.hpp"
#include "cavpol/quadrature.hpp"
#include "cavpol/special.hpp"

using namespace cavpol;

TEST_SUITE("oscillatory") {

TEST_CASE("two-step walk density matches the closed form") {
    // Two unit steps: P_2(R) = 1/(pi^2 R sqrt(4 - R^2)) on (0, 2).
    for (double r : {0.25, 0.5, 1.0, 1.5, 1.9}) {
        const double cf = 1.0 / (special::kPi * special::kPi * r * std::sqrt(4.0 - r * r));
        const auto v = osc::pearson_density(2, r);
        CHECK(v.value == doctest::Approx(cf).epsilon(1e-9));
    }
}

TEST_CASE("asymptotic tail agrees with brute-force truncation") {
    osc::QuadratureSpec trunc;
    trunc.force_truncation = true;
    trunc.abs_tol = 1e-10;
    SUBCASE("marginal") {
        for (double x : {0.0, 1.37, 4.2}) {
            const double a = osc::pearson_marginal(6, x, trunc).value;
            const double b = osc::pearson_marginal(6, x).value;
            CHECK(std::fabs(a - b) < 1e-10);
        }
    }
    SUBCASE("density") {
        // The truncation route needs one more decay power than the marginal,
        // hence N=7 to keep the reference evaluation within the panel budget.
        for (double r : {0.6, 2.6, 4.9}) {
            const double a = osc::pearson_density(7, r, trunc).value;
            const double b = osc::pearson_density(7, r).value;
            CHECK(std::fabs(a - b) < 1e-10);
        }
    }
    SUBCASE("density near-resonant radius") {
        // Frequencies (N - 2m) +- R pass near zero at R close to N - 2m; the
        // closed-form tail must stay accurate there.
        const double a = osc::pearson_density(7, 3.0 + 1e-7, trunc).value;
        const double b = osc::pearson_density(7, 3.0 + 1e-7).value;
        CHECK(std::fabs(a - b) < 1e-10);
    }
}

TEST_CASE("large-N truncation path agrees with the expanded path at the boundary") {
    // N = 11 expands, N = 12 truncates; both must agree with forced truncation.
    osc::QuadratureSpec trunc;
    trunc.force_truncation = true;
    trunc.abs_tol = 1e-11;
    CHECK(osc::pearson_marginal(11, 2.0).value ==
          doctest::Approx(osc::pearson_marginal(11, 2.0, trunc).value).epsilon(1e-9));
    CHECK(osc::pearson_density(12, 3.0).value ==
          doctest::Approx(osc::pearson_density(12, 3.0, trunc).value).epsilon(1e-9));
}

TEST_CASE("support and singular points") {
    CHECK(osc::pearson_density(5, 5.5).value == 0.0);
    CHECK(osc::pearson_density(10, 10.0 + 1e-12).value == 0.0);
    CHECK_THROWS(osc::pearson_density(1, 0.5));
    CHECK_THROWS(osc::pearson_density(2, 0.0)); // 1/R divergence
    CHECK_THROWS(osc::pearson_density(4, 0.0)); // logarithmic divergence
    CHECK_THROWS(osc::pearson_marginal(3, 0.5));
    // Odd N at the origin is regular.
    CHECK(osc::pearson_density(5, 0.0).value > 0.0);
}

TEST_CASE("marginal is even and nonnegative on the support") {
    for (double x : {0.1, 0.9, 3.7, 7.5}) {
        const double a = osc::pearson_marginal(8, x).value;
        const double b = osc::pearson_marginal(8, -x).value;
        CHECK(a == b);
        CHECK(a > -1e-12);
    }
}

TEST_CASE("small radii fall back to rigorous truncation") {
    // Inside the region where the Hankel form of J0(tR) is unusable the
    // evaluator must either produce a certified value or refuse.
    const auto v = osc::pearson_density(10, 1e-3, osc::QuadratureSpec{1e-9, 0, 400000, false});
    CHECK(v.value > 0.0);
    CHECK(v.error < 1e-9);
    // Very small N near the origin cannot be certified: expect a report.
    CHECK_THROWS(osc::pearson_density(4, 1e-6, osc::QuadratureSpec{1e-10, 0, 400000, false}));
}

TEST_CASE("reported error bounds the observed error against the closed form") {
    for (double r : {0.4, 1.1, 1.8}) {
        const double cf = 1.0 / (special::kPi * special::kPi * r * std::sqrt(4.0 - r * r));
        const auto v = osc::pearson_density(2, r);
        CHECK(std::fabs(v.value - cf) < std::max(v.error * 50, 1e-9));
    }
}

} // TEST_SUITE
