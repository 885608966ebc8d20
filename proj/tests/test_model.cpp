#include <doctest.h>

#include <cmath>

#include "cavpol/model.hpp"
#include "cavpol/rng.hpp"
#include "cavpol/special.hpp"

using namespace cavpol;

namespace {
model::DipoleConfig random_config(int n, rng::Stream& stream) {
    std::vector<double> angles(n);
    for (auto& a : angles) a = special::kTwoPi * stream.uniform();
    return model::DipoleConfig(std::move(angles));
}
} // namespace

TEST_SUITE("model") {

TEST_CASE("derived quantities") {
    {
        auto d = model::derive({100, 0.1, 1.0, 0.2, 400.0});
        CHECK(d.collective_coupling == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.n_excitations == 20);
        CHECK(d.lambda == doctest::Approx(80.0).epsilon(1e-15));
    }
    {
        // Arithmetic landing exactly on the critical point.
        auto d = model::derive({100, 0.1, 1.0, 0.2, 40.0});
        CHECK(d.lambda == doctest::Approx(8.0).epsilon(1e-15));
    }
    {
        auto d = model::derive({4, 0.5, 1.0, 1.0, 1.0});
        CHECK(d.collective_coupling == doctest::Approx(1.0));
        CHECK(d.n_excitations == 4);
        CHECK(d.lambda == doctest::Approx(1.0));
    }
}

TEST_CASE("rounding metadata and M >= 1 rejection") {
    auto d = model::derive({10, 1.0, 1.0, 0.26, 1.0});
    CHECK(d.n_excitations == 3);
    CHECK(d.excitation_rounding == doctest::Approx(3.0 - 2.6));
    // round(s N) = 0: no excitations, the angular weight degenerates.
    CHECK_THROWS(model::derive({10, 1.0, 1.0, 0.04, 1.0}));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(model::derive({0, 1.0, 1.0, 0.5, 1.0}));
    CHECK_THROWS(model::derive({10, -1.0, 1.0, 0.5, 1.0}));
    CHECK_THROWS(model::derive({10, 1.0, 0.0, 0.5, 1.0}));
    CHECK_THROWS(model::derive({10, 1.0, 1.0, 1.5, 1.0}));
    CHECK_THROWS(model::derive({10, 1.0, 1.0, 0.5, 0.0}));
}

TEST_CASE("sum_cos_squared closed cases") {
    CHECK(model::sum_cos_squared(model::DipoleConfig({0, 0, 0, 0, 0})) == doctest::Approx(5.0));
    const double h = special::kPi / 2;
    CHECK(model::sum_cos_squared(model::DipoleConfig({h, h, h, h, h})) ==
          doctest::Approx(0.0).epsilon(1e-30));
    CHECK(model::sum_cos_squared(model::DipoleConfig({0.0, h})) == doctest::Approx(1.0));
}

TEST_CASE("polymer identity sum cos^2 = (N + R_x)/2 over random configs") {
    rng::Stream stream(31415);
    for (int rep = 0; rep < 10000; ++rep) {
        const int n = 1 + int(stream.uniform() * 64);
        const auto cfg = random_config(n, stream);
        const double lhs = model::sum_cos_squared(cfg);
        const double rhs = 0.5 * (n + cfg.endpoint_x());
        CHECK(std::fabs(lhs - rhs) < 1e-12 * n);
        CHECK(cfg.endpoint_norm() <= n * (1 + 1e-12));
        CHECK(std::fabs(cfg.eta()) <= 1.0 + 1e-12);
    }
}

TEST_CASE("lambda scaling in s, beta and sqrt(N)") {
    rng::Stream stream(27182);
    for (int rep = 0; rep < 200; ++rep) {
        const double chi = 0.05 + stream.uniform();
        const double s = 0.2 + 0.6 * stream.uniform();
        const double beta = 0.5 + 10 * stream.uniform();
        const int n = 16;
        const auto base = model::derive({n, chi, 1.0, s, beta});
        const auto s2 = model::derive({n, chi, 1.0, 2.0 * s > 1.0 ? s : 2.0 * s, beta});
        if (2.0 * s <= 1.0)
            CHECK(s2.lambda == doctest::Approx(2.0 * base.lambda).epsilon(1e-12));
        const auto b2 = model::derive({n, chi, 1.0, s, 2.0 * beta});
        CHECK(b2.lambda == doctest::Approx(2.0 * base.lambda).epsilon(1e-12));
        const auto n4 = model::derive({4 * n, chi, 1.0, s, beta});
        CHECK(n4.lambda == doctest::Approx(2.0 * base.lambda).epsilon(1e-12));
    }
}

} // TEST_SUITE
