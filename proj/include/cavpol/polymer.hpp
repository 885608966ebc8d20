#pragma once

// Endpoint statistics of the equivalent two-dimensional polymer: the planar
// endpoint density of an N-step unit walk (exact Bessel-integral form and
// its large-N Gaussian limit), the marginal density of the x component, and
// a direct endpoint sampler used as an independent oracle.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cavpol/oscillatory.hpp"
#include "cavpol/rng.hpp"
#include "cavpol/special.hpp"

namespace cavpol::polymer {

using osc::QuadratureSpec;

enum class DensityKind { Exact, Gaussian };

// Exact planar endpoint density P_N(R); zero beyond the maximal extension
// R = N. Throws if the oscillatory quadrature cannot certify abs_tol.
inline double density_exact(int n_segments, double radius, const QuadratureSpec& spec = {}) {
    if (n_segments < 2)
        throw std::invalid_argument("density_exact: n_segments must be >= 2 (N=1 is a delta ring)");
    if (radius < 0) throw std::invalid_argument("density_exact: negative radius");
    if (radius > n_segments) return 0.0;
    return osc::pearson_density(n_segments, radius, spec).value;
}

// Gaussian large-N limit (1/(pi N)) exp(-R^2/N).
inline double density_gaussian(int n_segments, double radius) {
    if (n_segments < 1) throw std::invalid_argument("density_gaussian: n_segments must be >= 1");
    if (radius < 0) throw std::invalid_argument("density_gaussian: negative radius");
    const double n = double(n_segments);
    return std::exp(-radius * radius / n) / (special::kPi * n);
}

// Marginal density of R_x. Even in x, supported on [-N, N]. The k-integrand
// [J0(k)]^N decays as k^{-N/2}; four steps are required for an absolutely
// convergent reduction.
inline double marginal_density_x(int n_segments, double x, const QuadratureSpec& spec = {}) {
    if (n_segments < 4) throw std::invalid_argument("marginal_density_x: n_segments must be >= 4");
    if (std::fabs(x) > n_segments)
        throw std::invalid_argument("marginal_density_x: |x| beyond maximal extension");
    return osc::pearson_marginal(n_segments, x, spec).value;
}

// Evaluator object bundling the walk length, the density kind and the
// quadrature configuration.
struct EndpointDensity {
    int n_segments = 0;
    DensityKind kind = DensityKind::Exact;
    QuadratureSpec quadrature{};

    double operator()(double radius) const {
        return kind == DensityKind::Exact ? density_exact(n_segments, radius, quadrature)
                                          : density_gaussian(n_segments, radius);
    }
    double marginal_x(double x) const { return marginal_density_x(n_segments, x, quadrature); }
};

// Draw `count` independent endpoints of an N-step unit walk with i.i.d.
// uniform step directions. Deterministic for a fixed seed; parallel batches
// should pass distinct seeds (each call owns a derived RNG stream).
inline std::vector<std::array<double, 2>> sample_endpoint(int n_segments, std::uint64_t seed,
                                                          std::size_t count) {
    if (n_segments < 1) throw std::invalid_argument("sample_endpoint: n_segments must be >= 1");
    if (count < 1) throw std::invalid_argument("sample_endpoint: count must be >= 1");
    rng::Stream stream(seed, 0x706f6c79u); // stream id: "poly"
    std::vector<std::array<double, 2>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double rx = 0, ry = 0;
        for (int s = 0; s < n_segments; ++s) {
            const double phi = special::kTwoPi * stream.uniform();
            rx += std::cos(phi);
            ry += std::sin(phi);
        }
        out.push_back({rx, ry});
    }
    return out;
}

} // namespace cavpol::polymer
