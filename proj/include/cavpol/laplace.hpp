#pragma once

// Thermodynamic-limit treatment of the alignment transition. The reduced
// free-energy density g(eta) = -eta^2 + Lambda sqrt((1+eta)/2) has a unique
// maximum eta0 on [0, 1]: interior for Lambda < 8 (stationarity condition
// 32 eta^2 (1+eta) = Lambda^2), pinned at the fully stretched boundary
// eta0 = 1 for Lambda >= 8. The transition at Lambda_C = 8 is second order:
// eta0 is continuous with a kink in its slope.

#include <cmath>
#include <stdexcept>

#include "cavpol/special.hpp"

namespace cavpol::laplace {

inline constexpr double kCriticalLambda = 8.0;

inline double g(double eta, double lambda) {
    return -eta * eta + lambda * std::sqrt(0.5 * (1.0 + eta));
}

inline double g_prime(double eta, double lambda) {
    return -2.0 * eta + lambda / (2.0 * std::sqrt(2.0 * (1.0 + eta)));
}

inline double g_second(double eta, double lambda) {
    return -2.0 - 0.5 * lambda * std::pow(2.0 * (1.0 + eta), -1.5);
}

// Order parameter eta0(Lambda). Root of the strictly increasing cubic
// 32 eta^2 (1+eta) - Lambda^2 on (0,1); exactly 0 at Lambda = 0 and exactly
// 1 in the stretched phase. Bisection: unconditionally stable, no branch
// selection, converges to the floating-point root.
//
// `critical_lambda` exists as a fault-injection hook for the validation
// report; production callers use the default.
inline double eta0(double lambda, double critical_lambda = kCriticalLambda) {
    if (!(lambda >= 0)) throw std::invalid_argument("eta0: lambda must be >= 0");
    if (lambda == 0.0) return 0.0;
    if (lambda >= critical_lambda) return 1.0;
    const double target = lambda * lambda;
    auto cubic = [](double e) { return 32.0 * e * e * (1.0 + e); };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (cubic(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct LaplaceSolution {
    double lambda = 0;
    double eta0 = 0;
    double g_at_max = 0;
    double g_curvature = 0; // g''(eta0) <= 0
    double shift_th = 0;    // (⟨omega_-⟩ - omega_x)/Omega in the N -> inf limit
    bool stretched = false; // Lambda >= Lambda_C
};

inline LaplaceSolution solve(double lambda) {
    LaplaceSolution s;
    s.lambda = lambda;
    s.eta0 = eta0(lambda);
    s.g_at_max = g(s.eta0, lambda);
    s.g_curvature = g_second(s.eta0, lambda);
    s.shift_th = -std::sqrt(0.5 * (1.0 + s.eta0));
    s.stretched = lambda >= kCriticalLambda;
    return s;
}

// Normalized thermal lower-polariton shift in the thermodynamic limit:
// -sqrt((1+eta0)/2). Continuous in Lambda, equal to -1 in the stretched
// phase and tending to the planar isotropic value -1/sqrt(2) at Lambda = 0.
inline double lp_energy_thermodynamic(double lambda) {
    return -std::sqrt(0.5 * (1.0 + eta0(lambda)));
}

// ln Z from the Gaussian-fluctuation (Laplace) formula around the interior
// maximum, up to the same Lambda-independent additive constant used by the
// finite-N quadrature:
//   N g(eta0) + (1/2) ln(2pi/(N |g''(eta0)|)) + ln erf(sqrt((1-eta0^2) N)).
// Only valid for an interior maximum, hence 0 < Lambda < 8.
inline double log_partition_laplace(int n_dipoles, double lambda) {
    if (n_dipoles < 1) throw std::invalid_argument("log_partition_laplace: n_dipoles must be >= 1");
    if (!(lambda > 0) || lambda >= kCriticalLambda)
        throw std::invalid_argument(
            "log_partition_laplace: requires 0 < lambda < 8 (interior maximum)");
    const auto s = solve(lambda);
    const double n = double(n_dipoles);
    const double erf_arg = std::sqrt((1.0 - s.eta0 * s.eta0) * n);
    return n * s.g_at_max + 0.5 * std::log(2.0 * special::kPi / (n * std::fabs(s.g_curvature))) +
           special::log_erf(erf_arg);
}

inline constexpr double critical_lambda() { return kCriticalLambda; }

// k_B T_C = s Omega / 8, in the same energy units as Omega.
inline double critical_temperature(double excitation_density, double collective_coupling) {
    if (excitation_density < 0 || collective_coupling < 0)
        throw std::invalid_argument("critical_temperature: negative inputs");
    return excitation_density * collective_coupling / kCriticalLambda;
}

} // namespace cavpol::laplace
