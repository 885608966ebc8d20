#pragma once

// Finite-N thermodynamics of the lower-polariton gas by numerical
// quadrature. After reducing the angular partition function over the polymer
// endpoint, everything is a one-dimensional integral in eta = R_x/N on
// [-1, 1]:
//
//   GaussianKernel:  weight  erf(sqrt((1-eta^2) N)) exp(N g(eta)),
//                    g(eta) = -eta^2 + Lambda sqrt((1+eta)/2)
//   ExactKernel:     weight  p_x(N eta) exp(Lambda N sqrt((1+eta)/2)),
//                    p_x the exact marginal endpoint density
//
// The normalized shift w = (<omega_-> - omega_x)/Omega follows from
// differentiating ln Z under the integral sign in Lambda, which gives the
// ratio of integrals w = -<sqrt((1+eta)/2)> under the weight. Both w and
// ln Z (up to a Lambda-independent constant) are returned.
//
// The full support [-1, 1] is integrated, not just eta > 0: the negative-eta
// half is exponentially irrelevant once Lambda >~ 1 but required for the
// correct isotropic limit as Lambda -> 0. Weights are scaled by their
// maximum before exponentiating (N g can reach ~10^3), and the adaptive mesh
// is seeded from the saddle point so that sharply peaked large-N integrands
// are never missed.

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavpol/laplace.hpp"
#include "cavpol/oscillatory.hpp"
#include "cavpol/parallel.hpp"
#include "cavpol/polymer.hpp"
#include "cavpol/quadrature.hpp"
#include "cavpol/special.hpp"

namespace cavpol::thermo {

enum class KernelMethod { GaussianKernel, ExactKernel };

inline const char* method_name(KernelMethod m) {
    return m == KernelMethod::GaussianKernel ? "gauss" : "exact";
}

struct ThermoResult {
    double lambda = 0;
    int n_dipoles = 0;
    KernelMethod method = KernelMethod::GaussianKernel;
    double normalized_shift = 0; // w = (<omega_-> - omega_x)/Omega
    double log_partition = 0;    // ln Z up to a Lambda-independent constant
    double shift_error = 0;      // propagated quadrature error estimate
};

struct ThermoOptions {
    double rel_tol = 1e-13;
    int max_intervals = 60000;
    // ExactKernel: the marginal density is an oscillatory integral with an
    // absolute noise floor; its tolerance, the matching outer floor, and the
    // relative error budget before the route refuses the point.
    osc::QuadratureSpec marginal{3e-14, 0, 400000, false};
    double exact_abs_floor = 1e-13;
    int exact_max_intervals = 8000;
    double exact_noise_budget = 1e-4;
};

// Validity of neglecting the upper polariton: requires beta Omega > 1,
// i.e. Lambda/s > 1.
inline bool upper_polariton_negligible(double lambda, double excitation_density) {
    return lambda > excitation_density;
}

namespace detail {

inline double observable(double eta) { return std::sqrt(0.5 * (1.0 + eta)); }

inline std::vector<double> mesh_seeds(int n, double lambda) {
    const auto sol = laplace::solve(lambda);
    const double sigma = 1.0 / std::sqrt(double(n) * std::fabs(sol.g_curvature));
    std::vector<double> s{-0.5, 0.0, 0.5, sol.eta0};
    for (double k : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
        s.push_back(sol.eta0 - k * sigma);
        s.push_back(sol.eta0 + k * sigma);
    }
    s.push_back(1.0 - 1.0 / double(n));
    s.push_back(-1.0 + 1.0 / double(n));
    return s;
}

template <class LogW>
double scan_max(LogW&& logw, double eta_seed) {
    double m = logw(eta_seed);
    constexpr int kGrid = 2048;
    for (int i = 1; i < kGrid; ++i) {
        const double eta = -1.0 + 2.0 * double(i) / kGrid;
        m = std::max(m, logw(eta));
    }
    return m;
}

} // namespace detail

inline ThermoResult lp_energy_quadrature(int n_dipoles, double lambda,
                                         KernelMethod method,
                                         const ThermoOptions& opt = {}) {
    if (!(lambda >= 0)) throw std::invalid_argument("lp_energy_quadrature: lambda must be >= 0");
    const int n = n_dipoles;
    ThermoResult out;
    out.lambda = lambda;
    out.n_dipoles = n;
    out.method = method;

    const auto seeds = detail::mesh_seeds(n, lambda);
    quad::VecResult<2> integrals;
    double log_scale = 0;

    if (method == KernelMethod::GaussianKernel) {
        if (n < 1) throw std::invalid_argument("lp_energy_quadrature: n_dipoles must be >= 1");
        auto logw = [n, lambda](double eta) {
            if (std::fabs(eta) >= 1.0) return -std::numeric_limits<double>::infinity();
            return special::log_erf(std::sqrt((1.0 - eta * eta) * n)) +
                   n * laplace::g(eta, lambda);
        };
        log_scale = detail::scan_max(logw, laplace::eta0(lambda));
        auto f = [&](double eta) -> std::array<double, 2> {
            const double lw = logw(eta);
            const double w = std::isfinite(lw) ? std::exp(lw - log_scale) : 0.0;
            return {w, detail::observable(eta) * w};
        };
        integrals = quad::integrate_vec<2>(f, -1.0, 1.0, opt.rel_tol, 1e-280, seeds,
                                           opt.max_intervals);
    } else {
        if (n < 4)
            throw std::invalid_argument("lp_energy_quadrature: ExactKernel requires n_dipoles >= 4");
        if (n > 64)
            throw std::invalid_argument(
                "lp_energy_quadrature: ExactKernel refused for n_dipoles > 64; use GaussianKernel");
        const double noise_floor = 5.0 * opt.marginal.abs_tol;
        auto marginal_at = [&](double eta) {
            return osc::pearson_marginal(n, n * eta, opt.marginal).value;
        };
        // True peak of ln[p_x(N eta)] + Lambda N obs(eta) from a coarse scan;
        // scaling by it keeps the integrand O(1) at the saddle regardless of
        // how deep the endpoint-density edge suppression is.
        double m = -std::numeric_limits<double>::infinity();
        for (int i = 1; i < 128; ++i) {
            const double eta = -1.0 + 2.0 * double(i) / 128.0;
            const double p = marginal_at(eta);
            if (p > noise_floor)
                m = std::max(m, std::log(p) + lambda * n * detail::observable(eta));
        }
        if (!std::isfinite(m))
            throw std::runtime_error("lp_energy_quadrature: exact endpoint weight vanishes "
                                     "within the marginal noise floor everywhere");
        auto f = [&](double eta) -> std::array<double, 2> {
            if (std::fabs(eta) >= 1.0) return {0.0, 0.0};
            const double p = marginal_at(eta);
            // Below its own noise floor the oscillatory quadrature cannot
            // distinguish p from zero; clamping avoids amplified noise
            // spikes, and the hidden mass is bounded analytically below.
            if (p <= noise_floor) return {0.0, 0.0};
            const double w = std::exp(std::log(p) + lambda * n * detail::observable(eta) - m);
            return {w, detail::observable(eta) * w};
        };
        log_scale = m;
        // Mass the clamp can hide: noise_floor exp(Lambda N obs - m) integrated
        // over eta, bounded via 1 - obs >= (1 - eta)/4. Data noise also floors
        // the achievable quadrature accuracy, so it feeds the outer tolerance.
        const double lam_n = lambda * n;
        const double clamp_bound =
            noise_floor * std::exp(lam_n - m) * (lam_n > 1.0 ? 8.0 / lam_n : 2.0);
        const double abs_floor = std::max(opt.exact_abs_floor, 4.0 * clamp_bound);
        integrals = quad::integrate_vec<2>(f, -1.0, 1.0, opt.rel_tol, abs_floor, seeds,
                                           std::min(opt.max_intervals, opt.exact_max_intervals));
        const double i0_est = std::max(integrals.value[0], 1e-300);
        if (clamp_bound / i0_est > opt.exact_noise_budget)
            throw std::runtime_error(
                "lp_energy_quadrature: marginal noise floor exceeds the exact-kernel error "
                "budget at this (N, Lambda); relative bound " +
                std::to_string(clamp_bound / i0_est));
        out.shift_error += clamp_bound / i0_est;
    }

    const double i0 = integrals.value[0], i1 = integrals.value[1];
    if (!(i0 > 0) || !std::isfinite(i0))
        throw std::runtime_error("lp_energy_quadrature: degenerate weight integral");
    if (!integrals.converged)
        throw std::runtime_error(
            "lp_energy_quadrature: quadrature did not converge (error estimate " +
            std::to_string(integrals.error[0] / i0) + " relative)");

    out.normalized_shift = -i1 / i0;
    out.log_partition = log_scale + std::log(i0);
    out.shift_error +=
        std::fabs(out.normalized_shift) * (integrals.error[0] / i0 + integrals.error[1] / std::max(i1, 1e-300));
    return out;
}

// Evaluate a Lambda grid; points are independent and may run on a thread
// pool. Per-point failures are annotated with the grid index.
inline std::vector<ThermoResult> sweep(int n_dipoles, std::span<const double> lambdas,
                                       KernelMethod method, const ThermoOptions& opt = {},
                                       unsigned threads = 1) {
    if (lambdas.empty()) throw std::invalid_argument("sweep: empty lambda grid");
    std::vector<ThermoResult> out(lambdas.size());
    par::parallel_for(lambdas.size(), threads, [&](std::size_t i) {
        try {
            out[i] = lp_energy_quadrature(n_dipoles, lambdas[i], method, opt);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep: grid index " + std::to_string(i) + " (lambda=" +
                                     std::to_string(lambdas[i]) + "): " + e.what());
        }
    });
    return out;
}

} // namespace cavpol::thermo
