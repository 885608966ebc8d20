#pragma once

// Oscillatory integrals for the endpoint statistics of an N-step planar
// random walk with unit steps (freely jointed 2-D chain):
//
//   pearson_marginal(N, x) = (1/pi)   \int_0^inf cos(k x) J0(k)^N dk
//   pearson_density(N, R)  = (1/2pi)  \int_0^inf t J0(t R) J0(t)^N dt
//
// The integrands decay only algebraically (J0^N ~ k^{-N/2}), so plain
// truncation cannot reach tight tolerances for small N. Strategy:
//
//   [0, K]   adaptive panels sized to the fastest oscillation;
//   [K, inf) either dropped when the |J0|^N envelope bound already meets the
//            tolerance (large N), or evaluated in closed form by expanding
//            each Bessel factor in its Hankel form
//              J0(t) = Re[ sqrt(2/(pi t)) A(1/t) e^{i(t - pi/4)} ],
//            which turns the tail into a finite sum of terms
//              poly(1/t) t^{-p} e^{i w t}
//            integrable via generalized exponential integrals.
//
// Frequencies w = (N - 2m) +- x can pass through zero; E_p handles small
// |w K| by series, so near-resonant arguments need no special casing. A
// genuine zero-frequency term with p <= 1 signals a real singularity of the
// density (e.g. N = 2 at R = 2, or N = 4 at R = 0) and is reported.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavpol/expint.hpp"
#include "cavpol/quadrature.hpp"
#include "cavpol/special.hpp"

namespace cavpol::osc {

using cd = std::complex<double>;

struct QuadratureSpec {
    double abs_tol = 1e-12;      // absolute tolerance on the integral
    double max_wavenumber = 0;   // direct/tail split; 0 = automatic
    int max_panels = 400000;     // direct-part interval budget
    bool force_truncation = false; // drop the tail instead of expanding it
};

struct Value {
    double value = 0;
    double error = 0;
    long evaluations = 0;
};

namespace detail {

constexpr int kDeg = 6; // amplitude polynomial order kept in the tail
constexpr double kDroppedOrder = kDeg + 1; // first dropped power of 1/t
using Poly = std::array<cd, kDeg + 1>;

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r{};
    for (int i = 0; i <= kDeg; ++i)
        for (int j = 0; i + j <= kDeg; ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Poly conj(const Poly& a) {
    Poly r{};
    for (int i = 0; i <= kDeg; ++i) r[i] = std::conj(a[i]);
    return r;
}

// Hankel amplitude of J0: coefficients of A(u) with
// H0^(1)(t) = sqrt(2/(pi t)) e^{i(t-pi/4)} A(1/t),  A_k = (-i)^k ((2k-1)!!)^2/(k! 8^k).
inline const Poly& hankel_amplitude() {
    static const Poly a = [] {
        Poly p{};
        double mag = 1.0;
        cd phase = 1.0;
        for (int k = 0; k <= kDeg; ++k) {
            p[k] = phase * mag;
            mag *= double(2 * k + 1) * double(2 * k + 1) / (8.0 * (k + 1));
            phase *= cd(0.0, -1.0);
        }
        return p;
    }();
    return a;
}

inline const std::vector<Poly>& amplitude_powers(int n) {
    static std::vector<Poly> cache = [] {
        std::vector<Poly> c(1);
        c[0] = Poly{};
        c[0][0] = 1.0;
        return c;
    }();
    while (int(cache.size()) <= n) cache.push_back(mul(cache.back(), hankel_amplitude()));
    return cache;
}

// sum_j poly[j] K^{1-(p0+j)} E_{p0+j}(-i w K); throws on divergent w = 0 terms.
inline cd tail_sum(const Poly& poly, double p0, double w, double K) {
    cd acc = 0.0;
    for (int j = 0; j <= kDeg; ++j) {
        if (poly[j] == cd(0.0, 0.0)) continue;
        const double p = p0 + j;
        if (w == 0.0 && p <= 1.0)
            throw std::runtime_error("pearson integral: zero-frequency divergence (singular point)");
        acc += poly[j] * expint::oscillatory_tail(p, w, K);
    }
    return acc;
}

struct DirectPart {
    double value, error;
    long evals;
};

template <class F>
DirectPart integrate_direct(F&& f, double K, double freq, double tol, int max_panels) {
    const double panel = special::kPi / (freq + 1.0);
    std::vector<double> splits;
    for (double s = panel; s < K; s += panel) splits.push_back(s);
    auto r = quad::integrate(f, 0.0, K, 1e-13, tol, splits, max_panels);
    if (!r.converged && r.error > tol)
        throw std::runtime_error("pearson integral: direct part failed to reach abs_tol " +
                                 std::to_string(tol) + " (achieved " + std::to_string(r.error) + ")");
    return {r.value, r.error, r.evaluations};
}

// Upper bound for |\int_K^inf| from the |J0(k)| <= sqrt(2/(pi k)) envelope.
// exponent = power of k^{-1} in the envelope of the full integrand,
// amp = its prefactor. Returns +inf if the bound integral diverges.
inline double envelope_tail_bound(double amp, double exponent, double K) {
    if (exponent <= 1.0) return std::numeric_limits<double>::infinity();
    return amp * std::pow(K, 1.0 - exponent) / (exponent - 1.0);
}

enum class TailMode { Expand, Truncate };

struct Plan {
    TailMode mode;
    double K;
};

// Decide the direct/tail split. The Hankel expansion of J0(t r) needs
// t r >> 1 over the whole tail, so small radii push K up; once that gets
// expensive the envelope-truncation route takes over (it is rigorous at any
// radius, just needs a larger K for small N).
inline Plan make_plan(const QuadratureSpec& spec, int n, double freq, double min_scale,
                      double env_amp, double env_exp, double abs_tol) {
    const bool expandable = n < 12 && (min_scale <= 0.0 || 32.0 / min_scale <= 4000.0);
    if (!spec.force_truncation && expandable) {
        double K = std::max(40.0, spec.max_wavenumber);
        if (min_scale > 0.0) K = std::max(K, 32.0 / min_scale);
        return {TailMode::Expand, K};
    }
    double K = spec.max_wavenumber;
    if (K <= 0) {
        K = std::pow(env_amp / ((env_exp - 1.0) * 0.4 * abs_tol), 1.0 / (env_exp - 1.0));
        if (!std::isfinite(K)) K = std::numeric_limits<double>::infinity();
        K = std::max(K, 8.0);
    }
    const double panels_needed = K * (freq + 1.0) / special::kPi;
    if (!std::isfinite(K) || panels_needed > 0.9 * spec.max_panels)
        throw std::runtime_error(
            "pearson integral: envelope truncation cannot meet abs_tol within the panel budget "
            "(n too small or evaluation point too close to a singular radius)");
    if (envelope_tail_bound(env_amp, env_exp, K) > 0.5 * abs_tol)
        throw std::runtime_error("pearson integral: envelope tail bound exceeds abs_tol at max_wavenumber");
    return {TailMode::Truncate, K};
}

} // namespace detail

// Marginal density of one Cartesian endpoint component of an N-step unit
// walk: f(x) = (1/pi) \int_0^inf cos(kx) [J0(k)]^N dk. Even in x.
inline Value pearson_marginal(int n_steps, double x, const QuadratureSpec& spec = {}) {
    const int n = n_steps;
    if (n < 4) throw std::invalid_argument("pearson_marginal: need n_steps >= 4 (k-integrand decays too slowly)");
    x = std::fabs(x);

    const double env_amp = std::pow(2.0 / special::kPi, 0.5 * n) / special::kPi;
    const double env_exp = 0.5 * n;
    const auto plan = detail::make_plan(spec, n, x + n, 0.0, env_amp, env_exp, spec.abs_tol);
    const double K = plan.K;

    auto integrand = [&](double k) {
        return std::cos(k * x) * special::ipow(special::bessel_j0(k), n) / special::kPi;
    };
    auto direct = detail::integrate_direct(integrand, K, x + n, 0.3 * spec.abs_tol, spec.max_panels);

    double tail = 0.0, tail_err = 0.0;
    if (plan.mode == detail::TailMode::Truncate) {
        tail_err = detail::envelope_tail_bound(env_amp, env_exp, K);
    } else {
        const auto& ap = detail::amplitude_powers(n);
        const double p0 = 0.5 * n;
        cd acc = 0.0;
        for (int m = 0; m <= n; ++m) {
            const detail::Poly poly = detail::mul(ap[n - m], detail::conj(ap[m]));
            const double base_w = double(n - 2 * m);
            const cd phase = std::polar(1.0, -base_w * special::kPi / 4.0);
            const double bin = special::binomial(n, m);
            for (int s = -1; s <= 1; s += 2)
                acc += bin * phase * detail::tail_sum(poly, p0, base_w + s * x, K);
        }
        const double pref = 0.5 * env_amp * std::pow(0.5, n);
        tail = pref * acc.real();
        // dropped amplitude orders: ~ n |a_7| K^-7 relative to the envelope value
        tail_err = env_amp * std::pow(K, -env_exp) * (2.0 * n * std::pow(K, -detail::kDroppedOrder) + 1e-13);
    }
    return {direct.value + tail, direct.error + tail_err, direct.evals};
}

// Planar endpoint density of an N-step unit walk at radius R:
// P_N(R) = (1/2pi) \int_0^inf t J0(tR) [J0(t)]^N dt. Zero for R > N.
inline Value pearson_density(int n_steps, double r, const QuadratureSpec& spec = {}) {
    const int n = n_steps;
    if (n < 2) throw std::invalid_argument("pearson_density: need n_steps >= 2 (n=1 is a delta ring)");
    if (r < 0) throw std::invalid_argument("pearson_density: negative radius");
    if (r > n) return {0.0, 0.0, 0};

    const bool at_origin = (r == 0.0);
    if (at_origin && n == 4)
        throw std::runtime_error("pearson_density: logarithmic singularity at R=0 for n=4");
    if (at_origin && n < 4)
        throw std::runtime_error("pearson_density: density diverges at R=0 for n<4");

    const double env_amp = at_origin
        ? std::pow(2.0 / special::kPi, 0.5 * n) / special::kTwoPi
        : std::pow(2.0 / special::kPi, 0.5 * (n + 1)) / (special::kTwoPi * std::sqrt(r));
    const double env_exp = at_origin ? 0.5 * n - 1.0 : 0.5 * (n - 1);
    const auto plan = detail::make_plan(spec, n, r + n, at_origin ? 0.0 : r,
                                        env_amp, env_exp, spec.abs_tol);
    const double K = plan.K;

    auto integrand = [&](double t) {
        return t * special::bessel_j0(t * r) * special::ipow(special::bessel_j0(t), n) /
               special::kTwoPi;
    };
    auto direct = detail::integrate_direct(integrand, K, r + n, 0.3 * spec.abs_tol, spec.max_panels);

    double tail = 0.0, tail_err = 0.0;
    if (plan.mode == detail::TailMode::Truncate) {
        tail_err = detail::envelope_tail_bound(env_amp, env_exp, K);
    } else {
        const auto& ap = detail::amplitude_powers(n);
        cd acc = 0.0;
        if (at_origin) {
            const double p0 = 0.5 * n - 1.0;
            for (int m = 0; m <= n; ++m) {
                const detail::Poly poly = detail::mul(ap[n - m], detail::conj(ap[m]));
                const double w = double(n - 2 * m);
                const cd phase = std::polar(1.0, -w * special::kPi / 4.0);
                acc += special::binomial(n, m) * phase * detail::tail_sum(poly, p0, w, K);
            }
            tail = env_amp * std::pow(0.5, n) * acc.real();
        } else {
            const double p0 = 0.5 * (n - 1);
            detail::Poly bpol{}; // A(1/(tR)) as a polynomial in 1/t
            {
                const auto& a = detail::hankel_amplitude();
                double rpow = 1.0;
                for (int j = 0; j <= detail::kDeg; ++j) {
                    bpol[j] = a[j] * rpow;
                    rpow /= r;
                }
            }
            const detail::Poly bconj = detail::conj(bpol);
            for (int m = 0; m <= n; ++m) {
                const detail::Poly base = detail::mul(ap[n - m], detail::conj(ap[m]));
                const double base_w = double(n - 2 * m);
                const double bin = special::binomial(n, m);
                for (int s = -1; s <= 1; s += 2) {
                    const detail::Poly poly = detail::mul(base, s > 0 ? bpol : bconj);
                    const cd phase = std::polar(1.0, -(base_w + s) * special::kPi / 4.0);
                    acc += bin * phase * detail::tail_sum(poly, p0, base_w + s * r, K);
                }
            }
            tail = 0.5 * env_amp * std::pow(0.5, n) * acc.real();
        }
        tail_err = env_amp * std::pow(K, -env_exp) * (2.0 * n * std::pow(K, -detail::kDroppedOrder) + 1e-13);
    }
    return {direct.value + tail, direct.error + tail_err, direct.evals};
}

} // namespace cavpol::osc
