#pragma once

// Globally adaptive quadrature on a finite interval, built on an embedded
// Gauss-Legendre 7/15 pair. Nodes and weights are generated once at startup
// by Newton iteration on the Legendre recurrence, so no tabulated constants
// are needed. Supports vector-valued integrands (all components share the
// adapted mesh, which keeps ratios of integrals consistent).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "cavpol/special.hpp"

namespace cavpol::quad {

namespace detail {

template <int N>
struct GaussRule {
    std::array<double, N> x{}, w{};

    GaussRule() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            // Tricomi initial guess, then Newton on P_N.
            double z = std::cos(special::kPi * (i + 0.75) / (N + 0.5));
            double pp = 0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < N; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = N * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::fabs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[N - 1 - i] = z;
            w[i] = w[N - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }
};

inline const GaussRule<7>& g7() { static const GaussRule<7> r; return r; }
inline const GaussRule<15>& g15() { static const GaussRule<15> r; return r; }

} // namespace detail

template <std::size_t K>
struct VecResult {
    std::array<double, K> value{};
    std::array<double, K> error{};
    long evaluations = 0;
    bool converged = false;
};

// Integrate f : double -> array<double, K> over [a, b].
//
// initial_splits: interior break points seeding the first mesh (used to make
// sure sharply peaked integrands are seen by the rule before refinement).
template <std::size_t K, class F>
VecResult<K> integrate_vec(F&& f, double a, double b,
                           double rel_tol, double abs_tol,
                           std::span<const double> initial_splits = {},
                           int max_intervals = 20000) {
    struct Interval {
        double a, b;
        std::array<double, K> val, err;
        double maxerr;
        long id;
    };
    struct Worse {
        bool operator()(const Interval& p, const Interval& q) const {
            if (p.maxerr != q.maxerr) return p.maxerr < q.maxerr;
            return p.id > q.id; // deterministic tie-break
        }
    };

    long evals = 0;
    long next_id = 0;
    auto rule = [&](double lo, double hi) {
        Interval iv{lo, hi, {}, {}, 0.0, next_id++};
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        std::array<double, K> s7{};
        const auto& r7 = detail::g7();
        const auto& r15 = detail::g15();
        for (int i = 0; i < 7; ++i) {
            const auto fv = f(c + h * r7.x[i]);
            for (std::size_t k = 0; k < K; ++k) s7[k] += r7.w[i] * fv[k];
        }
        std::array<double, K> s15{};
        std::array<std::array<double, K>, 15> fv15;
        for (int i = 0; i < 15; ++i) {
            fv15[i] = f(c + h * r15.x[i]);
            for (std::size_t k = 0; k < K; ++k) s15[k] += r15.w[i] * fv15[i][k];
        }
        evals += 22;
        for (std::size_t k = 0; k < K; ++k) {
            iv.val[k] = h * s15[k];
            const double raw = std::fabs(h * (s15[k] - s7[k]));
            // L1 deviation of f from its mean on the panel; with it the raw
            // 7/15 difference is rescaled the way QUADPACK does, which stays
            // honest on singular integrands while collapsing once the pair
            // agrees on smooth ones.
            double resasc = 0;
            const double mean = 0.5 * s15[k];
            for (int i = 0; i < 15; ++i) resasc += r15.w[i] * std::fabs(fv15[i][k] - mean);
            resasc *= std::fabs(h);
            double err = raw;
            if (resasc != 0.0 && raw != 0.0)
                err = resasc * std::min(1.0, std::pow(200.0 * raw / resasc, 1.5));
            iv.err[k] = err;
            iv.maxerr = std::max(iv.maxerr, iv.err[k]);
        }
        return iv;
    };

    std::vector<double> edges;
    edges.push_back(a);
    for (double s : initial_splits)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<Interval, std::vector<Interval>, Worse> heap;
    std::array<double, K> total{}, toterr{};
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto iv = rule(edges[i], edges[i + 1]);
        for (std::size_t k = 0; k < K; ++k) {
            total[k] += iv.val[k];
            toterr[k] += iv.err[k];
        }
        heap.push(std::move(iv));
    }

    auto good_enough = [&]() {
        for (std::size_t k = 0; k < K; ++k)
            if (toterr[k] > std::max(abs_tol, rel_tol * std::fabs(total[k]))) return false;
        return true;
    };

    while (!good_enough() && int(heap.size()) < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) { // interval at rounding limit
            heap.push(worst);
            break;
        }
        auto left = rule(worst.a, mid);
        auto right = rule(mid, worst.b);
        for (std::size_t k = 0; k < K; ++k) {
            total[k] += left.val[k] + right.val[k] - worst.val[k];
            toterr[k] += left.err[k] + right.err[k] - worst.err[k];
        }
        heap.push(std::move(left));
        heap.push(std::move(right));
    }

    VecResult<K> res;
    res.value = total;
    res.error = toterr;
    res.evaluations = evals;
    res.converged = good_enough();
    return res;
}

struct Result {
    double value = 0;
    double error = 0;
    long evaluations = 0;
    bool converged = false;
};

template <class F>
Result integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 0.0, std::span<const double> initial_splits = {},
                 int max_intervals = 20000) {
    auto wrap = [&](double x) { return std::array<double, 1>{f(x)}; };
    auto r = integrate_vec<1>(wrap, a, b, rel_tol, abs_tol, initial_splits, max_intervals);
    return {r.value[0], r.error[0], r.evaluations, r.converged};
}

} // namespace cavpol::quad
