#pragma once

// Metropolis sampling oracle over the N dipole angles. The chain targets the
// classical angular Boltzmann weight
//
//   pi(theta) ∝ exp[ Lambda sqrt(N) sqrt(S) ],   S = sum_n cos^2 theta_n,
//
// and estimates the same observable as the quadrature routes,
// w = -<sqrt(S/N)>. Entirely independent of the polymer/quadrature code
// path, which is the point: it adjudicates both kernels at finite N.
//
// One sweep = N single-angle Metropolis updates with uniform proposals of a
// width tuned to ~50% acceptance during burn-in and frozen afterwards
// (tuning during measurement would break detailed balance). S is updated
// incrementally and recomputed from scratch every 10^3 sweeps to keep
// floating-point drift below 1e-9.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavpol/rng.hpp"
#include "cavpol/special.hpp"

namespace cavpol::mc {

struct McConfig {
    int n_dipoles = 0;
    double lambda = 0;
    long sweeps = 0;        // measurement sweeps after burn-in
    long burn_in = 0;
    double proposal_width = 1.0; // radians, in (0, pi]
    std::uint64_t seed = 1;
    long thinning = 1;      // record every k-th sweep
    bool tune_proposal = true;

    void validate() const {
        if (n_dipoles < 1) throw std::invalid_argument("McConfig: n_dipoles must be >= 1");
        if (!(lambda >= 0)) throw std::invalid_argument("McConfig: lambda must be >= 0");
        if (burn_in < 0 || sweeps <= burn_in)
            throw std::invalid_argument("McConfig: need sweeps > burn_in >= 0");
        if (!(proposal_width > 0) || proposal_width > special::kPi)
            throw std::invalid_argument("McConfig: proposal_width must be in (0, pi]");
        if (thinning < 1) throw std::invalid_argument("McConfig: thinning must be >= 1");
    }
};

struct McEstimate {
    double shift_mean = 0;     // estimate of w
    double stderr_mean = 0;    // batch-means standard error
    double acceptance_rate = 0;
    double tau_int = 0.5;      // integrated autocorrelation time (sweeps)
    long samples = 0;
    double proposal_width = 0; // frozen width actually used
};

// Log acceptance ratio of a single-angle move changing S -> S_new:
// exp[Lambda sqrt(N) (sqrt(S_new) - sqrt(S_old))], clamped at 1 by the
// Metropolis rule.
inline double metropolis_log_ratio(double s_old, double s_new, double lambda, int n_dipoles) {
    return lambda * std::sqrt(double(n_dipoles)) * (std::sqrt(s_new) - std::sqrt(s_old));
}

// Batch-means error analysis. Returns (mean, stderr, tau_int). tau_int is
// clamped below at 0.5 (the i.i.d. value with the convention
// var(mean) = (2 tau_int / n) var(x)).
struct ErrorEstimate {
    double mean = 0;
    double stderr_mean = 0;
    double tau_int = 0.5;
};

inline ErrorEstimate estimate_error(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 100) throw std::invalid_argument("estimate_error: need at least 100 samples");
    double mean = 0;
    for (double v : series) mean += v;
    mean /= double(n);
    double var = 0;
    for (double v : series) var += (v - mean) * (v - mean);
    var /= double(n - 1);

    const std::size_t batch_len = std::max<std::size_t>(50, n / 100);
    const std::size_t n_batches = n / batch_len;
    double bvar = 0;
    for (std::size_t b = 0; b < n_batches; ++b) {
        double bm = 0;
        for (std::size_t i = b * batch_len; i < (b + 1) * batch_len; ++i) bm += series[i];
        bm /= double(batch_len);
        bvar += (bm - mean) * (bm - mean);
    }
    bvar /= double(n_batches > 1 ? n_batches - 1 : 1);

    ErrorEstimate e;
    e.mean = mean;
    const double var_of_mean = bvar / double(n_batches);
    e.stderr_mean = std::sqrt(var_of_mean);
    e.tau_int = var > 0 ? std::max(0.5, 0.5 * double(n) * var_of_mean / var) : 0.5;
    return e;
}

class McDiagnosticsError : public std::runtime_error {
public:
    McDiagnosticsError(const std::string& what, McEstimate est)
        : std::runtime_error(what), estimate(est) {}
    McEstimate estimate;
};

// Observer (optional) sees the angle configuration at every recorded sweep;
// used by diagnostics and the distribution-symmetry tests.
using AngleObserver = std::function<void(std::span<const double>)>;

inline McEstimate run_chain(const McConfig& cfg, const AngleObserver& observer = {}) {
    cfg.validate();
    const int n = cfg.n_dipoles;
    rng::Stream stream(cfg.seed, 0x6d6331u); // stream id: "mc1"

    std::vector<double> theta(n);
    for (auto& t : theta) t = special::kTwoPi * stream.uniform();
    double s_sum = 0;
    for (double t : theta) s_sum += std::cos(t) * std::cos(t);

    double width = cfg.proposal_width;
    long accepted = 0, proposed = 0;
    std::vector<double> samples;
    samples.reserve(std::size_t((cfg.sweeps - cfg.burn_in) / cfg.thinning + 1));

    const double coupling = cfg.lambda * std::sqrt(double(n));
    long tune_accepted = 0, tune_proposed = 0;

    for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
        for (int i = 0; i < n; ++i) {
            const int site = int(stream.uniform() * n) % n;
            const double old_theta = theta[site];
            double new_theta = old_theta + width * stream.symmetric();
            new_theta = std::fmod(new_theta, special::kTwoPi);
            if (new_theta < 0) new_theta += special::kTwoPi;
            const double c_old = std::cos(old_theta), c_new = std::cos(new_theta);
            const double s_new = s_sum - c_old * c_old + c_new * c_new;
            const double log_ratio = coupling * (std::sqrt(std::max(0.0, s_new)) - std::sqrt(std::max(0.0, s_sum)));
            bool accept = log_ratio >= 0;
            if (!accept) accept = stream.uniform() < std::exp(log_ratio);
            if (accept) {
                theta[site] = new_theta;
                s_sum = s_new;
            }
            if (sweep < cfg.burn_in) {
                tune_proposed++;
                tune_accepted += accept;
            } else {
                proposed++;
                accepted += accept;
            }
        }
        if (cfg.tune_proposal && sweep < cfg.burn_in && (sweep + 1) % 100 == 0 && tune_proposed > 0) {
            const double rate = double(tune_accepted) / double(tune_proposed);
            width = std::clamp(width * std::exp(rate - 0.5), 1e-3, special::kPi);
            tune_accepted = tune_proposed = 0;
        }
        if ((sweep + 1) % 1000 == 0) {
            s_sum = 0;
            for (double t : theta) s_sum += std::cos(t) * std::cos(t);
        }
        if (sweep >= cfg.burn_in && (sweep - cfg.burn_in) % cfg.thinning == 0) {
            samples.push_back(-std::sqrt(std::max(0.0, s_sum) / double(n)));
            if (observer) observer(theta);
        }
    }

    const auto err = estimate_error(samples);
    McEstimate est;
    est.shift_mean = err.mean;
    est.stderr_mean = err.stderr_mean;
    est.tau_int = err.tau_int;
    est.acceptance_rate = proposed > 0 ? double(accepted) / double(proposed) : 0.0;
    est.samples = long(samples.size());
    est.proposal_width = width;

    // Diagnostics. Low acceptance always signals a stuck chain. High
    // acceptance signals barely-moving proposals only when the frozen width
    // is itself small; with (near-)maximal width the proposals are global
    // and high acceptance just means an easy target (e.g. any lambda ~ 0).
    if (est.acceptance_rate < 0.1 ||
        (est.acceptance_rate > 0.9 && est.proposal_width < 0.5 * special::kPi))
        throw McDiagnosticsError("run_chain: acceptance rate " + std::to_string(est.acceptance_rate) +
                                     " outside [0.1, 0.9] at proposal width " +
                                     std::to_string(est.proposal_width) + "; estimate unreliable",
                                 est);
    if (est.tau_int > double(cfg.sweeps - cfg.burn_in) / 100.0)
        throw McDiagnosticsError("run_chain: tau_int " + std::to_string(est.tau_int) +
                                     " exceeds sweeps/100; estimate unreliable",
                                 est);
    return est;
}

// Inverse-variance merge of independent chains (associative, order-free up
// to floating-point commutativity; callers pass chains in index order).
inline McEstimate merge_chains(std::span<const McEstimate> chains) {
    if (chains.empty()) throw std::invalid_argument("merge_chains: no chains");
    double wsum = 0, mean = 0, acc = 0, tau = 0;
    long samples = 0;
    for (const auto& c : chains) {
        const double w = 1.0 / (c.stderr_mean * c.stderr_mean);
        wsum += w;
        mean += w * c.shift_mean;
        acc += c.acceptance_rate;
        tau = std::max(tau, c.tau_int);
        samples += c.samples;
    }
    McEstimate out;
    out.shift_mean = mean / wsum;
    out.stderr_mean = std::sqrt(1.0 / wsum);
    out.acceptance_rate = acc / double(chains.size());
    out.tau_int = tau;
    out.samples = samples;
    out.proposal_width = chains.front().proposal_width;
    return out;
}

} // namespace cavpol::mc
