#pragma once

// Exact diagonalization in the M-excitation manifold for the homogeneous,
// fully aligned configuration. Total excitation number is conserved under
// the RWA, and for identical couplings the lowest state lives in the
// maximal-spin (symmetric Dicke) sector, so the problem reduces to an
// (M+1)-dimensional real symmetric tridiagonal matrix in the basis
// |k photons, M-k collective excitations>:
//
//   diagonal      0                     (after subtracting M wx - (N/2) wx)
//   off-diagonal  chi sqrt(k+1) sqrt((M-k)(N-M+k+1)),  k = 0..M-1
//
// Only the extreme eigenvalues are needed, so they are found by bisection
// with Sturm counts; the ground vector comes from shifted inverse iteration.
// The zero diagonal makes the matrix bipartite: the spectrum is symmetric
// about zero and the ground vector alternates in sign (it is the
// Perron-Frobenius vector after flipping the sign of every other basis
// state).

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavpol::saturation {

struct SaturationProblem {
    int n_dipoles = 0;           // N
    int n_excitations = 0;       // M
    std::vector<double> offdiag; // M entries, entry k couples basis states k and k+1
};

inline SaturationProblem build_manifold(int n_dipoles, int n_excitations, double chi) {
    if (n_excitations < 1 || n_excitations > n_dipoles)
        throw std::invalid_argument("build_manifold: need 1 <= M <= N (collective spin holds at most N excitations)");
    if (!(chi > 0)) throw std::invalid_argument("build_manifold: chi must be > 0");
    SaturationProblem p;
    p.n_dipoles = n_dipoles;
    p.n_excitations = n_excitations;
    p.offdiag.resize(n_excitations);
    for (int k = 0; k < n_excitations; ++k) {
        const double photon = std::sqrt(double(k + 1));
        const double spin = std::sqrt(double(n_excitations - k) * double(n_dipoles - n_excitations + k + 1));
        p.offdiag[k] = chi * photon * spin;
    }
    return p;
}

namespace detail {

// Number of eigenvalues of the zero-diagonal tridiagonal matrix that are
// strictly below x (Sturm count via the LDL^T pivot sequence; an exactly
// vanishing pivot is nudged negative per the usual convention).
inline int sturm_count(std::span<const double> offdiag, double x) {
    int count = 0;
    double d = -x;
    if (d == 0.0) d = -1e-300;
    if (d < 0) ++count;
    for (double b : offdiag) {
        d = -x - b * b / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0) ++count;
    }
    return count;
}

inline double gershgorin_bound(std::span<const double> offdiag) {
    const std::size_t n = offdiag.size() + 1;
    double bound = 0;
    for (std::size_t row = 0; row < n; ++row) {
        double r = 0;
        if (row > 0) r += std::fabs(offdiag[row - 1]);
        if (row < n - 1) r += std::fabs(offdiag[row]);
        bound = std::max(bound, r);
    }
    return bound;
}

// Bisect for the k-th smallest eigenvalue (k = 0 is the ground state).
inline double tridiag_eigenvalue(std::span<const double> offdiag, int k) {
    const int n = int(offdiag.size()) + 1;
    if (k < 0 || k >= n) throw std::invalid_argument("tridiag_eigenvalue: index out of range");
    const double bound = gershgorin_bound(offdiag);
    double lo = -bound - 1e-12, hi = bound + 1e-12;
    for (int it = 0; it < 220; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (sturm_count(offdiag, mid) > k ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

inline double min_eigenvalue(const SaturationProblem& p) {
    return detail::tridiag_eigenvalue(p.offdiag, 0);
}

inline double max_eigenvalue(const SaturationProblem& p) {
    return detail::tridiag_eigenvalue(p.offdiag, p.n_excitations);
}

// Ground-state eigenvector by inverse iteration with a shift just below the
// smallest eigenvalue (T - sigma I is then positive definite, so the LDL^T
// solve needs no pivoting). Normalized to unit length.
inline std::vector<double> ground_vector(const SaturationProblem& p) {
    const int n = p.n_excitations + 1;
    const double lmin = min_eigenvalue(p);
    const double shift = lmin - std::max(1e-10 * detail::gershgorin_bound(p.offdiag), 1e-14);

    std::vector<double> diag(n, -shift);
    std::vector<double> d(n), l(n - 1);
    auto factorize = [&] {
        d[0] = diag[0];
        for (int i = 1; i < n; ++i) {
            l[i - 1] = p.offdiag[i - 1] / d[i - 1];
            d[i] = diag[i] - l[i - 1] * p.offdiag[i - 1];
        }
    };
    factorize();
    std::vector<double> v(n, 1.0 / std::sqrt(double(n)));
    for (int iter = 0; iter < 3; ++iter) {
        // solve (T - shift) y = v in place
        for (int i = 1; i < n; ++i) v[i] -= l[i - 1] * v[i - 1];
        for (int i = 0; i < n; ++i) v[i] /= d[i];
        for (int i = n - 2; i >= 0; --i) v[i] -= l[i] * v[i + 1];
        double norm = 0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    if (v[0] < 0)
        for (double& x : v) x = -x;
    return v;
}

struct SaturationResult {
    double s = 0;         // excitation density M/N
    double shift_sat = 0; // (omega_-^sat - omega_x)/Omega = lambda_min/(M Omega)
};

// Saturated lower-polariton shift. chi scales out of lambda_min/(M chi
// sqrt(N)), so the solve runs at chi = 1.
inline SaturationResult saturated_lp_energy(int n_dipoles, int n_excitations) {
    const auto p = build_manifold(n_dipoles, n_excitations, 1.0);
    const double lmin = min_eigenvalue(p);
    SaturationResult r;
    r.s = double(n_excitations) / double(n_dipoles);
    r.shift_sat = lmin / (double(n_excitations) * std::sqrt(double(n_dipoles)));
    return r;
}

inline std::vector<SaturationResult> sweep_saturation(int n_dipoles,
                                                      std::span<const double> s_grid) {
    std::vector<SaturationResult> out;
    out.reserve(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        const int m = int(std::lround(s_grid[i] * n_dipoles));
        if (m < 1 || m > n_dipoles)
            throw std::invalid_argument("sweep_saturation: grid index " + std::to_string(i) +
                                        ": round(s N) outside [1, N]");
        out.push_back(saturated_lp_energy(n_dipoles, m));
    }
    return out;
}

} // namespace cavpol::saturation
