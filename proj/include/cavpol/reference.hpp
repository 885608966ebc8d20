#pragma once

// Brute-force reference implementations used only for cross-validation (unit
// tests, the acceptance suite, and the CLI `validate` report). Deliberately
// independent of the production code paths: the Hamiltonian is built in the
// full Pauli x Fock product basis restricted to M total excitations, and
// eigenvalues come from a dense cyclic Jacobi sweep rather than Sturm
// bisection.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cavpol::reference {

// Dense symmetric eigenvalues by cyclic Jacobi rotations. Suitable for the
// small matrices this header deals with (dimension <= a few hundred).
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-28 * n * n) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Full M-excitation sector of N two-level dipoles coupled to one photon
// mode, all angles zero, in the basis (photon number p, excited-dipole
// bitmask with popcount M-p). Energies are measured from M wx - (N/2) wx,
// the same reference as the tridiagonal route, so the diagonal vanishes.
// Returns the sorted eigenvalues of the dense matrix.
inline std::vector<double> dense_manifold_spectrum(int n_dipoles, int n_excitations,
                                                   double chi) {
    if (n_dipoles < 1 || n_dipoles > 16)
        throw std::invalid_argument("dense_manifold_spectrum: n_dipoles limited to <= 16");
    if (n_excitations < 1 || n_excitations > n_dipoles)
        throw std::invalid_argument("dense_manifold_spectrum: need 1 <= M <= N");

    struct Basis {
        int photons;
        std::uint32_t mask;
    };
    std::vector<Basis> basis;
    for (int p = 0; p <= n_excitations; ++p) {
        const int flips = n_excitations - p;
        if (flips > n_dipoles) continue;
        for (std::uint32_t mask = 0; mask < (1u << n_dipoles); ++mask) {
            if (std::popcount(mask) == flips) basis.push_back({p, mask});
        }
    }
    const int dim = int(basis.size());

    std::vector<double> h(std::size_t(dim) * dim, 0.0);
    auto index_of = [&](int photons, std::uint32_t mask) {
        for (int i = 0; i < dim; ++i)
            if (basis[i].photons == photons && basis[i].mask == mask) return i;
        return -1;
    };
    for (int i = 0; i < dim; ++i) {
        const auto& b = basis[i];
        // a^dag sigma_n^- : de-excite dipole n, create a photon
        for (int n = 0; n < n_dipoles; ++n) {
            if (!(b.mask & (1u << n))) continue;
            const int j = index_of(b.photons + 1, b.mask & ~(1u << n));
            if (j < 0) continue;
            const double amp = chi * std::sqrt(double(b.photons + 1));
            h[std::size_t(i) * dim + j] += amp;
            h[std::size_t(j) * dim + i] += amp;
        }
    }
    return jacobi_eigenvalues(std::move(h), dim);
}

} // namespace cavpol::reference
