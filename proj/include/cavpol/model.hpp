#pragma once

// Physical parameters of N planar dipoles coupled to one cavity mode, their
// dimensionless reduction, and the dipole-angle configuration type shared by
// all other modules. All types are immutable value objects after
// construction and safe to share across threads.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cavpol/special.hpp"

namespace cavpol::model {

// Reduced quantities derived from the physical inputs:
//   collective coupling  Omega  = chi sqrt(N)
//   excitation number    M      = round(s N)        (must be >= 1)
//   inverse temperature  Lambda = s beta Omega      (dimensionless)
struct DerivedParams {
    double collective_coupling = 0; // Omega
    int n_excitations = 0;          // M
    double lambda = 0;              // Lambda
    // round(s N) - s N, reported so consumers can see the integer-M mismatch
    double excitation_rounding = 0;
};

struct ModelParams {
    int n_dipoles = 0;              // N
    double single_coupling = 0;     // chi  (> 0)
    double bare_frequency = 0;      // omega_x (> 0)
    double excitation_density = 0;  // s = M/N, in (0, 1]
    double inverse_temperature = 0; // beta, hbar = 1 units

    void validate() const {
        if (n_dipoles < 1) throw std::invalid_argument("ModelParams: n_dipoles must be >= 1");
        if (!(single_coupling > 0)) throw std::invalid_argument("ModelParams: single_coupling must be > 0");
        if (!(bare_frequency > 0)) throw std::invalid_argument("ModelParams: bare_frequency must be > 0");
        if (!(excitation_density > 0) || excitation_density > 1.0)
            throw std::invalid_argument("ModelParams: excitation_density must be in (0, 1]");
        if (!(inverse_temperature > 0))
            throw std::invalid_argument("ModelParams: inverse_temperature must be > 0");
    }
};

inline DerivedParams derive(const ModelParams& p) {
    p.validate();
    DerivedParams d;
    d.collective_coupling = p.single_coupling * std::sqrt(double(p.n_dipoles));
    const double sn = p.excitation_density * p.n_dipoles;
    d.n_excitations = int(std::lround(sn));
    d.excitation_rounding = double(d.n_excitations) - sn;
    if (d.n_excitations < 1)
        throw std::invalid_argument("derive: M = round(s N) is zero; no excitations, no optomechanical force");
    d.lambda = p.excitation_density * p.inverse_temperature * d.collective_coupling;
    return d;
}

// One classical configuration of the N dipole angles, with the polymer
// coordinates it maps to: unit steps r_n = (cos 2theta_n, sin 2theta_n),
// endpoint R = sum r_n, and eta = R_x / N.
class DipoleConfig {
public:
    explicit DipoleConfig(std::vector<double> angles) : angles_(std::move(angles)) {
        if (angles_.empty()) throw std::invalid_argument("DipoleConfig: empty angle vector");
        rx_ = ry_ = 0.0;
        steps_.reserve(angles_.size());
        for (double th : angles_) {
            const double c = std::cos(2.0 * th), s = std::sin(2.0 * th);
            steps_.push_back({c, s});
            rx_ += c;
            ry_ += s;
        }
    }

    int size() const { return int(angles_.size()); }
    std::span<const double> angles() const { return angles_; }
    std::span<const std::array<double, 2>> unit_vectors() const { return steps_; }
    double endpoint_x() const { return rx_; }
    double endpoint_y() const { return ry_; }
    double endpoint_norm() const { return std::hypot(rx_, ry_); }
    double eta() const { return rx_ / double(size()); }

private:
    std::vector<double> angles_;
    std::vector<std::array<double, 2>> steps_;
    double rx_ = 0, ry_ = 0;
};

// sum_n cos^2(theta_n); equals (N + R_x)/2 identically.
inline double sum_cos_squared(const DipoleConfig& cfg) {
    double s = 0;
    for (double th : cfg.angles()) {
        const double c = std::cos(th);
        s += c * c;
    }
    return s;
}

} // namespace cavpol::model
