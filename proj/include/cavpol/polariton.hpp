#pragma once

// Closed-form polariton frequencies of the coupled dipole-cavity system for
// a frozen angle configuration, plus the limiting normalized shifts of the
// lower branch. Pure functions, thread-safe.

#include <cmath>

#include "cavpol/model.hpp"
#include "cavpol/special.hpp"

namespace cavpol::polariton {

struct PolaritonPair {
    double lower = 0; // omega_-
    double upper = 0; // omega_+
};

// omega_± = omega_x ± chi sqrt(sum_n cos^2 theta_n). The RWA splitting is
// symmetric about the bare frequency; zero net coupling degenerates both
// branches to omega_x.
inline PolaritonPair polariton_frequencies(const model::DipoleConfig& cfg,
                                           const model::ModelParams& p) {
    p.validate();
    const double coupling = p.single_coupling * std::sqrt(model::sum_cos_squared(cfg));
    return {p.bare_frequency - coupling, p.bare_frequency + coupling};
}

// Normalized lower-polariton shifts (omega_- - omega_x)/Omega in the three
// reference configurations: fully aligned dipoles, planar isotropic
// distribution, and the solid-angle isotropic average.
struct LimitShifts {
    double aligned = -1.0;
    double isotropic_2d = -special::kInvSqrt2;
    double isotropic_3d = -special::kInvSqrt3;
};

inline constexpr LimitShifts limit_shifts() { return {}; }

} // namespace cavpol::polariton
