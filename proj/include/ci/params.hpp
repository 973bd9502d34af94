#pragma once

#include <cmath>

#include "ci/constants.hpp"
#include "ci/errors.hpp"

namespace ci {

// Atom/laser constants governing every equation of motion.
//
// L is the 1/e half-length of the Raman Rabi profile Omega(x) = omega0 * exp(-(x/L)^2)
// (Omega_eff is proportional to laser intensity for a two-photon transition).
// The transit time T = L / vx is derived, never stored.
struct PhysicalParams {
    double k = rb87_wavenumber;        // laser wavenumber (1/m)
    double m = rb87_mass;              // atomic mass (kg)
    double omega0 = default_omega0_t * default_atom_speed / default_beam_half_length;
                                       // peak Raman Rabi frequency (rad/s)
    double delta0_diff = 2.0 * hbar_si * rb87_wavenumber * rb87_wavenumber / rb87_mass;
                                       // two-photon detuning offset Delta0 (rad/s);
                                       // default compensates the recoil shift so the
                                       // p = 0 manifold is resonant
    double delta0_common = default_delta0_common;  // common detuning delta0 (rad/s)
    double vx = default_atom_speed;    // longitudinal atom speed (m/s)
    double L = default_beam_half_length;  // beam 1/e half-length (m)
    double hbar = hbar_si;             // reduced Planck constant (J s)

    double transit_time() const { return L / vx; }          // T = L / vx
    double recoil_velocity() const { return 2.0 * hbar * k / m; }
    double recoil_shift() const { return 2.0 * hbar * k * k / m; }  // 2 hbar k^2 / m (rad/s)

    void validate() const {
        if (!(k > 0.0)) throw config_error("physical invariant violated: k > 0");
        if (!(m > 0.0)) throw config_error("physical invariant violated: m > 0");
        if (!(omega0 >= 0.0)) throw config_error("physical invariant violated: omega0 >= 0");
        if (!(vx > 0.0)) throw config_error("physical invariant violated: vx > 0");
        if (!(L > 0.0)) throw config_error("physical invariant violated: L > 0");
        if (!(hbar > 0.0)) throw config_error("physical invariant violated: hbar > 0");
    }
};

// Pin the dimensionless pulse strength Omega0*T by rescaling omega0 at fixed L, vx.
inline PhysicalParams with_omega0_t(PhysicalParams p, double omega0_t) {
    if (!(omega0_t >= 0.0)) throw config_error("physical invariant violated: omega0_t >= 0");
    p.omega0 = omega0_t / p.transit_time();
    return p;
}

struct Detunings {
    double big_delta = 0.0;    // difference detuning Delta (rad/s)
    double small_delta = 0.0;  // common detuning delta (rad/s)
};

// Delta = Delta0 - 2 k p / m - 2 hbar k^2 / m for the manifold with base momentum p.
inline double detuning_difference(const PhysicalParams& par, double p) {
    return par.delta0_diff - 2.0 * par.k * p / par.m - 2.0 * par.hbar * par.k * par.k / par.m;
}

// delta = delta0 + hbar k^2 / 2m.
inline double detuning_common(const PhysicalParams& par) {
    return par.delta0_common + par.hbar * par.k * par.k / (2.0 * par.m);
}

inline Detunings detunings_for(const PhysicalParams& par, double p) {
    return {detuning_difference(par, p), detuning_common(par)};
}

}  // namespace ci
