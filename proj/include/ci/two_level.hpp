#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "ci/errors.hpp"
#include "ci/params.hpp"

namespace ci {

using complexd = std::complex<double>;

// Interaction-picture amplitudes of one momentum manifold after adiabatic
// elimination of the excited state: alpha on |p, a>, beta on |p + 2 hbar k, b>.
struct ManifoldAmplitudes {
    complexd alpha{1.0, 0.0};
    complexd beta{0.0, 0.0};
    double p = 0.0;  // manifold base momentum (kg m/s)

    double norm_sq() const { return std::norm(alpha) + std::norm(beta); }
};

// Effective two-level Hamiltonian divided by hbar, for one manifold:
//
//   H/hbar = [ Delta/2 + Om/2     (Om/2) e^{-i phi} ]
//            [ (Om/2) e^{+i phi}  -Delta/2 + Om/2   ]
//
// phi is the total two-photon coupling phase (applied mask + rotation-induced).
// The common AC-Stark term Om/2 on the diagonal is a global phase within a
// manifold but is retained verbatim.
inline Eigen::Matrix2cd effective_hamiltonian(double omega_eff, double big_delta,
                                              double coupling_phase) {
    if (!(omega_eff >= 0.0)) throw config_error("effective_hamiltonian: omega_eff >= 0");
    const double d = 0.5 * big_delta;
    const double b = 0.5 * omega_eff;
    const complexd off = b * std::exp(complexd(0.0, -coupling_phase));
    Eigen::Matrix2cd h;
    h << complexd(d + b, 0.0), off,
         std::conj(off), complexd(-d + b, 0.0);
    return h;
}

// Exact propagator exp(-i H dt / hbar) for the piecewise-constant Hamiltonian
// above (generalized Rabi solution). Unitary up to rounding.
inline Eigen::Matrix2cd two_level_propagator(double omega_eff, double big_delta,
                                             double coupling_phase, double dt) {
    const double d = 0.5 * big_delta;
    const double b = 0.5 * omega_eff;
    const double w = std::hypot(d, b);   // generalized Rabi half-frequency
    const double th = w * dt;
    // sin(w dt)/w, stable as w -> 0
    const double snc = (th > 1e-6) ? std::sin(th) / w : dt * (1.0 - th * th / 6.0);
    const double cs = std::cos(th);
    const complexd global = std::exp(complexd(0.0, -0.5 * omega_eff * dt));  // AC-Stark phase
    const complexd mask = std::exp(complexd(0.0, -coupling_phase));
    Eigen::Matrix2cd u;
    u << global * complexd(cs, -snc * d), global * complexd(0.0, -snc * b) * mask,
         global * complexd(0.0, -snc * b) / mask, global * complexd(cs, snc * d);
    return u;
}

inline ManifoldAmplitudes step_manifold(const ManifoldAmplitudes& s, double omega_eff,
                                        double big_delta, double coupling_phase, double dt) {
    const Eigen::Matrix2cd u = two_level_propagator(omega_eff, big_delta, coupling_phase, dt);
    ManifoldAmplitudes out = s;
    out.alpha = u(0, 0) * s.alpha + u(0, 1) * s.beta;
    out.beta = u(1, 0) * s.alpha + u(1, 1) * s.beta;
    return out;
}

// Eliminated excited-state amplitude xi = (Omega1 alpha + Omega2 beta) / (2 delta),
// the steady value used to check the adiabatic approximation for consistency.
inline complexd adiabatic_excited_estimate(const ManifoldAmplitudes& s, double omega1,
                                           double omega2, double small_delta) {
    if (small_delta == 0.0)
        throw config_error("adiabatic_excited_estimate: small_delta must be nonzero");
    return (omega1 * s.alpha + omega2 * s.beta) / (2.0 * small_delta);
}

// Lab-frame kinetic phase common to both amplitudes of manifold p, applied at
// reconstruction time: -(p^2 + (p + 2 hbar k)^2) t / (4 m hbar).
inline double kinetic_phase(const PhysicalParams& par, double p, double t) {
    const double q = p + 2.0 * par.hbar * par.k;
    return -(p * p + q * q) * t / (4.0 * par.m * par.hbar);
}

}  // namespace ci
