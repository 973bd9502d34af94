#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "ci/errors.hpp"
#include "ci/params.hpp"

namespace ci {

// Inputs of the closed-form MBCI amplitude. tau is the pi-pulse duration
// (omega0 * tau = pi); delta_tau the phase-start offset from its center;
// phi20/phi30 the rotation-induced zone phases (delta_phi0 = phi30 - 2 phi20).
struct BciAnalyticInputs {
    double delta_phi0 = 0.0;   // rad
    double omega0 = 0.0;       // rad/s
    double tau = 0.0;          // s
    double delta_tau = 0.0;    // s
    double phi = 0.0;          // scan phase (rad)
    double phi20 = 0.0;        // rad
    double phi30 = 0.0;        // rad
    double omega_b_free = 0.0; // free-propagation frequency omega_b (rad/s); global phase
    double t_between = 0.0;    // T (s)

    void validate() const {
        if (std::abs(omega0 * tau - std::numbers::pi) > 1e-12)
            throw config_error("bci analytic: omega0 * tau = pi required");
        if (std::abs(delta_tau) > 0.5 * tau + 1e-15 * tau)
            throw config_error("bci analytic: |delta_tau| <= tau/2");
    }
};

struct SensitivityInputs {
    double area_eff = 0.0;  // m^2, signed
    double area_0 = 0.0;    // m^2
    double alpha = 1.0;     // fringe amplitude, in [0, 1]
    double s0 = 0.0;        // max signal (counts)
    double m = rb87_mass;   // kg
    double hbar = hbar_si;  // J s
};

// delta_phi0 = 4 k L Omega T with T = L / vx (equivalently 2 Omega A0 m / hbar).
inline double rotational_phase(const PhysicalParams& par, double omega_rot) {
    return 4.0 * par.k * par.L * omega_rot * par.transit_time();
}

// P = (1/2)[1 - cos(delta_phi)]
inline double fringe_probability(double delta_phi) {
    return 0.5 * (1.0 - std::cos(delta_phi));
}

// Excited-state amplitude after the third zone of the modified BCI, with
// tau2 = tau/2 - delta_tau.
inline std::complex<double> mbci_amplitude(const BciAnalyticInputs& in) {
    using cd = std::complex<double>;
    in.validate();
    const cd i{0.0, 1.0};
    const double tau2 = 0.5 * in.tau - in.delta_tau;
    const double h = 0.5 * in.omega0 * tau2;
    const double s = std::sin(h), c = std::cos(h);
    const cd e_phi = std::exp(-i * in.phi);
    const cd term1 = s * c * (std::exp(-i * in.phi30) - 1.0) * (1.0 - e_phi);
    const cd term2 = c * c * std::exp(-i * in.phi20) *
                     (std::exp(-i * (in.delta_phi0 + in.phi)) - 1.0);
    const cd term3 = s * s * std::exp(-i * in.phi20) *
                     (std::exp(-i * in.delta_phi0) - e_phi);
    return 0.5 * i * std::exp(-i * in.omega_b_free * 2.0 * in.t_between) *
           (term1 + term2 + term3);
}

// Exact fringe shift of the MBCI, quadrant-correct. At delta_tau = 0 this is
// exactly 0 while the small-delta_phi0 form below tends to -pi/2; the
// non-uniform limit is a property of the expansion itself.
inline double exact_fringe_shift(double delta_phi0, double omega0, double delta_tau,
                                 double tau) {
    if (std::abs(omega0 * tau - std::numbers::pi) > 1e-12)
        throw config_error("exact_fringe_shift: omega0 * tau = pi required");
    if (std::abs(delta_tau) > 0.5 * tau + 1e-15 * tau)
        throw config_error("exact_fringe_shift: |delta_tau| <= tau/2");
    const double tau2 = 0.5 * tau - delta_tau;
    const double h = 0.5 * omega0 * tau2;
    const double s2 = std::sin(h) * std::sin(h), c2 = std::cos(h) * std::cos(h);
    const double s4 = s2 * s2, c4 = c2 * c2;
    const double sp = std::sin(omega0 * tau2);
    const double num = (s4 - c4) * std::sin(delta_phi0);
    const double den = s4 * std::cos(delta_phi0) - 0.5 * sp * sp * std::cos(2.0 * delta_phi0) +
                       c4 * std::cos(delta_phi0);
    if (std::abs(num) < 1e-300 && std::abs(den) < 1e-300)
        throw numerical_error("exact_fringe_shift: degenerate numerator and denominator");
    return std::atan2(num, den);
}

// Small-delta_phi0 limit: -atan(delta_phi0 / sin(omega0 delta_tau)); the
// limiting value -sign(delta_phi0) pi/2 at delta_tau = 0.
inline double approx_fringe_shift(double delta_phi0, double omega0, double delta_tau) {
    const double s = std::sin(omega0 * delta_tau);
    if (s == 0.0) {
        if (delta_phi0 == 0.0) return 0.0;
        return delta_phi0 > 0.0 ? -std::numbers::pi / 2 : std::numbers::pi / 2;
    }
    return -std::atan(delta_phi0 / s);
}

// alpha = cos^2(omega0 tau2) = sin^2(omega0 delta_tau)
inline double signal_amplitude_mbci(double omega0, double delta_tau) {
    const double s = std::sin(omega0 * delta_tau);
    return s * s;
}

// eta = (1/delta_phi0) atan(delta_phi0 / sin(omega0 delta_tau)); pi/(2 delta_phi0)
// at delta_tau = 0.
inline double eta_mbci(double delta_phi0, double omega0, double delta_tau) {
    if (delta_phi0 == 0.0)
        throw config_error("eta_mbci: delta_phi0 must be nonzero (limit is 1/sin(omega0 dtau))");
    const double s = std::sin(omega0 * delta_tau);
    if (s == 0.0) return std::numbers::pi / (2.0 * delta_phi0);
    return std::atan(delta_phi0 / s) / delta_phi0;
}

// Q = (sin(omega0 delta_tau)/delta_phi0) atan(delta_phi0 / sin(omega0 delta_tau));
// continuous value 0 at delta_tau = 0. Bounded by atan(u)/u <= 1.
inline double quality_factor_mbci(double delta_phi0, double omega0, double delta_tau) {
    if (delta_phi0 == 0.0) throw config_error("quality_factor_mbci: delta_phi0 must be nonzero");
    const double s = std::sin(omega0 * delta_tau);
    if (s == 0.0) return 0.0;
    return (s / delta_phi0) * std::atan(delta_phi0 / s);
}

// A0 = L^2 (2 hbar k / m) / vx. For the default Rb-87 constants at 300 m/s
// this gives 3.53e-10 m^2; the 2.7e-10 m^2 figure quoted in the literature for
// the same configuration is not reproducible from these constants, so the
// formula is authoritative here and the quoted figure is kept for reference.
inline double bci_area(const PhysicalParams& par) {
    return par.L * par.L * par.recoil_velocity() / par.vx;
}

inline constexpr double quoted_reference_area = 2.7e-10;  // m^2, as published

// Omega_mm = (hbar / 2m) pi / (|A_eff| sqrt(alpha S0)), shot-noise limited.
inline double min_measurable_rotation(const SensitivityInputs& in) {
    if (!(in.s0 > 0.0)) throw config_error("min_measurable_rotation: S0 > 0");
    if (in.area_eff == 0.0) throw config_error("min_measurable_rotation: area_eff != 0");
    if (!(in.alpha > 0.0)) throw config_error("min_measurable_rotation: alpha > 0");
    return (in.hbar / (2.0 * in.m)) * std::numbers::pi /
           (std::abs(in.area_eff) * std::sqrt(in.alpha * in.s0));
}

// Q = |A_eff / A0| sqrt(alpha)
inline double quality_factor(const SensitivityInputs& in) {
    if (!(in.area_0 > 0.0)) throw config_error("quality_factor: area_0 > 0");
    return std::abs(in.area_eff / in.area_0) * std::sqrt(in.alpha);
}

}  // namespace ci
