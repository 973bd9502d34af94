#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ci/params.hpp"

namespace ci {

// Full three-level manifold amplitudes before adiabatic elimination:
// alpha on |p, a> (state |1>), beta on |p + 2 hbar k, b> (|3>),
// xi on |p + hbar k, e> (|2>).
struct ThreeLevelAmplitudes {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};
    std::complex<double> xi{0.0, 0.0};
    double p = 0.0;

    double norm_sq() const {
        return std::norm(alpha) + std::norm(beta) + std::norm(xi);
    }
};

// Integrates the three-level equations of motion over dt with constant
// coefficients (fixed-step classical RK4, substepped internally):
//
//   i alpha' =  (Delta/2) alpha + (Omega1/2) xi
//   i beta'  = -(Delta/2) beta  + (Omega2/2) xi
//   i xi'    = -delta xi + (Omega1/2) alpha + (Omega2/2) beta
//
// step_factor bounds h <= step_factor / max(delta, Omega1, Omega2, |Delta|).
ThreeLevelAmplitudes step_three_level(const ThreeLevelAmplitudes& state, double omega1,
                                      double omega2, double big_delta, double small_delta,
                                      double dt, double step_factor = 0.01);

}  // namespace ci
