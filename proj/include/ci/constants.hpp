#pragma once

#include <string_view>

namespace ci {

inline constexpr std::string_view version = "0.1.0";

// Physical constants (SI)
inline constexpr double hbar_si = 1.054571817e-34;  // J s (CODATA 2018)

// Rb-87, D2 line at 780 nm
inline constexpr double rb87_mass = 1.44316060e-25;    // kg
inline constexpr double rb87_wavenumber = 8.0556e6;    // 1/m

// Default beam geometry
inline constexpr double default_beam_half_length = 3e-3;  // L, 1/e half-length of the Raman Rabi profile (m)
inline constexpr double default_atom_speed = 300.0;       // v_x (m/s)
inline constexpr double default_omega0_t = 3.3;           // dimensionless pulse-strength knob Omega0 * (L/v_x)
inline constexpr double default_delta0_common = 1e9;      // common (one-photon) detuning delta0 (rad/s)

}  // namespace ci
