#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ci/interferometry.hpp"
#include "ci/params.hpp"

namespace ci {

enum class BeamKind { gaussian, bci };

// Flat key-value configuration with dotted sections; unknown keys are
// rejected. "auto" values resolve against the physical parameters at load.
struct RunConfig {
    // physical.*
    double k = rb87_wavenumber;
    double mass = rb87_mass;
    std::optional<double> omega0;           // rad/s; exclusive with omega0_t
    double omega0_t = default_omega0_t;     // dimensionless knob
    std::optional<double> delta0_diff;      // rad/s; default "recoil" = 2 hbar k^2 / m
    double delta0_common = default_delta0_common;
    double vx = default_atom_speed;
    double beam_half_length = default_beam_half_length;  // L
    double hbar = hbar_si;

    // beam.*
    BeamKind beam_kind = BeamKind::gaussian;
    int n_slices = 500;
    double window_half_width_in_l = 2.5;
    std::optional<double> scan_length_l;    // m; default "auto" = pi vx / omega0
    double delta_l_frac = 12.0 / 25.0;      // CI phase start, units of scan_length_l
    double delta_tau_frac = 0.5;            // MBCI phase start, units of tau
    PhaseTarget phase_target = PhaseTarget::from_delta_tau;
    int slices_per_zone = 16;

    // rotation.*
    double omega_rot = 0.03;                // rad/s
    std::optional<double> axis_x;           // m; default "auto" = atom entry

    // scan.*
    int n_phi = 64;
    double s0 = 1e6;
    double phi = 0.0;                       // applied phase for `simulate`

    // packet.*
    int n_momentum = 512;
    double span_hbar_k = 6.0;

    // sweep.*
    double sweep_min = -12.0 / 25.0;
    double sweep_max = 12.0 / 25.0;
    int sweep_count = 25;

    // analytic.*
    double analytic_delta_phi0 = 0.1;
    int analytic_count = 201;

    // oracle.*
    std::vector<double> oracle_ratios = {5.0, 10.0, 20.0, 50.0, 100.0};

    // sim.*
    bool force_delta_zero = false;
    int record_every = 5;

    // output.*
    std::string out_directory = "out";
    bool emit_svg = false;

    PhysicalParams to_params() const;
    CiBeamOptions to_beam_options() const;
    ScanOptions to_scan_options() const;
    RotationModel rotation_for(const PhysicalParams& par) const;

    // Canonical resolved key=value dump (also the digest input and the echo).
    std::string canonical_dump() const;
    std::string digest() const;

    void validate() const;
};

// Parses the documented key-value format; throws config_error with a line
// number on parse errors and a suggestion on unknown keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// All keys with their default values, for --print-defaults.
std::string defaults_text();

std::string fnv1a_hex(const std::string& data);

}  // namespace ci
