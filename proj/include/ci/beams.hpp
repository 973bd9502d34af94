#pragma once

#include <vector>

#include "ci/params.hpp"

namespace ci {

struct BeamSlice {
    double x_center = 0.0;       // m
    double width = 0.0;          // m
    double omega_eff = 0.0;      // rad/s
    double applied_phase = 0.0;  // rad, the scanned mask phase (beyond delta_l)
};

// Sliced Rabi-frequency profile plus the applied phase mask. Slices tile the
// window contiguously in increasing x.
struct BeamSchedule {
    std::vector<BeamSlice> slices;
    double x_min = 0.0;
    double x_max = 0.0;

    void validate() const;  // tiling, omega_eff >= 0
};

// Rigid rotation of the whole beam assembly at omega_rot about the vertical
// axis through x = axis_x. entry_x is where the atom sits at t = 0.
struct RotationModel {
    double omega_rot = 0.0;  // rad/s
    double axis_x = 0.0;     // m
    double entry_x = 0.0;    // m
};

// Three-zone pi/2 - pi - pi/2 geometry. Zone centers sit at entry + {0, L, 2L}
// so the inter-zone flight time is T = L / vx as in the rotational-phase
// derivation. Pulse areas zone_rabi * duration = pi/2, pi, pi/2.
struct BciGeometry {
    double zone_separation = 0.0;  // L, center-to-center (m)
    double zone_rabi = 0.0;        // top-hat Rabi frequency inside the zones (rad/s)
    double t_half_pi = 0.0;        // pi/2 pulse duration (s)
    double t_pi = 0.0;             // pi pulse duration (s)
    double delta_tau = 0.0;        // phase-start offset from the pi-pulse center (s)
    int slices_per_zone = 16;

    double tau() const { return t_pi; }

    void validate() const;

    static BciGeometry from_params(const PhysicalParams& par, double delta_tau = 0.0,
                                   int slices_per_zone = 16);
};

enum class PhaseTarget {
    last_zone,       // original BCI: phase on the third zone only
    from_delta_tau,  // MBCI: phase from delta_tau into the pi pulse onward
};

// Gaussian profile Omega(x) = omega0 exp(-(x/L)^2) sampled at slice centers over
// [-window_half_width, +window_half_width]; applied_phase = phi for slices with
// x_center >= delta_l.
BeamSchedule gaussian_schedule(const PhysicalParams& par, int n_slices,
                               double window_half_width, double delta_l, double phi);

BeamSchedule bci_schedule(const PhysicalParams& par, const BciGeometry& geom, double phi,
                          PhaseTarget target);

// Rotation-induced two-photon laser phase seen by the atom at x:
// 2 k * dy(x) with dy(x) = (x - axis_x) * omega_rot * (x - entry_x) / vx.
double rotation_phase_at(const RotationModel& model, const PhysicalParams& par, double x);

// applied_phase(slice) + rotation_phase_at(slice center); the coupling_phase
// input of the effective Hamiltonian.
double total_coupling_phase(const BeamSchedule& schedule, const RotationModel& model,
                            const PhysicalParams& par, std::size_t slice_index);

}  // namespace ci
