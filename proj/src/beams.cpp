#include "ci/beams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ci {

namespace {

constexpr double pi = std::numbers::pi;

// Guard against the mask boundary landing exactly on a slice center.
double mask_eps(double span) { return 1e-12 * span; }

void append_uniform(std::vector<BeamSlice>& out, double x0, double x1, int n, double omega,
                    double phase) {
    const double w = (x1 - x0) / n;
    for (int i = 0; i < n; ++i)
        out.push_back({x0 + (i + 0.5) * w, w, omega, phase});
}

}  // namespace

void BeamSchedule::validate() const {
    if (slices.empty()) throw config_error("beam schedule has no slices");
    double edge = x_min;
    const double tol = 1e-9 * (x_max - x_min);
    for (const auto& s : slices) {
        if (!(s.omega_eff >= 0.0)) throw config_error("beam invariant violated: omega_eff >= 0");
        if (std::abs((s.x_center - 0.5 * s.width) - edge) > tol)
            throw config_error("beam slices do not tile the window contiguously");
        edge = s.x_center + 0.5 * s.width;
    }
    if (std::abs(edge - x_max) > tol)
        throw config_error("beam slices do not reach the window edge");
}

BeamSchedule gaussian_schedule(const PhysicalParams& par, int n_slices,
                               double window_half_width, double delta_l, double phi) {
    if (n_slices < 3) throw config_error("gaussian_schedule: n_slices >= 3");
    if (!(window_half_width > 0.0))
        throw config_error("gaussian_schedule: window_half_width > 0");
    if (delta_l < -window_half_width || delta_l > window_half_width)
        throw config_error("gaussian_schedule: delta_l outside the beam window");

    BeamSchedule sch;
    sch.x_min = -window_half_width;
    sch.x_max = window_half_width;
    sch.slices.reserve(n_slices);
    const double w = 2.0 * window_half_width / n_slices;
    const double eps = mask_eps(window_half_width);
    for (int i = 0; i < n_slices; ++i) {
        const double xc = -window_half_width + (i + 0.5) * w;
        const double u = xc / par.L;
        const double omega = par.omega0 * std::exp(-u * u);
        const double phase = (xc >= delta_l - eps) ? phi : 0.0;
        sch.slices.push_back({xc, w, omega, phase});
    }
    return sch;
}

void BciGeometry::validate() const {
    if (!(zone_rabi > 0.0)) throw config_error("bci geometry: zone_rabi > 0");
    if (!(zone_separation > 0.0)) throw config_error("bci geometry: zone_separation > 0");
    if (std::abs(zone_rabi * t_half_pi - pi / 2) > 1e-12 ||
        std::abs(zone_rabi * t_pi - pi) > 1e-12)
        throw config_error("bci geometry: pulse areas must be pi/2, pi, pi/2");
    if (std::abs(delta_tau) > 0.5 * t_pi + 1e-15 * t_pi)
        throw config_error("bci geometry: |delta_tau| <= tau/2");
    if (slices_per_zone < 1) throw config_error("bci geometry: slices_per_zone >= 1");
}

BciGeometry BciGeometry::from_params(const PhysicalParams& par, double delta_tau,
                                     int slices_per_zone) {
    if (!(par.omega0 > 0.0)) throw config_error("bci geometry requires omega0 > 0");
    BciGeometry g;
    g.zone_separation = par.L;
    g.zone_rabi = par.omega0;
    g.t_half_pi = (pi / 2) / par.omega0;
    g.t_pi = pi / par.omega0;
    g.delta_tau = delta_tau;
    g.slices_per_zone = slices_per_zone;
    g.validate();
    return g;
}

BeamSchedule bci_schedule(const PhysicalParams& par, const BciGeometry& geom, double phi,
                          PhaseTarget target) {
    geom.validate();
    const double L = geom.zone_separation;
    const double l_half = par.vx * geom.t_half_pi;  // pi/2 pulse length
    const double l_pi = par.vx * geom.t_pi;
    if (L - 0.5 * (l_half + l_pi) <= 0.0)
        throw config_error("bci geometry: zones overlap (pulses longer than the separation)");

    BeamSchedule sch;
    sch.x_min = -0.5 * l_half;
    sch.x_max = 2.0 * L + 0.5 * l_half;

    auto& sl = sch.slices;
    const int n = geom.slices_per_zone;

    // zone 1 (pi/2) centered at 0, never phased
    append_uniform(sl, -0.5 * l_half, 0.5 * l_half, n, geom.zone_rabi, 0.0);
    append_uniform(sl, 0.5 * l_half, L - 0.5 * l_pi, 2, 0.0, 0.0);

    // zone 2 (pi) centered at L, split at the phase-start boundary for the MBCI
    const double z2a = L - 0.5 * l_pi, z2b = L + 0.5 * l_pi;
    if (target == PhaseTarget::from_delta_tau) {
        const double xb = std::clamp(L + par.vx * geom.delta_tau, z2a, z2b);
        const double tiny = 1e-15 * l_pi;
        const int na = (int)std::lround((xb - z2a) / l_pi * 2 * n);
        if (xb - z2a > tiny) append_uniform(sl, z2a, xb, std::max(1, na), geom.zone_rabi, 0.0);
        if (z2b - xb > tiny)
            append_uniform(sl, xb, z2b, std::max(1, 2 * n - na), geom.zone_rabi, phi);
    } else {
        append_uniform(sl, z2a, z2b, 2 * n, geom.zone_rabi, 0.0);
    }
    append_uniform(sl, z2b, 2.0 * L - 0.5 * l_half, 2, 0.0, 0.0);

    // zone 3 (pi/2) centered at 2L, always phased
    append_uniform(sl, 2.0 * L - 0.5 * l_half, 2.0 * L + 0.5 * l_half, n, geom.zone_rabi, phi);

    sch.validate();
    return sch;
}

double rotation_phase_at(const RotationModel& model, const PhysicalParams& par, double x) {
    const double t_arrival = (x - model.entry_x) / par.vx;
    // Displacement of the slice relative to the atom: the slice has moved
    // (x - axis) * omega * t by arrival time, while the atom, launched from the
    // co-rotating source at entry_x, has drifted (entry - axis) * omega * t.
    // The axis position cancels, which is what makes the measured fringe shift
    // independent of the pivot point.
    const double dy = ((x - model.axis_x) - (model.entry_x - model.axis_x)) *
                      model.omega_rot * t_arrival;
    return 2.0 * par.k * dy;
}

double total_coupling_phase(const BeamSchedule& schedule, const RotationModel& model,
                            const PhysicalParams& par, std::size_t slice_index) {
    if (slice_index >= schedule.slices.size())
        throw config_error("total_coupling_phase: slice index out of range");
    const BeamSlice& s = schedule.slices[slice_index];
    return s.applied_phase + rotation_phase_at(model, par, s.x_center);
}

}  // namespace ci
