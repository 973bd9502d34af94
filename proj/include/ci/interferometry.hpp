#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ci/analytic_bci.hpp"
#include "ci/beams.hpp"
#include "ci/wavepacket.hpp"

namespace ci {

struct ScanResult {
    Eigen::ArrayXd phi_values;  // strictly increasing, one period
    Eigen::ArrayXd p_b_values;  // P(b) in [0, 1]
    std::string config_digest;
};

struct FringeFit {
    double offset = 0.0;           // mean level C
    double amplitude_alpha = 0.0;  // alpha = 2 |first harmonic|, in [0, 1]
    double phi_min = 0.0;          // argmin of the fitted fundamental, in [-pi, pi)
    double residual_rms = 0.0;
};

struct SensitivityReport {
    double delta_phi_shift = 0.0;  // rad
    double area_eff = 0.0;         // m^2, signed: -shift hbar / (2 m omega_rot)
    double eta = 0.0;              // A_eff / A0
    double alpha = 0.0;            // static-scan fringe amplitude
    double quality_q = 0.0;        // |eta| sqrt(alpha)
    double omega_mm = 0.0;         // rad/s
    double omega_rot_used = 0.0;   // rad/s
};

using ScheduleFactory = std::function<BeamSchedule(double phi)>;

struct ScanOptions {
    int n_phi = 64;
    int n_momentum = 512;
    double momentum_span_hbar_k = 6.0;  // grid half-span in units of hbar k
    double packet_width_scale = 1.0;
    bool force_delta_zero = false;
    double phi_offset = 0.0;  // global offset of the scan grid
    std::string digest;
};

// Continuous-interferometer beam layout. scan_length_l is the "l" that
// normalizes delta_l in delta_l/l sweeps; 0 selects the pi-pulse-equivalent
// length pi vx / omega0 (the delta_tau/tau analogue of the modified BCI).
struct CiBeamOptions {
    int n_slices = 500;
    double window_half_width_in_l = 2.5;  // window = [-w, w] in units of L
    double scan_length_l = 0.0;           // m; 0 = auto

    double window_half_width(const PhysicalParams& par) const {
        return window_half_width_in_l * par.L;
    }
    double scan_length(const PhysicalParams& par) const;
};

ScheduleFactory ci_schedule_factory(const PhysicalParams& par, const CiBeamOptions& beam,
                                    double delta_l_fraction);
ScheduleFactory mbci_schedule_factory(const PhysicalParams& par, double delta_tau_fraction,
                                      int slices_per_zone = 16);
ScheduleFactory bci_last_zone_factory(const PhysicalParams& par, int slices_per_zone = 16);

// Default rotation pivots: atom entry into the window (CI), first zone (BCI).
RotationModel ci_default_rotation(const PhysicalParams& par, const CiBeamOptions& beam,
                                  double omega_rot);
RotationModel bci_default_rotation(double omega_rot);

// Propagates a fresh packet for each phi on a uniform grid over one period and
// records the final P(b).
ScanResult run_phase_scan(const ScheduleFactory& factory, const RotationModel& model,
                          const PhysicalParams& par, const ScanOptions& opt);

// First-harmonic projection: P(phi) ~ C + Re(z e^{i phi}), alpha = 2|z|,
// phi_min = wrap(pi - arg z). Degenerate below alpha = 1e-9.
FringeFit fit_fringe(const ScanResult& scan);

// Wrapped difference phi_min(rotating) - phi_min(static) in (-pi, pi].
double fringe_shift(const FringeFit& fit_rotating, const FringeFit& fit_static);

// A_eff = -shift hbar / (2 m omega_rot)
double effective_area(double shift, double omega_rot, const PhysicalParams& par);

// Static + rotating scans, fits, shift, A_eff, eta, alpha, Q, Omega_mm.
SensitivityReport sensitivity_report(const PhysicalParams& par, const ScheduleFactory& factory,
                                     const RotationModel& rotating, double s0,
                                     const ScanOptions& opt);

enum class SweepKind { ci_delta_l, mbci_delta_tau };

struct SweepPoint {
    double fraction = 0.0;  // delta_l / l or delta_tau / tau
    SensitivityReport report;
    bool failed = false;
    std::string error;
};

// One sensitivity report per grid fraction; per-point failures are recorded
// and the sweep continues.
std::vector<SweepPoint> sweep_phase_start(const PhysicalParams& par, SweepKind kind,
                                          const std::vector<double>& fractions,
                                          double omega_rot, double s0,
                                          const CiBeamOptions& beam, const ScanOptions& opt);

// Centroid-deflection records for applied phases {0, pi/2, pi, 3pi/2} at
// delta_l/l = 12/25, the figure-level trajectory set.
std::vector<TrajectoryRecord> trajectory_figures(const PhysicalParams& par,
                                                 const CiBeamOptions& beam,
                                                 const std::vector<double>& phi_values,
                                                 double delta_l_fraction = 12.0 / 25.0,
                                                 int record_every = 5);

std::vector<double> uniform_fractions(double lo, double hi, int count);

}  // namespace ci
