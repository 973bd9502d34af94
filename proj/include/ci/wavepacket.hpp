#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ci/beams.hpp"
#include "ci/params.hpp"
#include "ci/two_level.hpp"

namespace ci {

// Uniform grid of manifold base momenta, symmetric about the packet center.
struct MomentumGrid {
    Eigen::ArrayXd p;  // kg m/s
    double dp = 0.0;

    int size() const { return (int)p.size(); }
};

MomentumGrid make_momentum_grid(double center, double half_span, int n);

// Full atomic state on the momentum grid: interaction-picture amplitudes
// alpha(p) on |p, a>, beta stored at index p for |p + 2 hbar k, b>.
// The common lab-frame kinetic phase is applied only at reconstruction.
struct WavepacketState {
    MomentumGrid grid;
    Eigen::ArrayXcd alpha;
    Eigen::ArrayXcd beta;
    double t_elapsed = 0.0;

    double total_norm() const {
        return (alpha.abs2().sum() + beta.abs2().sum()) * grid.dp;
    }
};

// Gaussian packet in |a> whose position-space amplitude |psi_a(z)| has 1/e
// half-width width_scale / k (the reference configuration at width_scale = 1).
WavepacketState init_gaussian_packet(const MomentumGrid& grid, const PhysicalParams& par,
                                     double width_scale = 1.0);

struct TrajectorySample {
    double x = 0.0;           // distance into the schedule window (m)
    double centroid_a = 0.0;  // m
    double centroid_b = 0.0;  // m (0 when the |b> population is empty)
    double pop_a = 0.0;
    double pop_b = 0.0;
    double omega_profile = 0.0;  // Omega(x)/Omega_peak, for plotting
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
};

struct PropagateOptions {
    int record_every = 0;         // 0: no trajectory recording
    bool force_delta_zero = false;  // set Delta = 0 for every manifold (analytic-BCI regime)
    double norm_tolerance = 1e-9;
};

// Steps the packet through every slice of the schedule (dt = width / vx per
// slice), applying the per-slice coupling phase (mask + rotation) and the
// manifold's own Delta(p). Throws numerical_error on norm drift.
std::pair<WavepacketState, TrajectoryRecord> propagate(const WavepacketState& state,
                                                       const BeamSchedule& schedule,
                                                       const RotationModel& model,
                                                       const PhysicalParams& par,
                                                       const PropagateOptions& opt = {});

// (P_a, P_b) as discretized momentum integrals; P_a + P_b = 1 within 1e-9.
std::pair<double, double> populations(const WavepacketState& state);

// Uniform position grid, by default conjugate to the momentum grid
// (dz * dp = 2 pi hbar / N) so the Fourier synthesis is exactly unitary.
struct PositionGrid {
    Eigen::ArrayXd z;  // m
    double dz = 0.0;

    int size() const { return (int)z.size(); }
};

PositionGrid make_conjugate_position_grid(const MomentumGrid& grid, double hbar);

// psi_a(z) = sum dp alpha(p) e^{-i p z/hbar} / sqrt(2 pi hbar), psi_b at its
// physical momenta p + 2 hbar k, both including the kinetic phases at
// t_elapsed. Normalized so sum |psi|^2 dz equals the state populations.
std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> position_wavefunctions(
    const WavepacketState& state, const PhysicalParams& par, const PositionGrid& zgrid);

// Inverse synthesis on the conjugate grid (round-trip support/tests).
std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> momentum_from_position(
    const Eigen::ArrayXcd& psi_a, const Eigen::ArrayXcd& psi_b, const MomentumGrid& grid,
    const PhysicalParams& par, const PositionGrid& zgrid, double t_elapsed);

// <z> = int z |psi|^2 dz / int |psi|^2 dz; rejects near-empty states.
double centroid_deflection(const Eigen::ArrayXcd& psi, const PositionGrid& zgrid);

}  // namespace ci
