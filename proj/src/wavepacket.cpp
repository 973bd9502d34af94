#include "ci/wavepacket.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "ci/errors.hpp"

namespace ci {

namespace {

constexpr complexd I{0.0, 1.0};

// Shared synthesis kernel E(n, j) = e^{-i p_j z_n / hbar}; psi_b picks up the
// extra e^{-2 i k z} recoil factor so both states use the same matrix.
struct SynthesisKernel {
    Eigen::MatrixXcd e;        // n_z x n_p
    Eigen::ArrayXcd b_shift;   // e^{-2 i k z_n}
    double scale = 0.0;        // dp / sqrt(2 pi hbar)

    SynthesisKernel(const MomentumGrid& grid, const PhysicalParams& par,
                    const PositionGrid& zgrid) {
        const int np = grid.size(), nz = zgrid.size();
        e.resize(nz, np);
        for (int n = 0; n < nz; ++n)
            for (int j = 0; j < np; ++j)
                e(n, j) = std::exp(-I * grid.p(j) * zgrid.z(n) / par.hbar);
        b_shift = (-2.0 * I * par.k * zgrid.z).exp();
        scale = grid.dp / std::sqrt(2.0 * std::numbers::pi * par.hbar);
    }

    std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> synthesize(const WavepacketState& s,
                                                           const PhysicalParams& par) const {
        const int np = s.grid.size();
        Eigen::ArrayXcd kin(np);
        for (int j = 0; j < np; ++j)
            kin(j) = std::exp(I * kinetic_phase(par, s.grid.p(j), s.t_elapsed));
        const Eigen::VectorXcd a_lab = (s.alpha * kin).matrix();
        const Eigen::VectorXcd b_lab = (s.beta * kin).matrix();
        Eigen::ArrayXcd psi_a = (e * a_lab).array() * scale;
        Eigen::ArrayXcd psi_b = (e * b_lab).array() * b_shift * scale;
        return {std::move(psi_a), std::move(psi_b)};
    }
};

}  // namespace

MomentumGrid make_momentum_grid(double center, double half_span, int n) {
    if (n < 16) throw config_error("momentum grid: N >= 16");
    if (!(half_span > 0.0)) throw config_error("momentum grid: half_span > 0");
    MomentumGrid g;
    g.p = Eigen::ArrayXd::LinSpaced(n, center - half_span, center + half_span);
    g.dp = g.p(1) - g.p(0);
    return g;
}

WavepacketState init_gaussian_packet(const MomentumGrid& grid, const PhysicalParams& par,
                                     double width_scale) {
    if (!(width_scale > 0.0)) throw config_error("init_gaussian_packet: width_scale > 0");
    const double s = par.hbar * par.k / width_scale;  // |psi(z)| 1/e half-width = width_scale/k
    const double center = 0.5 * (grid.p(0) + grid.p(grid.size() - 1));

    WavepacketState st;
    st.grid = grid;
    st.alpha = (-((grid.p - center) / (2.0 * s)).square()).exp().cast<complexd>();
    st.beta = Eigen::ArrayXcd::Zero(grid.size());

    const double num = st.alpha.abs2().sum() * grid.dp;
    const double analytic = s * std::sqrt(2.0 * std::numbers::pi);  // int e^{-p^2/2s^2} dp
    if (1.0 - num / analytic > 1e-6)
        throw config_error("init_gaussian_packet: momentum grid too narrow (norm loss > 1e-6)");
    st.alpha /= std::sqrt(num);
    return st;
}

std::pair<double, double> populations(const WavepacketState& state) {
    return {state.alpha.abs2().sum() * state.grid.dp,
            state.beta.abs2().sum() * state.grid.dp};
}

std::pair<WavepacketState, TrajectoryRecord> propagate(const WavepacketState& state,
                                                       const BeamSchedule& schedule,
                                                       const RotationModel& model,
                                                       const PhysicalParams& par,
                                                       const PropagateOptions& opt) {
    schedule.validate();
    const int np = state.grid.size();

    Eigen::ArrayXd half_delta(np);
    if (opt.force_delta_zero) {
        half_delta.setZero();
    } else {
        for (int j = 0; j < np; ++j)
            half_delta(j) = 0.5 * detuning_difference(par, state.grid.p(j));
    }

    WavepacketState st = state;
    const double norm0 = st.total_norm();

    TrajectoryRecord rec;
    PositionGrid zgrid;
    std::unique_ptr<SynthesisKernel> kernel;
    double omega_peak = 0.0;
    if (opt.record_every > 0) {
        zgrid = make_conjugate_position_grid(st.grid, par.hbar);
        kernel = std::make_unique<SynthesisKernel>(st.grid, par, zgrid);
        for (const auto& s : schedule.slices) omega_peak = std::max(omega_peak, s.omega_eff);
    }

    for (std::size_t i = 0; i < schedule.slices.size(); ++i) {
        const BeamSlice& sl = schedule.slices[i];
        const double dt = sl.width / par.vx;
        const double b = 0.5 * sl.omega_eff;
        const double phi = total_coupling_phase(schedule, model, par, i);

        const Eigen::ArrayXd w = (half_delta.square() + b * b).sqrt();
        const Eigen::ArrayXd th = w * dt;
        const Eigen::ArrayXd cs = th.cos();
        // sin(w dt)/w with a series fallback for w -> 0
        const Eigen::ArrayXd snc =
            (th > 1e-6).select(th.sin() / w.max(1e-300), dt * (1.0 - th.square() / 6.0));

        const complexd global = std::exp(-I * b * dt);  // AC-Stark e^{-i Omega dt / 2}
        const complexd em = std::exp(-I * phi);

        const Eigen::ArrayXcd uaa = cs.cast<complexd>() - I * (snc * half_delta).cast<complexd>();
        const Eigen::ArrayXcd ubb = cs.cast<complexd>() + I * (snc * half_delta).cast<complexd>();
        const Eigen::ArrayXcd off = (-I * b) * snc.cast<complexd>();

        const Eigen::ArrayXcd na = global * (uaa * st.alpha + em * off * st.beta);
        const Eigen::ArrayXcd nb = global * (off / em * st.alpha + ubb * st.beta);
        st.alpha = na;
        st.beta = nb;
        st.t_elapsed += dt;

        if (opt.record_every > 0 && (i + 1) % (std::size_t)opt.record_every == 0) {
            auto [pa, pb] = populations(st);
            auto [psi_a, psi_b] = kernel->synthesize(st, par);
            TrajectorySample smp;
            smp.x = sl.x_center;
            smp.pop_a = pa;
            smp.pop_b = pb;
            smp.centroid_a = pa > 1e-12 ? centroid_deflection(psi_a, zgrid) : 0.0;
            smp.centroid_b = pb > 1e-12 ? centroid_deflection(psi_b, zgrid) : 0.0;
            smp.omega_profile = omega_peak > 0.0 ? sl.omega_eff / omega_peak : 0.0;
            rec.samples.push_back(smp);
        }
    }

    const double drift = std::abs(st.total_norm() - norm0);
    if (drift > opt.norm_tolerance)
        throw numerical_error("propagate: norm drift " + std::to_string(drift) +
                              " exceeds tolerance");
    return {std::move(st), std::move(rec)};
}

PositionGrid make_conjugate_position_grid(const MomentumGrid& grid, double hbar) {
    const int n = grid.size();
    PositionGrid zg;
    const double dz = 2.0 * std::numbers::pi * hbar / (n * grid.dp);
    zg.z = (Eigen::ArrayXd::LinSpaced(n, 0, n - 1) - n / 2) * dz;
    zg.dz = dz;
    return zg;
}

std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> position_wavefunctions(
    const WavepacketState& state, const PhysicalParams& par, const PositionGrid& zgrid) {
    if (zgrid.size() < 2) throw config_error("position_wavefunctions: empty z grid");
    // Nyquist guard: the packet's momentum span must be representable on z steps
    const double p_span = state.grid.p(state.grid.size() - 1) - state.grid.p(0);
    if (zgrid.dz > 2.0 * std::numbers::pi * par.hbar / (p_span + state.grid.dp))
        throw config_error("position_wavefunctions: z grid too coarse (aliasing)");
    SynthesisKernel kernel(state.grid, par, zgrid);
    return kernel.synthesize(state, par);
}

std::pair<Eigen::ArrayXcd, Eigen::ArrayXcd> momentum_from_position(
    const Eigen::ArrayXcd& psi_a, const Eigen::ArrayXcd& psi_b, const MomentumGrid& grid,
    const PhysicalParams& par, const PositionGrid& zgrid, double t_elapsed) {
    const int np = grid.size(), nz = zgrid.size();
    Eigen::MatrixXcd e(np, nz);
    for (int j = 0; j < np; ++j)
        for (int n = 0; n < nz; ++n)
            e(j, n) = std::exp(I * grid.p(j) * zgrid.z(n) / par.hbar);
    const double scale = zgrid.dz / std::sqrt(2.0 * std::numbers::pi * par.hbar);
    const Eigen::ArrayXcd unshift = (2.0 * I * par.k * zgrid.z).exp();

    Eigen::ArrayXcd a_lab = (e * psi_a.matrix()).array() * scale;
    Eigen::ArrayXcd b_lab = (e * (psi_b * unshift).matrix()).array() * scale;
    for (int j = 0; j < np; ++j) {
        const complexd kin = std::exp(-I * kinetic_phase(par, grid.p(j), t_elapsed));
        a_lab(j) *= kin;
        b_lab(j) *= kin;
    }
    return {std::move(a_lab), std::move(b_lab)};
}

double centroid_deflection(const Eigen::ArrayXcd& psi, const PositionGrid& zgrid) {
    const Eigen::ArrayXd density = psi.abs2();
    const double w = density.sum() * zgrid.dz;
    if (!(w > 1e-12))
        throw numerical_error("centroid_deflection: state too empty for a centroid");
    return (zgrid.z * density).sum() * zgrid.dz / w;
}

}  // namespace ci
