#include "ci/interferometry.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "ci/errors.hpp"

namespace ci {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_pi(double x) {
    x = std::fmod(x + pi, 2.0 * pi);
    if (x < 0.0) x += 2.0 * pi;
    return x - pi;  // [-pi, pi)
}

}  // namespace

double CiBeamOptions::scan_length(const PhysicalParams& par) const {
    if (scan_length_l > 0.0) return scan_length_l;
    if (!(par.omega0 > 0.0))
        throw config_error("scan_length: omega0 > 0 required for the auto pi-pulse length");
    return pi * par.vx / par.omega0;  // l = vx * tau with omega0 * tau = pi
}

ScheduleFactory ci_schedule_factory(const PhysicalParams& par, const CiBeamOptions& beam,
                                    double delta_l_fraction) {
    const double delta_l = delta_l_fraction * beam.scan_length(par);
    const double whw = beam.window_half_width(par);
    const int n = beam.n_slices;
    return [par, n, whw, delta_l](double phi) {
        return gaussian_schedule(par, n, whw, delta_l, phi);
    };
}

ScheduleFactory mbci_schedule_factory(const PhysicalParams& par, double delta_tau_fraction,
                                      int slices_per_zone) {
    const double tau = pi / par.omega0;
    const BciGeometry geom =
        BciGeometry::from_params(par, delta_tau_fraction * tau, slices_per_zone);
    return [par, geom](double phi) {
        return bci_schedule(par, geom, phi, PhaseTarget::from_delta_tau);
    };
}

ScheduleFactory bci_last_zone_factory(const PhysicalParams& par, int slices_per_zone) {
    const BciGeometry geom = BciGeometry::from_params(par, 0.0, slices_per_zone);
    return [par, geom](double phi) {
        return bci_schedule(par, geom, phi, PhaseTarget::last_zone);
    };
}

RotationModel ci_default_rotation(const PhysicalParams& par, const CiBeamOptions& beam,
                                  double omega_rot) {
    const double entry = -beam.window_half_width(par);
    return {omega_rot, entry, entry};
}

RotationModel bci_default_rotation(double omega_rot) { return {omega_rot, 0.0, 0.0}; }

ScanResult run_phase_scan(const ScheduleFactory& factory, const RotationModel& model,
                          const PhysicalParams& par, const ScanOptions& opt) {
    if (opt.n_phi < 16) throw config_error("run_phase_scan: n_phi >= 16");
    const MomentumGrid grid =
        make_momentum_grid(0.0, opt.momentum_span_hbar_k * par.hbar * par.k, opt.n_momentum);
    const WavepacketState packet = init_gaussian_packet(grid, par, opt.packet_width_scale);

    PropagateOptions popt;
    popt.force_delta_zero = opt.force_delta_zero;

    ScanResult scan;
    scan.config_digest = opt.digest;
    scan.phi_values.resize(opt.n_phi);
    scan.p_b_values.resize(opt.n_phi);
    for (int i = 0; i < opt.n_phi; ++i) {
        const double phi = opt.phi_offset + 2.0 * pi * i / opt.n_phi;
        scan.phi_values(i) = phi;
        try {
            auto [final_state, rec] = propagate(packet, factory(phi), model, par, popt);
            scan.p_b_values(i) = populations(final_state).second;
        } catch (const numerical_error& e) {
            throw numerical_error("phase scan failed at phi = " + std::to_string(phi) + ": " +
                                  e.what());
        }
    }
    return scan;
}

FringeFit fit_fringe(const ScanResult& scan) {
    const int n = (int)scan.phi_values.size();
    if (n < 2) throw config_error("fit_fringe: scan too short");
    const double span = scan.phi_values(n - 1) - scan.phi_values(0);
    if (std::abs(span - 2.0 * pi * (n - 1) / n) > 1e-9)
        throw config_error("fit_fringe: scan must cover one full period uniformly");

    std::complex<double> z{0.0, 0.0};
    double c = 0.0;
    for (int i = 0; i < n; ++i) {
        c += scan.p_b_values(i);
        z += scan.p_b_values(i) *
             std::exp(std::complex<double>(0.0, -scan.phi_values(i)));
    }
    c /= n;
    z *= 2.0 / n;

    FringeFit fit;
    fit.offset = c;
    fit.amplitude_alpha = 2.0 * std::abs(z);
    if (fit.amplitude_alpha < 1e-9)
        throw numerical_error("fit_fringe: degenerate fit, fringe amplitude below 1e-9");
    fit.phi_min = wrap_pi(pi - std::arg(z));

    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double model =
            c + std::real(z * std::exp(std::complex<double>(0.0, scan.phi_values(i))));
        ss += (scan.p_b_values(i) - model) * (scan.p_b_values(i) - model);
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

double fringe_shift(const FringeFit& fit_rotating, const FringeFit& fit_static) {
    double d = wrap_pi(fit_rotating.phi_min - fit_static.phi_min);
    if (d == -pi) d = pi;  // (-pi, pi]
    return d;
}

double effective_area(double shift, double omega_rot, const PhysicalParams& par) {
    if (omega_rot == 0.0) throw config_error("effective_area: omega_rot must be nonzero");
    return -shift * par.hbar / (2.0 * par.m * omega_rot);
}

SensitivityReport sensitivity_report(const PhysicalParams& par, const ScheduleFactory& factory,
                                     const RotationModel& rotating, double s0,
                                     const ScanOptions& opt) {
    RotationModel still = rotating;
    still.omega_rot = 0.0;
    const FringeFit fit_static = fit_fringe(run_phase_scan(factory, still, par, opt));
    const FringeFit fit_rot = fit_fringe(run_phase_scan(factory, rotating, par, opt));

    SensitivityReport rep;
    rep.omega_rot_used = rotating.omega_rot;
    rep.delta_phi_shift = fringe_shift(fit_rot, fit_static);
    rep.area_eff = effective_area(rep.delta_phi_shift, rotating.omega_rot, par);
    rep.alpha = fit_static.amplitude_alpha;
    rep.eta = rep.area_eff / bci_area(par);
    rep.quality_q = std::abs(rep.eta) * std::sqrt(rep.alpha);
    rep.omega_mm = min_measurable_rotation(
        {rep.area_eff, bci_area(par), rep.alpha, s0, par.m, par.hbar});
    return rep;
}

std::vector<SweepPoint> sweep_phase_start(const PhysicalParams& par, SweepKind kind,
                                          const std::vector<double>& fractions,
                                          double omega_rot, double s0,
                                          const CiBeamOptions& beam, const ScanOptions& opt) {
    std::vector<SweepPoint> out;
    out.reserve(fractions.size());
    for (const double f : fractions) {
        SweepPoint pt;
        pt.fraction = f;
        try {
            if (std::abs(f) > 0.5 + 1e-12)
                throw config_error("sweep fraction outside [-1/2, 1/2]");
            const ScheduleFactory factory = (kind == SweepKind::ci_delta_l)
                                                ? ci_schedule_factory(par, beam, f)
                                                : mbci_schedule_factory(par, f);
            const RotationModel rot = (kind == SweepKind::ci_delta_l)
                                          ? ci_default_rotation(par, beam, omega_rot)
                                          : bci_default_rotation(omega_rot);
            pt.report = sensitivity_report(par, factory, rot, s0, opt);
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<TrajectoryRecord> trajectory_figures(const PhysicalParams& par,
                                                 const CiBeamOptions& beam,
                                                 const std::vector<double>& phi_values,
                                                 double delta_l_fraction, int record_every) {
    const ScheduleFactory factory = ci_schedule_factory(par, beam, delta_l_fraction);
    const RotationModel still = ci_default_rotation(par, beam, 0.0);
    const MomentumGrid grid = make_momentum_grid(0.0, 6.0 * par.hbar * par.k, 512);
    const WavepacketState packet = init_gaussian_packet(grid, par);

    PropagateOptions popt;
    popt.record_every = record_every;

    std::vector<TrajectoryRecord> out;
    out.reserve(phi_values.size());
    for (const double phi : phi_values) {
        auto [state, rec] = propagate(packet, factory(phi), still, par, popt);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<double> uniform_fractions(double lo, double hi, int count) {
    if (count < 1) throw config_error("sweep grid: count >= 1");
    std::vector<double> f(count);
    if (count == 1) {
        f[0] = 0.5 * (lo + hi);
        return f;
    }
    for (int i = 0; i < count; ++i) f[i] = lo + (hi - lo) * i / (count - 1);
    return f;
}

}  // namespace ci
