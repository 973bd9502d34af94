// cigyro: rotation-sensitivity simulations of a continuously guided single-zone
// atom interferometer, compared against the three-zone Borde-Chu configuration.

#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ci/config.hpp"
#include "ci/constants.hpp"
#include "ci/csv.hpp"
#include "ci/errors.hpp"
#include "ci/interferometry.hpp"
#include "ci/oracle.hpp"
#include "ci/svg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ci;

struct CliState {
    std::string config_path;
    std::string out_dir_override;
    bool svg_flag = false;
    RunConfig cfg;
    fs::path out;

    void load() {
        cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (!out_dir_override.empty()) cfg.out_directory = out_dir_override;
        if (svg_flag) cfg.emit_svg = true;
        out = fs::path(cfg.out_directory);
        fs::create_directories(out);
        std::cout << "# effective configuration (digest " << cfg.digest() << ")\n"
                  << cfg.canonical_dump();
    }

    CsvTable table(std::vector<std::string> header) const {
        CsvTable t;
        t.header = std::move(header);
        t.add_provenance(cfg.digest(), std::string(version));
        return t;
    }

    void chart(const std::string& name, const std::string& xlab, const std::string& ylab,
               const std::vector<double>& xs, const std::vector<double>& ys) const {
        if (cfg.emit_svg) write_line_chart((out / (name + ".svg")).string(), name, xlab, ylab, xs, ys);
    }
};

ScheduleFactory factory_from_config(const RunConfig& cfg, const PhysicalParams& par,
                                    double fraction) {
    if (cfg.beam_kind == BeamKind::gaussian)
        return ci_schedule_factory(par, cfg.to_beam_options(), fraction);
    if (cfg.phase_target == PhaseTarget::last_zone)
        return bci_last_zone_factory(par, cfg.slices_per_zone);
    return mbci_schedule_factory(par, fraction, cfg.slices_per_zone);
}

double default_fraction(const RunConfig& cfg) {
    return cfg.beam_kind == BeamKind::gaussian ? cfg.delta_l_frac : cfg.delta_tau_frac;
}

int cmd_bci_analytic(CliState& st) {
    const RunConfig& cfg = st.cfg;
    const PhysicalParams par = cfg.to_params();
    const double tau = std::numbers::pi / par.omega0;

    CsvTable t = st.table({"delta_tau_over_tau", "eta", "alpha", "q"});
    const auto fr = uniform_fractions(-0.5, 0.5, cfg.analytic_count);
    for (const double f : fr) {
        const double dtau = f * tau;
        t.rows.push_back({f, eta_mbci(cfg.analytic_delta_phi0, par.omega0, dtau),
                          signal_amplitude_mbci(par.omega0, dtau),
                          quality_factor_mbci(cfg.analytic_delta_phi0, par.omega0, dtau)});
    }
    write_csv((st.out / "mbci_analytic.csv").string(), t);
    std::cout << "wrote " << (st.out / "mbci_analytic.csv").string() << " (" << t.rows.size()
              << " rows)\n";

    if (cfg.emit_svg) {
        std::vector<double> xs, eta, alpha, q;
        for (const auto& r : t.rows) {
            xs.push_back(r[0]);
            eta.push_back(r[1]);
            alpha.push_back(r[2]);
            q.push_back(r[3]);
        }
        st.chart("mbci_eta", "delta_tau / tau", "eta", xs, eta);
        st.chart("mbci_alpha", "delta_tau / tau", "alpha", xs, alpha);
        st.chart("mbci_q", "delta_tau / tau", "Q", xs, q);
    }
    return 0;
}

int cmd_simulate(CliState& st) {
    const RunConfig& cfg = st.cfg;
    const PhysicalParams par = cfg.to_params();
    const ScheduleFactory factory = factory_from_config(cfg, par, default_fraction(cfg));
    const RotationModel model = cfg.rotation_for(par);

    const MomentumGrid grid =
        make_momentum_grid(0.0, cfg.span_hbar_k * par.hbar * par.k, cfg.n_momentum);
    const WavepacketState packet = init_gaussian_packet(grid, par);

    PropagateOptions popt;
    popt.record_every = cfg.record_every > 0 ? cfg.record_every : 5;
    popt.force_delta_zero = cfg.force_delta_zero;

    auto [state, rec] = propagate(packet, factory(cfg.phi), model, par, popt);
    auto [pa, pb] = populations(state);

    CsvTable t = st.table({"x_m", "centroid_a_um", "centroid_b_um", "pop_a", "pop_b",
                           "omega_profile_arb"});
    for (const auto& s : rec.samples)
        t.rows.push_back({s.x, s.centroid_a * 1e6, s.centroid_b * 1e6, s.pop_a, s.pop_b,
                          s.omega_profile});
    write_csv((st.out / "trajectory.csv").string(), t);

    CsvTable sum = st.table({"pop_a", "pop_b", "total_norm", "t_elapsed_s", "phi_rad"});
    sum.rows.push_back({pa, pb, state.total_norm(), state.t_elapsed, cfg.phi});
    write_csv((st.out / "summary.csv").string(), sum);

    std::cout << "final populations: P(a) = " << format_sig12(pa)
              << "  P(b) = " << format_sig12(pb) << "\n";

    if (cfg.emit_svg && !rec.samples.empty()) {
        std::vector<double> xs, ca, cb, pbv;
        for (const auto& s : rec.samples) {
            xs.push_back(s.x);
            ca.push_back(s.centroid_a * 1e6);
            cb.push_back(s.centroid_b * 1e6);
            pbv.push_back(s.pop_b);
        }
        st.chart("trajectory_centroid_a", "x (m)", "centroid |a> (um)", xs, ca);
        st.chart("trajectory_centroid_b", "x (m)", "centroid |b> (um)", xs, cb);
        st.chart("trajectory_pop_b", "x (m)", "P(b)", xs, pbv);
    }
    return 0;
}

int cmd_scan(CliState& st) {
    const RunConfig& cfg = st.cfg;
    const PhysicalParams par = cfg.to_params();
    const ScheduleFactory factory = factory_from_config(cfg, par, default_fraction(cfg));
    const ScanResult scan = run_phase_scan(factory, cfg.rotation_for(par), par,
                                           cfg.to_scan_options());

    CsvTable t = st.table({"phi_rad", "p_b"});
    std::vector<double> xs, ys;
    for (int i = 0; i < scan.phi_values.size(); ++i) {
        t.rows.push_back({scan.phi_values(i), scan.p_b_values(i)});
        xs.push_back(scan.phi_values(i));
        ys.push_back(scan.p_b_values(i));
    }
    write_csv((st.out / "scan.csv").string(), t);
    st.chart("scan", "phi (rad)", "P(b)", xs, ys);

    const FringeFit fit = fit_fringe(scan);
    std::cout << "fringe fit: alpha = " << format_sig12(fit.amplitude_alpha)
              << "  phi_min = " << format_sig12(fit.phi_min)
              << " rad  offset = " << format_sig12(fit.offset)
              << "  residual_rms = " << format_sig12(fit.residual_rms) << "\n";
    return 0;
}

int cmd_sweep(CliState& st) {
    const RunConfig& cfg = st.cfg;
    const PhysicalParams par = cfg.to_params();
    const SweepKind kind =
        cfg.beam_kind == BeamKind::gaussian ? SweepKind::ci_delta_l : SweepKind::mbci_delta_tau;
    const auto fr = uniform_fractions(cfg.sweep_min, cfg.sweep_max, cfg.sweep_count);
    const auto points = sweep_phase_start(par, kind, fr, cfg.omega_rot, cfg.s0,
                                          cfg.to_beam_options(), cfg.to_scan_options());

    const char* frac_name =
        kind == SweepKind::ci_delta_l ? "delta_l_over_l" : "delta_tau_over_tau";
    CsvTable t = st.table({frac_name, "alpha", "area_eff_m2", "eta", "q", "omega_mm_rad_s"});
    t.text_column_name = "error";
    std::size_t failures = 0;
    for (const auto& p : points) {
        if (p.failed) {
            ++failures;
            t.rows.push_back({p.fraction, 0.0, 0.0, 0.0, 0.0, 0.0});
            t.text_column.push_back(p.error);
        } else {
            t.rows.push_back({p.fraction, p.report.alpha, p.report.area_eff, p.report.eta,
                              p.report.quality_q, p.report.omega_mm});
            t.text_column.push_back("");
        }
    }
    write_csv((st.out / "sweep.csv").string(), t);
    std::cout << "wrote " << (st.out / "sweep.csv").string() << " (" << t.rows.size()
              << " rows, " << failures << " failed)\n";

    if (cfg.emit_svg) {
        std::vector<double> xs, al, ar, eta, q, mm;
        for (const auto& p : points) {
            if (p.failed) continue;
            xs.push_back(p.fraction);
            al.push_back(p.report.alpha);
            ar.push_back(p.report.area_eff);
            eta.push_back(p.report.eta);
            q.push_back(p.report.quality_q);
            mm.push_back(p.report.omega_mm);
        }
        if (xs.size() >= 2) {
            st.chart("sweep_alpha", frac_name, "alpha", xs, al);
            st.chart("sweep_area_eff", frac_name, "A_eff (m^2)", xs, ar);
            st.chart("sweep_eta", frac_name, "eta", xs, eta);
            st.chart("sweep_q", frac_name, "Q", xs, q);
            st.chart("sweep_omega_mm", frac_name, "Omega_mm (rad/s)", xs, mm);
        }
    }
    if (failures == points.size())
        throw numerical_error("all sweep points failed");
    return 0;
}

int cmd_oracle_check(CliState& st) {
    const RunConfig& cfg = st.cfg;
    const PhysicalParams par = cfg.to_params();
    const auto rows = run_oracle_ladder(par, cfg.oracle_ratios, cfg.n_slices,
                                        cfg.window_half_width_in_l);

    CsvTable t = st.table({"delta0_over_omega1", "pop_discrepancy", "max_xi_sq",
                           "xi_sq_estimate", "pop_b_two_level", "pop_b_three_level"});
    for (const auto& r : rows) {
        t.rows.push_back({r.delta0_over_omega1, r.pop_discrepancy, r.max_xi_sq,
                          r.xi_sq_estimate, r.pop_b_two, r.pop_b_three});
        std::cout << "delta0/Omega1 = " << r.delta0_over_omega1
                  << ": max population discrepancy = " << format_sig12(r.pop_discrepancy)
                  << ", max |xi|^2 = " << format_sig12(r.max_xi_sq)
                  << " (estimate " << format_sig12(r.xi_sq_estimate) << ")\n";
    }
    write_csv((st.out / "oracle.csv").string(), t);
    check_far_detuned(rows);  // throws oracle_error -> exit 4
    std::cout << "far-detuned rows agree within 1e-3\n";
    return 0;
}

int cmd_report(CliState& st) {
    const RunConfig& cfg = st.cfg;
    const PhysicalParams par = cfg.to_params();
    const ScheduleFactory factory = factory_from_config(cfg, par, default_fraction(cfg));
    const SensitivityReport rep = sensitivity_report(par, factory, cfg.rotation_for(par),
                                                     cfg.s0, cfg.to_scan_options());

    CsvTable t = st.table({"delta_phi_shift_rad", "area_eff_m2", "eta", "alpha", "q",
                           "omega_mm_rad_s", "omega_rot_rad_s"});
    t.rows.push_back({rep.delta_phi_shift, rep.area_eff, rep.eta, rep.alpha, rep.quality_q,
                      rep.omega_mm, rep.omega_rot_used});
    write_csv((st.out / "report.csv").string(), t);

    std::cout << "fringe shift = " << format_sig12(rep.delta_phi_shift) << " rad\n"
              << "A_eff = " << format_sig12(rep.area_eff) << " m^2 (A0 = "
              << format_sig12(bci_area(par)) << " m^2, eta = " << format_sig12(rep.eta) << ")\n"
              << "alpha = " << format_sig12(rep.alpha) << "  Q = " << format_sig12(rep.quality_q)
              << "\nOmega_mm = " << format_sig12(rep.omega_mm) << " rad/s at S0 = "
              << format_sig12(cfg.s0) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuously guided atom interferometer rotation-sensitivity simulations"};
    app.set_version_flag("--version", std::string("cigyro ") + std::string(ci::version));
    app.fallthrough();

    CliState st;
    bool print_defaults = false;
    bool seedless = false;
    app.add_option("--config", st.config_path, "configuration file (key = value lines)");
    app.add_option("--out", st.out_dir_override, "output directory (overrides config)");
    app.add_flag("--svg", st.svg_flag, "also emit SVG line charts");
    app.add_flag("--print-defaults", print_defaults, "print the default configuration and exit");
    app.add_flag("--seedless", seedless, "reserved; this artifact has no RNG");

    app.require_subcommand(0, 1);
    auto* sub_analytic = app.add_subcommand("bci-analytic", "closed-form MBCI eta/alpha/Q tables");
    auto* sub_sim = app.add_subcommand("simulate", "propagate one packet, emit trajectory CSV");
    auto* sub_scan = app.add_subcommand("scan", "phase scan of the configured schedule");
    auto* sub_sweep = app.add_subcommand("sweep", "phase-start sweep with sensitivity reports");
    auto* sub_oracle = app.add_subcommand("oracle-check", "two- vs three-level consistency ladder");
    auto* sub_report = app.add_subcommand("report", "single sensitivity report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (seedless)
            throw ci::config_error("--seedless is reserved: this artifact uses no RNG");
        if (print_defaults) {
            std::cout << ci::defaults_text();
            return 0;
        }
        if (app.get_subcommands().empty()) {
            std::cout << app.help();
            return 0;
        }
        st.load();
        if (sub_analytic->parsed()) return cmd_bci_analytic(st);
        if (sub_sim->parsed()) return cmd_simulate(st);
        if (sub_scan->parsed()) return cmd_scan(st);
        if (sub_sweep->parsed()) return cmd_sweep(st);
        if (sub_oracle->parsed()) return cmd_oracle_check(st);
        if (sub_report->parsed()) return cmd_report(st);
    } catch (const ci::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ci::oracle_error& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 4;
    } catch (const ci::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
