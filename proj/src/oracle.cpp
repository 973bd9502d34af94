#include "ci/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ci/errors.hpp"
#include "ci/three_level.hpp"
#include "ci/two_level.hpp"

namespace ci {

std::vector<OracleRow> run_oracle_ladder(const PhysicalParams& par,
                                         const std::vector<double>& ratios, int n_slices,
                                         double window_half_width_in_l) {
    par.validate();
    if (!(par.omega0 > 0.0)) throw config_error("oracle ladder requires omega0 > 0");

    const double whw = window_half_width_in_l * par.L;
    const double w = 2.0 * whw / n_slices;
    const double dt = w / par.vx;
    const double p0 = 0.0;
    const double big_delta = detuning_difference(par, p0);

    std::vector<OracleRow> rows;
    rows.reserve(ratios.size());
    for (const double ratio : ratios) {
        if (!(ratio > 0.0)) throw config_error("oracle ladder: ratios must be positive");
        OracleRow row;
        row.delta0_over_omega1 = ratio;
        // delta0 = ratio * Omega1(peak) and Omega1^2 / (2 delta) = omega0 at the peak
        row.omega1_peak = 2.0 * ratio * par.omega0;
        const double delta0 = ratio * row.omega1_peak;
        PhysicalParams p3 = par;
        p3.delta0_common = delta0;
        row.small_delta = detuning_common(p3);

        ManifoldAmplitudes two{{1.0, 0.0}, {0.0, 0.0}, p0};
        ThreeLevelAmplitudes three;
        three.p = p0;

        for (int i = 0; i < n_slices; ++i) {
            const double xc = -whw + (i + 0.5) * w;
            const double u = xc / par.L;
            const double om_eff = par.omega0 * std::exp(-u * u);
            const double om1 = std::sqrt(2.0 * row.small_delta * om_eff);

            // adiabatic excited-state estimate from the two-level amplitudes
            const double xi_est =
                std::norm(adiabatic_excited_estimate(two, om1, om1, row.small_delta));
            row.xi_sq_estimate = std::max(row.xi_sq_estimate, xi_est);

            two = step_manifold(two, om_eff, big_delta, 0.0, dt);
            three = step_three_level(three, om1, om1, big_delta, row.small_delta, dt);
            row.max_xi_sq = std::max(row.max_xi_sq, std::norm(three.xi));
        }

        if (std::abs(three.norm_sq() - 1.0) > 1e-6)
            throw numerical_error("three-level norm drift exceeds 1e-6 at ratio " +
                                  std::to_string(ratio));

        row.pop_a_two = std::norm(two.alpha);
        row.pop_b_two = std::norm(two.beta);
        row.pop_a_three = std::norm(three.alpha);
        row.pop_b_three = std::norm(three.beta);
        row.pop_discrepancy = std::max(std::abs(row.pop_a_two - row.pop_a_three),
                                       std::abs(row.pop_b_two - row.pop_b_three));
        rows.push_back(row);
    }
    return rows;
}

void check_far_detuned(const std::vector<OracleRow>& rows) {
    for (const auto& r : rows) {
        if (r.delta0_over_omega1 >= 50.0 && r.pop_discrepancy > 1e-3)
            throw oracle_error("far-detuned oracle row delta0/Omega1 = " +
                               std::to_string(r.delta0_over_omega1) +
                               " disagrees by " + std::to_string(r.pop_discrepancy));
    }
}

}  // namespace ci
