#pragma once

#include <vector>

#include "ci/beams.hpp"
#include "ci/params.hpp"

namespace ci {

// One row of the two-level vs three-level consistency ladder. The three-level
// run uses Omega1(x) = Omega2(x) = sqrt(2 delta Omega_eff(x)) so its adiabatic
// reduction reproduces the two-level Omega_eff(x) exactly.
struct OracleRow {
    double delta0_over_omega1 = 0.0;  // ladder ratio delta0 / Omega1(peak)
    double small_delta = 0.0;         // rad/s
    double omega1_peak = 0.0;         // rad/s
    double pop_a_two = 0.0;
    double pop_b_two = 0.0;
    double pop_a_three = 0.0;
    double pop_b_three = 0.0;
    double pop_discrepancy = 0.0;     // max |P_two - P_three|
    double max_xi_sq = 0.0;           // max |xi|^2 along the three-level traversal
    double xi_sq_estimate = 0.0;      // max of |Omega1 a + Omega2 b|^2/(2 delta)^2 (two-level a, b)
};

// Runs the central manifold (p = 0) through a Gaussian traversal for each
// delta0/Omega1 ratio. far_detuned_tolerance applies to rows with ratio >= 50.
std::vector<OracleRow> run_oracle_ladder(const PhysicalParams& par,
                                         const std::vector<double>& ratios, int n_slices = 500,
                                         double window_half_width_in_l = 2.5);

// Throws oracle_error if any far-detuned row (ratio >= 50) exceeds 1e-3.
void check_far_detuned(const std::vector<OracleRow>& rows);

}  // namespace ci
