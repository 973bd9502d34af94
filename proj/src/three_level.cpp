#include "ci/three_level.hpp"

#include <algorithm>
#include <cmath>

namespace ci {

ThreeLevelAmplitudes step_three_level(const ThreeLevelAmplitudes& state, double omega1,
                                      double omega2, double big_delta, double small_delta,
                                      double dt, double step_factor) {
    using Vec3 = Eigen::Vector3cd;
    const std::complex<double> mi(0.0, -1.0);

    Eigen::Matrix3d m;  // H/hbar in the (alpha, beta, xi) ordering; real symmetric
    m << 0.5 * big_delta, 0.0, 0.5 * omega1,
         0.0, -0.5 * big_delta, 0.5 * omega2,
         0.5 * omega1, 0.5 * omega2, -small_delta;

    const double scale = std::max({std::abs(small_delta), std::abs(omega1),
                                   std::abs(omega2), std::abs(big_delta)});
    const int n = (scale > 0.0) ? std::max(1, (int)std::ceil(dt * scale / step_factor)) : 1;
    const double h = dt / n;

    Vec3 y(state.alpha, state.beta, state.xi);
    for (int i = 0; i < n; ++i) {
        const Vec3 k1 = mi * (m * y);
        const Vec3 k2 = mi * (m * (y + 0.5 * h * k1));
        const Vec3 k3 = mi * (m * (y + 0.5 * h * k2));
        const Vec3 k4 = mi * (m * (y + h * k3));
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    ThreeLevelAmplitudes out = state;
    out.alpha = y(0);
    out.beta = y(1);
    out.xi = y(2);
    return out;
}

}  // namespace ci
