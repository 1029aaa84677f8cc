#pragma once

#include <string>
#include <vector>

#include "fbrate/channel.hpp"

namespace fbrate {

/// One channel/exponent configuration of a validation grid.
struct GridPoint {
    ChannelParams params;
    double a_exponent = 1.0;
    double snr_db = 0.0;
    std::string label;
};

/// Cartesian axes of the cross-method grid.
struct GridAxes {
    std::vector<double> m{1, 2, 3};
    std::vector<double> mu{2, 4, 6};
    std::vector<double> kappa{0.5, 1, 2};
    std::vector<double> eta{0.1, 0.5, 1};
    std::vector<double> rho2{0.1, 1};
    std::vector<double> snr_db{-10, 0, 10, 20, 30};
    std::vector<double> a_exponent{0.5, 1, 2, 5};

    bool empty() const noexcept;
};

/// Product of the axes; ordering is m, mu, kappa, eta, rho2, snr, A (outer to inner).
std::vector<GridPoint> expand(const GridAxes& axes);

/// The 1,080-point integer-m / even-mu grid on which quadrature and closed
/// form must agree.
std::vector<GridPoint> cross_method_grid();

/// 40 integer-mu configurations (figure settings, presets, an off-grid
/// corner) for Monte-Carlo concordance.
std::vector<GridPoint> monte_carlo_grid();

}  // namespace fbrate
