#pragma once

#include "fbrate/channel.hpp"

namespace fbrate {

/// One sample of the SNR moment generating function M(s) = E[exp(-s gamma)].
struct MgfPoint {
    double s = 0.0;
    double value = 1.0;
    double log_value = 0.0;
};

/// log M(s) for s >= 0, evaluated in the purely real form
///   (m - mu/2) [log(1 + eta gb s/Omega) + log(1 + gb s/Omega)]
///     - m log(1 - beta gb s + alpha1 gb^2 s^2),
/// which equals the product form with the roots c1, c2 by Vieta.
double log_mgf(const ChannelParams& params, const DerivedParams& derived, double s);

MgfPoint mgf(const ChannelParams& params, const DerivedParams& derived, double s);

/// -M'(0) from the analytic derivative of log M; equals gamma_bar.
double mgf_mean_check(const ChannelParams& params, const DerivedParams& derived);

}  // namespace fbrate
