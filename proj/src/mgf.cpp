#include "fbrate/mgf.hpp"

#include <cmath>

#include "fbrate/errors.hpp"

namespace fbrate {

double log_mgf(const ChannelParams& p, const DerivedParams& d, double s) {
    if (!(s >= 0.0)) throw ValidationError("s", "must be >= 0");
    const double x = p.gamma_bar * s;
    double log_value = -p.m * std::log1p(x * (-d.beta + d.alpha1 * x));
    if (d.exponent_e != 0.0) {
        log_value += d.exponent_e *
                     (std::log1p(p.eta * x / d.omega_cap) + std::log1p(x / d.omega_cap));
    }
    return log_value;
}

MgfPoint mgf(const ChannelParams& p, const DerivedParams& d, double s) {
    const double lv = log_mgf(p, d, s);
    return {s, std::exp(lv), lv};
}

double mgf_mean_check(const ChannelParams& p, const DerivedParams& d) {
    return p.gamma_bar * ((p.mu / 2.0 - p.m) * (1.0 + p.eta) / d.omega_cap - p.m * d.beta);
}

}  // namespace fbrate
