#pragma once

// Reference implementations used only by the tests. They share no code with the
// library: textbook formulas, Boost special functions and Boost quadrature.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

namespace oracle {

template <class F>
double integrate_half_line(F f, double scale = 1.0) {
    boost::math::quadrature::tanh_sinh<double> head;
    boost::math::quadrature::exp_sinh<double> tail;
    const double a = head.integrate(f, 0.0, scale, 1e-14);
    const double b = tail.integrate(f, scale, std::numeric_limits<double>::infinity(), 1e-14);
    return a + b;
}

// U(a;b;z) from its defining integral.
inline double tricomi_u(double a, double b, double z) {
    auto f = [&](double t) {
        return std::exp((a - 1) * std::log(t) + (b - a - 1) * std::log1p(t) - z * t);
    };
    return integrate_half_line(f, 1.0) / boost::math::tgamma(a);
}

// kappa-mu shadowed SNR, Laplace MGF E[exp(-s g)].
inline double kms_mgf(double mu, double m, double kappa, double gbar, double s) {
    const double x = gbar * s;
    return std::pow(1 + x / (mu * (1 + kappa)), m - mu) *
           std::pow(1 + (m + mu * kappa) * x / (m * mu * (1 + kappa)), -m);
}

inline double kms_pdf(double mu, double m, double kappa, double gbar, double g) {
    using boost::math::hypergeometric_1F1;
    const double log_c = mu * std::log(mu) + m * std::log(m) + mu * std::log1p(kappa) -
                         boost::math::lgamma(mu) - std::log(gbar) - m * std::log(mu * kappa + m);
    const double r = g / gbar;
    const double z = mu * mu * kappa * (1 + kappa) * r / (mu * kappa + m);
    // Kummer: 1F1(m; mu; z) = e^z 1F1(mu - m; mu; -z) keeps the tail from overflowing
    const double log_e = log_c + (mu - 1) * std::log(r) - mu * (1 + kappa) * r + z;
    if (log_e < -745.0) return 0.0;
    return std::exp(log_e) * hypergeometric_1F1(mu - m, mu, -z);
}

// E[(1 + g)^-A] under the kappa-mu shadowed density.
inline double kms_expectation(double mu, double m, double kappa, double gbar, double a) {
    auto f = [&](double g) { return g <= 0 ? 0.0 : std::pow(1 + g, -a) * kms_pdf(mu, m, kappa, gbar, g); };
    return integrate_half_line(f, gbar);
}

// Nakagami-m, A = 1: z e^z E_m(z) with z = m / gbar.
inline double nakagami_expectation_a1(int m, double gbar) {
    const double z = m / gbar;
    return z * std::exp(z) * boost::math::expint(m, z);
}

// Rayleigh with A = 1 and A = 2.
inline double rayleigh_expectation(double gbar, int a) {
    const double z = 1 / gbar;
    const double ze = z * std::exp(z) * boost::math::expint(1, z);
    return a == 1 ? ze : z * (1 - ze);
}

}  // namespace oracle
