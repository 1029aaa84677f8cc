#pragma once

#include <memory>
#include <vector>

#include "fbrate/wide.hpp"

namespace fbrate {

/// log Gamma(x) for x > 0; throws std::domain_error otherwise.
double ln_gamma(double x);

/// Tricomi confluent hypergeometric function U(j; b; z) for integer j >= 1
/// and z > 0, from
///   U(j; b; z) = 1/Gamma(j) int_0^inf t^{j-1} (1+t)^{b-j-1} e^{-zt} dt.
/// Throws NonConvergence when the target accuracy cannot be met.
double tricomi_u_int_a(int j, double b, double z);

/// U(j; j + shift; z) for j = 1..j_max in one pass (shared integrand weight).
/// rel_tol <= 0 selects the type's default (1e-12 for double, 1e-27 for
/// WideReal).
template <class Real>
std::vector<Real> tricomi_u_ladder(int j_max, Real shift, Real z, Real rel_tol = Real(0));

/// z^j U(j; j + shift; z) for j = 1..j_max. The scaling keeps values of
/// order one where U itself would overflow or underflow (large j or z); for
/// shift = 1 - A the j-th entry is E[(1 + g)^{-A}] under a Gamma(j, z) law.
template <class Real>
std::vector<Real> tricomi_u_scaled_ladder(int j_max, Real shift, Real z, Real rel_tol = Real(0));

extern template std::vector<double> tricomi_u_ladder<double>(int, double, double, double);
extern template std::vector<WideReal> tricomi_u_ladder<WideReal>(int, WideReal, WideReal, WideReal);
extern template std::vector<double> tricomi_u_scaled_ladder<double>(int, double, double, double);
extern template std::vector<WideReal> tricomi_u_scaled_ladder<WideReal>(int, WideReal, WideReal,
                                                                        WideReal);

/// Generalized Gauss-Laguerre rule for the weight s^alpha e^{-s} on [0, inf).
struct QuadratureRule {
    int order = 0;
    double alpha_exponent = 0.0;
    std::vector<double> nodes;               // strictly increasing
    std::vector<double> weights;             // sum to Gamma(alpha + 1)
    std::vector<double> normalized_weights;  // weights / Gamma(alpha + 1)
};

/// Golub-Welsch construction; order in [1, 512], alpha > -1.
QuadratureRule gauss_laguerre(int order, double alpha);

/// Thread-safe memoized gauss_laguerre().
std::shared_ptr<const QuadratureRule> cached_gauss_laguerre(int order, double alpha);

namespace detail {

/// Exponential integral E1(x), x > 0 (series below 1, continued fraction above).
double expint_e1(double x);

}  // namespace detail

}  // namespace fbrate
