#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fbrate/channel.hpp"
#include "fbrate/monte_carlo.hpp"
#include "fbrate/poles.hpp"

namespace fbrate {

enum class Method { automatic, quadrature, closed_form, monte_carlo };

std::string_view method_name(Method method) noexcept;
/// Accepts auto, quadrature|quad, closed|closed_form, mc|monte_carlo.
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Delay exponent theta [1/bit], block duration T [s], bandwidth B [Hz].
struct LinkParameters {
    double theta = 0.0;
    double block_duration = 0.0;
    double bandwidth = 0.0;
};

/// A = theta T B / ln 2.
double qos_exponent(const LinkParameters& link);

struct ErRequest {
    ChannelParams params;
    double a_exponent = 1.0;
    Method method = Method::automatic;
    double rel_tol = 1e-8;
    double large_m = kDefaultLargeM;  // stand-in for m = inf
    McConfig mc;
    std::optional<LinkParameters> link;  // echoed in diagnostics when A came from it

    static ErRequest from_link(const ChannelParams& params, const LinkParameters& link);
};

using Diagnostic = std::pair<std::string, std::string>;

struct ErResult {
    double expectation_j = 1.0;
    double rate = 0.0;
    Method method_used = Method::quadrature;
    double error_estimate = 0.0;
    std::vector<Diagnostic> diagnostics;

    /// Value of the first diagnostic named `key`, if any.
    std::optional<std::string> diagnostic(std::string_view key) const;
};

/// J from one engine together with its error estimate.
struct ExpectationEstimate {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    std::string route;              // e.g. "gauss-laguerre-64", "double-exponential", "binary128"
    double cancellation = 1.0;      // sum |terms| / |sum| (closed form only)
};

/// J = 1/Gamma(A) int_0^inf s^{A-1} e^{-s} M(s) ds by generalized
/// Gauss-Laguerre rules of order 32, 64, 128, 256 until two successive
/// orders agree to rel_tol, then by split double-exponential quadrature.
ExpectationEstimate expectation_quadrature(const ChannelParams& params, const DerivedParams& derived,
                                           double a_exponent, double rel_tol = 1e-8);

/// J = sum_ij A_ij lambda_i^j U(j; j - A + 1; lambda_i), lambda_i = theta_i / gamma_bar.
/// Evaluated in binary64; redone in binary128 when the cancellation ratio of
/// the sum would spoil rel_tol. Throws ClosedFormUnavailable outside the
/// integer-m / even-mu regime.
ExpectationEstimate expectation_closed_form(const ChannelParams& params, const DerivedParams& derived,
                                            const PoleSet& poles, double a_exponent,
                                            double rel_tol = 1e-8);
ExpectationEstimate expectation_closed_form(const ChannelParams& params, const DerivedParams& derived,
                                            double a_exponent, double rel_tol = 1e-8);

/// R = -log2(J) / A for J in (0, 1].
double effective_rate(double expectation_j, double a_exponent);

/// Tolerance on |R(2 large_m) - R(large_m)| accepted as a converged m = inf limit.
inline constexpr double kShadowingLimitTolerance = 1e-3;

/// Validates the request, resolves m = inf, and dispatches: closed form when
/// available (cross-checked against quadrature under Method::automatic),
/// quadrature otherwise, Monte-Carlo on request.
ErResult er_auto(const ErRequest& request);

}  // namespace fbrate
