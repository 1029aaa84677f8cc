#include "fbrate/effective_rate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <tuple>

#include "fbrate/detail/double_exponential.hpp"
#include "fbrate/errors.hpp"
#include "fbrate/mgf.hpp"
#include "fbrate/special_functions.hpp"

namespace fbrate {

namespace {

constexpr std::array<int, 4> kLaguerreOrders{32, 64, 128, 256};

// Assumed relative accuracy of one binary64 term of the closed-form sum.
constexpr double kDoubleTermAccuracy = 1e-13;
constexpr double kWideTermAccuracy = 1e-28;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void require_exponent(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("A", "must be finite and > 0");
}

ExpectationEstimate split_quadrature(const ChannelParams& p, const DerivedParams& d, double a,
                                     double rel_tol) {
    const double log_norm = ln_gamma(a);
    auto integrand = [&](double s, std::vector<double>& out) {
        out[0] = std::exp((a - 1.0) * std::log(s) - s + log_mgf(p, d, s) - log_norm);
    };

    // Breakpoints at the scales where the MGF factors bend.
    std::vector<double> cuts{1.0, d.c1 / p.gamma_bar, d.c2 / p.gamma_bar,
                             d.omega_cap / p.gamma_bar, d.omega_cap / (p.eta * p.gamma_bar)};
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) <= 1e-3 * y; }),
               cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                              [](double c) { return !(c > 0.0) || c > 200.0; }),
               cuts.end());

    detail::DeOptions<double> opt;
    opt.rel_tol = std::max(0.1 * rel_tol, 1e-13);
    ExpectationEstimate est;
    est.route = "double-exponential";
    double lo = 0.0;
    for (double cut : cuts) {
        const auto r = detail::tanh_sinh<double>(integrand, 1, lo, cut, opt);
        est.value += r.values[0];
        est.error += r.error * std::abs(r.values[0]);
        est.converged = est.converged && r.converged;
        lo = cut;
    }
    const auto r = detail::exp_sinh<double>(integrand, 1, lo, opt);
    est.value += r.values[0];
    est.error += r.error * std::abs(r.values[0]);
    est.converged = est.converged && r.converged;
    return est;
}

template <class Real>
std::pair<double, double> closed_sum(const PoleSet& poles, double gamma_bar, double a) {
    using std::abs;
    const auto expansion = residues<Real>(poles);
    Real sum = 0;
    Real magnitude = 0;
    for (std::size_t i = 0; i < expansion.theta.size(); ++i) {
        const auto& coef = expansion.coefficients[i];
        const Real lambda = expansion.theta[i] / Real(gamma_bar);
        const auto scaled_u = tricomi_u_scaled_ladder<Real>(static_cast<int>(coef.size()),
                                                            Real(1) - Real(a), lambda);
        for (std::size_t j = 0; j < coef.size(); ++j) {
            const Real term = coef[j] * scaled_u[j];
            sum += term;
            magnitude += abs(term);
        }
    }
    return {static_cast<double>(sum), static_cast<double>(magnitude)};
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::automatic: return "auto";
        case Method::quadrature: return "quadrature";
        case Method::closed_form: return "closed_form";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    if (name == "auto") return Method::automatic;
    if (name == "quadrature" || name == "quad") return Method::quadrature;
    if (name == "closed" || name == "closed_form") return Method::closed_form;
    if (name == "mc" || name == "monte_carlo") return Method::monte_carlo;
    return std::nullopt;
}

double qos_exponent(const LinkParameters& link) {
    const double a = link.theta * link.block_duration * link.bandwidth / std::log(2.0);
    require_exponent(a);
    return a;
}

ErRequest ErRequest::from_link(const ChannelParams& params, const LinkParameters& link) {
    ErRequest r;
    r.params = params;
    r.a_exponent = qos_exponent(link);
    r.link = link;
    return r;
}

std::optional<std::string> ErResult::diagnostic(std::string_view key) const {
    for (const auto& [k, v] : diagnostics) {
        if (k == key) return v;
    }
    return std::nullopt;
}

ExpectationEstimate expectation_quadrature(const ChannelParams& p, const DerivedParams& d,
                                           double a, double rel_tol) {
    require_exponent(a);
    double previous = std::numeric_limits<double>::quiet_NaN();
    double last_diff = std::numeric_limits<double>::infinity();
    for (int order : kLaguerreOrders) {
        const auto rule = cached_gauss_laguerre(order, a - 1.0);
        double value = 0.0;
        for (int k = 0; k < order; ++k) {
            const double w = rule->normalized_weights[k];
            if (w == 0.0) continue;
            value += w * std::exp(log_mgf(p, d, rule->nodes[k]));
        }
        if (!std::isnan(previous)) {
            last_diff = std::abs(value - previous);
            if (last_diff <= rel_tol * std::abs(value)) {
                ExpectationEstimate est;
                est.value = value;
                est.error = last_diff;
                est.route = "gauss-laguerre-" + std::to_string(order);
                return est;
            }
        }
        previous = value;
    }
    auto est = split_quadrature(p, d, a, rel_tol);
    est.error = std::max(est.error, 0.0);
    return est;
}

ExpectationEstimate expectation_closed_form(const ChannelParams& p, const DerivedParams& /*derived*/,
                                            const PoleSet& poles, double a, double rel_tol) {
    require_exponent(a);
    ExpectationEstimate est;
    auto [value, magnitude] = closed_sum<double>(poles, p.gamma_bar, a);
    est.cancellation = value != 0.0 ? magnitude / std::abs(value) : std::numeric_limits<double>::infinity();
    if (est.cancellation * kDoubleTermAccuracy <= 0.1 * rel_tol) {
        est.value = value;
        est.error = magnitude * kDoubleTermAccuracy;
        est.route = "binary64";
        return est;
    }
    std::tie(value, magnitude) = closed_sum<WideReal>(poles, p.gamma_bar, a);
    est.value = value;
    est.cancellation = magnitude / std::abs(value);
    est.error = magnitude * kWideTermAccuracy;
    est.route = "binary128";
    // near-coincident poles: even binary128 cannot absorb the cancellation
    est.converged = est.error <= rel_tol * std::abs(est.value);
    return est;
}

ExpectationEstimate expectation_closed_form(const ChannelParams& p, const DerivedParams& d, double a,
                                            double rel_tol) {
    return expectation_closed_form(p, d, build_pole_set(p, d), a, rel_tol);
}

double effective_rate(double j, double a) {
    require_exponent(a);
    if (!(j > 0.0 && j <= 1.0)) throw ValidationError("J", "must lie in (0, 1]");
    if (j == 1.0) return 0.0;
    return -std::log2(j) / a;
}

ErResult er_auto(const ErRequest& req) {
    validate(req.params);
    require_exponent(req.a_exponent);
    if (!(req.rel_tol >= 1e-12 && req.rel_tol <= 1e-2)) {
        throw ValidationError("rel_tol", "must lie in [1e-12, 1e-2]");
    }
    ErResult res;
    auto diag = [&](std::string key, std::string value) {
        res.diagnostics.emplace_back(std::move(key), std::move(value));
    };
    if (req.link) {
        diag("theta", num(req.link->theta));
        diag("T", num(req.link->block_duration));
        diag("B", num(req.link->bandwidth));
    }
    diag("A", num(req.a_exponent));

    const ChannelParams params = resolve_shadowing(req.params, req.large_m);
    if (req.params.unbounded_shadowing()) diag("m_resolved", num(params.m));
    const DerivedParams derived = derive(params);
    const double a = req.a_exponent;

    auto finish = [&](const ExpectationEstimate& est, Method used) {
        if (!est.converged) {
            throw NonConvergence(std::string(method_name(used)) + " did not reach rel_tol for mu=" + num(params.mu) +
                                     " m=" + num(params.m) + " kappa=" + num(params.kappa) +
                                     " eta=" + num(params.eta) + " rho2=" + num(params.rho2) +
                                     " gamma_bar=" + num(params.gamma_bar) + " A=" + num(a),
                                 est.value, est.error);
        }
        if (!(est.value > 0.0 && est.value <= 1.0)) {
            throw NonConvergence("expectation left (0, 1]", est.value, est.error);
        }
        res.expectation_j = est.value;
        res.error_estimate = est.error;
        res.method_used = used;
        res.rate = effective_rate(est.value, a);
        diag("route", est.route);
    };

    std::string reason;
    bool closed_ok = closed_form_regime(params, &reason);
    switch (req.method) {
        case Method::monte_carlo: {
            const McEstimate mc = estimate_er(params, a, req.mc);
            res.expectation_j = mc.j_hat;
            res.error_estimate = mc.j_stderr;
            res.rate = mc.rate_hat;
            res.method_used = Method::monte_carlo;
            diag("n_samples", std::to_string(mc.n_samples));
            diag("seed", std::to_string(mc.seed));
            return res;
        }
        case Method::closed_form: {
            if (!closed_ok) throw ClosedFormUnavailable(reason);
            const auto cf = expectation_closed_form(params, derived, a, req.rel_tol);
            finish(cf, Method::closed_form);
            diag("cancellation_ratio", num(cf.cancellation));
            break;
        }
        case Method::quadrature: finish(expectation_quadrature(params, derived, a, req.rel_tol), Method::quadrature); break;
        case Method::automatic: {
            const auto quad = expectation_quadrature(params, derived, a, req.rel_tol);
            std::optional<ExpectationEstimate> cf;
            if (closed_ok) {
                cf = expectation_closed_form(params, derived, a, req.rel_tol);
                if (!cf->converged) {
                    closed_ok = false;
                    reason = "closed form ill-conditioned (cancellation " + num(cf->cancellation) + ")";
                }
            }
            if (closed_ok) {
                finish(*cf, Method::closed_form);
                diag("cancellation_ratio", num(cf->cancellation));
                diag("quadrature_route", quad.route);
                diag("cross_check_rel_diff", num(rel_diff(cf->value, quad.value)));
            } else {
                finish(quad, Method::quadrature);
                diag("closed_form_skipped", reason);
            }
            break;
        }
    }

    if (req.params.unbounded_shadowing()) {
        const ChannelParams doubled = resolve_shadowing(req.params, 2.0 * req.large_m);
        const auto est = expectation_quadrature(doubled, derive(doubled), a, req.rel_tol);
        const double delta = std::abs(effective_rate(est.value, a) - res.rate);
        diag("shadowing_limit_rate_diff", num(delta));
        diag("shadowing_limit_converged", delta <= kShadowingLimitTolerance ? "yes" : "no");
    }
    return res;
}

}  // namespace fbrate
