#include "fbrate/special_functions.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/special_functions/log1p.hpp>

#include "fbrate/detail/double_exponential.hpp"
#include "fbrate/errors.hpp"

namespace fbrate {

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be > 0");
    return boost::math::lgamma(x);
}

namespace {

template <class Real>
struct UDefaults;

template <>
struct UDefaults<double> {
    static constexpr double rel_tol = 1e-12;
    static constexpr int max_level = 9;
    static constexpr double asymptotic_min_z = 20.0;
};

template <>
struct UDefaults<WideReal> {
    static constexpr double rel_tol = 1e-27;
    static constexpr int max_level = 11;
    static constexpr double asymptotic_min_z = 40.0;
};

// z^{-a} sum_k (a)_k (a-b+1)_k / k! (-1/z)^k, stopped at the smallest term.
// Returns false if the terms start growing before the tolerance is met.
template <class Real>
bool tricomi_asymptotic(int a, Real b, Real z, Real rel_tol, bool scaled, Real& out) {
    using std::abs;
    using std::pow;
    const Real c = Real(a) - b + 1;
    const Real scale = scaled ? Real(1) : pow(z, -Real(a));
    Real term = 1;
    Real sum = 1;
    Real last = 1;
    for (int k = 0; k < 2000; ++k) {
        const Real next = term * (Real(a) + k) * (c + k) / (Real(k + 1) * -z);
        if (next == 0) {  // (c)_k hit a nonpositive integer: finite sum
            out = sum * scale;
            return true;
        }
        if (abs(next) > last) return false;
        sum += next;
        if (abs(next) <= rel_tol * abs(sum)) {
            out = sum * scale;
            return true;
        }
        last = abs(next);
        term = next;
    }
    return false;
}

template <class Real>
std::vector<Real> ladder(int j_max, Real shift, Real z, Real rel_tol, bool scaled) {
    using std::exp;
    using std::log;
    if (j_max < 1) throw std::domain_error("tricomi_u: first argument must be >= 1");
    if (!(z > 0) || !(boost::math::isfinite)(z)) throw std::domain_error("tricomi_u: z must be finite and > 0");
    if (!(rel_tol > 0)) rel_tol = Real(UDefaults<Real>::rel_tol);

    std::vector<Real> values(static_cast<std::size_t>(j_max));
    if (z >= Real(UDefaults<Real>::asymptotic_min_z)) {
        bool ok = true;
        for (int j = 1; j <= j_max && ok; ++j) {
            ok = tricomi_asymptotic<Real>(j, Real(j) + shift, z, rel_tol, scaled, values[j - 1]);
        }
        if (ok) return values;
    }

    // log((j-1)!) and, when scaled, -j log z folded into the per-j factor.
    const Real log_z = log(z);
    std::vector<Real> log_fact(static_cast<std::size_t>(j_max));
    log_fact[0] = scaled ? -log_z : Real(0);
    for (int j = 2; j <= j_max; ++j) {
        log_fact[j - 1] = log_fact[j - 2] + log(Real(j - 1)) - (scaled ? log_z : Real(0));
    }

    const Real p = shift - 1;  // exponent of (1 + t)
    auto head = [&](Real t, std::vector<Real>& out) {
        const Real base = p * boost::math::log1p(t) - z * t;
        const Real lt = log(t);
        for (int j = 1; j <= j_max; ++j) {
            out[j - 1] = exp(base + Real(j - 1) * lt - log_fact[j - 1]);
        }
    };
    // t = 1/u maps [1, inf) onto (0, 1]
    auto tail = [&](Real u, std::vector<Real>& out) {
        const Real lu = log(u);
        const Real base = -shift * lu + p * boost::math::log1p(u) - z / u;
        for (int j = 1; j <= j_max; ++j) {
            out[j - 1] = exp(base - Real(j) * lu - log_fact[j - 1]);
        }
    };

    detail::DeOptions<Real> opt;
    opt.rel_tol = rel_tol;
    opt.max_level = UDefaults<Real>::max_level;
    const auto width = static_cast<std::size_t>(j_max);
    const auto h = detail::tanh_sinh<Real>(head, width, Real(0), Real(1), opt);
    const auto t = detail::tanh_sinh<Real>(tail, width, Real(0), Real(1), opt);
    if (!h.converged || !t.converged) {
        const double err = static_cast<double>(h.error > t.error ? h.error : t.error);
        throw NonConvergence("tricomi_u: quadrature did not reach tolerance (z = " +
                                 std::to_string(static_cast<double>(z)) + ")",
                             static_cast<double>(h.values[j_max - 1] + t.values[j_max - 1]), err);
    }
    for (std::size_t k = 0; k < width; ++k) values[k] = h.values[k] + t.values[k];
    return values;
}

}  // namespace

template <class Real>
std::vector<Real> tricomi_u_ladder(int j_max, Real shift, Real z, Real rel_tol) {
    return ladder<Real>(j_max, shift, z, rel_tol, false);
}

template <class Real>
std::vector<Real> tricomi_u_scaled_ladder(int j_max, Real shift, Real z, Real rel_tol) {
    return ladder<Real>(j_max, shift, z, rel_tol, true);
}

template std::vector<double> tricomi_u_ladder<double>(int, double, double, double);
template std::vector<WideReal> tricomi_u_ladder<WideReal>(int, WideReal, WideReal, WideReal);
template std::vector<double> tricomi_u_scaled_ladder<double>(int, double, double, double);
template std::vector<WideReal> tricomi_u_scaled_ladder<WideReal>(int, WideReal, WideReal, WideReal);

double tricomi_u_int_a(int j, double b, double z) {
    return tricomi_u_ladder<double>(j, b - j, z).back();
}

QuadratureRule gauss_laguerre(int order, double alpha) {
    if (order < 1 || order > 512) throw std::domain_error("gauss_laguerre: order must be in [1, 512]");
    if (!(alpha > -1.0) || !std::isfinite(alpha)) {
        throw std::domain_error("gauss_laguerre: alpha must be finite and > -1");
    }
    // Jacobi matrix of the monic generalized Laguerre recurrence.
    Eigen::VectorXd diag(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int i = 0; i < order; ++i) {
        diag(i) = 2.0 * i + 1.0 + alpha;
        if (i + 1 < order) sub(i) = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
    }
    QuadratureRule rule;
    rule.order = order;
    rule.alpha_exponent = alpha;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    rule.normalized_weights.resize(order);
    const double mass = std::exp(ln_gamma(alpha + 1.0));
    if (order == 1) {
        rule.nodes[0] = diag(0);
        rule.normalized_weights[0] = 1.0;
        rule.weights[0] = mass;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gauss_laguerre: eigenvalue iteration failed");
    }
    for (int i = 0; i < order; ++i) {
        const double v0 = solver.eigenvectors()(0, i);
        rule.nodes[i] = solver.eigenvalues()(i);
        rule.normalized_weights[i] = v0 * v0;
        rule.weights[i] = mass * v0 * v0;
    }
    return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_laguerre(int order, double alpha) {
    static std::mutex mutex;
    static std::map<std::pair<int, double>, std::shared_ptr<const QuadratureRule>> cache;
    const auto key = std::make_pair(order, alpha);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadratureRule>(gauss_laguerre(order, alpha));
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(rule)).first->second;
}

namespace detail {

double expint_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("expint_e1: x must be > 0");
    constexpr double euler_gamma = 0.57721566490153286061;
    constexpr double eps = 1e-17;
    if (x <= 1.0) {
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < eps * std::abs(sum)) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // modified Lentz on the continued fraction e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return h * std::exp(-x);
}

}  // namespace detail

}  // namespace fbrate
