#pragma once

// Double-exponential (tanh-sinh / exp-sinh) quadrature, templated on the
// floating-point type so the same code serves binary64 and binary128.
// Integrands are vector valued: f(x, out) fills out[0..width) and all
// components share the abscissae, which lets a family of integrals with a
// common weight be computed in one pass.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>

namespace fbrate::detail {

template <class Real>
struct DeResult {
    std::vector<Real> values;
    Real error = 0;  // max relative change between the last two levels
    int level = 0;
    bool converged = false;
};

template <class Real>
struct DeOptions {
    Real rel_tol = Real(1e-12);
    int min_level = 3;
    int max_level = 10;
    double t_cap = 7.0;
};

namespace de_impl {

template <class Real>
struct Node {
    Real x;
    Real w;
    bool valid;
};

template <class Real>
Node<Real> tanh_sinh_node(Real t, Real a, Real b) {
    using std::cosh;
    using std::exp;
    using std::abs;
    using std::sinh;
    const Real half_pi = boost::math::constants::half_pi<Real>();
    const Real u = half_pi * sinh(t);
    const Real e = exp(-2 * abs(u));
    const Real len = b - a;
    const Real c = len * e / (1 + e);
    const Real w = len * boost::math::constants::pi<Real>() * cosh(t) * e / ((1 + e) * (1 + e));
    const Real x = t < 0 ? a + c : b - c;
    const bool valid = c > 0 && w > 0 && x > a && x < b;
    return {x, w, valid};
}

template <class Real>
Node<Real> exp_sinh_node(Real t, Real a) {
    using std::cosh;
    using std::exp;
    using std::sinh;
    using std::isfinite;
    const Real half_pi = boost::math::constants::half_pi<Real>();
    const Real g = exp(half_pi * sinh(t));
    const Real x = a + g;
    const Real w = half_pi * cosh(t) * g;
    const bool valid = g > 0 && x > a && (isfinite)(x) && (isfinite)(w);
    return {x, w, valid};
}

template <class Real, class NodeFn, class F>
DeResult<Real> integrate(NodeFn node, F&& f, std::size_t width, const DeOptions<Real>& opt) {
    using std::abs;
    using std::ldexp;
    const Real eps = std::numeric_limits<Real>::epsilon();
    std::vector<Real> buf(width);
    std::vector<Real> total(width, Real(0));

    auto accumulate = [&](Real t, std::vector<Real>& into) -> Real {
        const auto nd = node(t);
        if (!nd.valid) return Real(-1);
        f(nd.x, buf);
        Real biggest = 0;
        for (std::size_t k = 0; k < width; ++k) {
            const Real term = nd.w * buf[k];
            into[k] += term;
            biggest = std::max(biggest, Real(abs(term)));
        }
        return biggest;
    };

    // Level 0 (h = 1) walks outwards until contributions vanish, which also
    // fixes the truncation window for the finer levels.
    accumulate(Real(0), total);
    auto running_max = [&] {
        Real r = 0;
        for (const auto& v : total) r = std::max(r, Real(abs(v)));
        return r;
    };
    Real t_lo = 0, t_hi = 0;
    for (int dir : {+1, -1}) {
        int small = 0;
        for (int i = 1; i <= static_cast<int>(opt.t_cap); ++i) {
            const Real t = Real(dir * i);
            const Real biggest = accumulate(t, total);
            if (biggest < 0) break;
            (dir > 0 ? t_hi : t_lo) = t;
            if (i >= 3 && biggest <= eps * eps * running_max()) {
                if (++small >= 2) break;
            } else {
                small = 0;
            }
        }
    }
    // Extend by one unit step: the scan stops one sample after the tail died.
    t_hi = t_hi + 1;
    t_lo = t_lo - 1;

    DeResult<Real> out;
    out.values = total;
    std::vector<Real> previous = total;
    for (int level = 1; level <= opt.max_level; ++level) {
        const Real h = ldexp(Real(1), -level);
        for (Real t = h; t <= t_hi; t += 2 * h) accumulate(t, total);
        for (Real t = -h; t >= t_lo; t -= 2 * h) accumulate(t, total);
        Real worst = 0;
        for (std::size_t k = 0; k < width; ++k) {
            out.values[k] = h * total[k];
            const Real scale = abs(out.values[k]);
            const Real diff = abs(out.values[k] - previous[k]);
            const Real rel = scale > 0 ? diff / scale : diff;
            worst = std::max(worst, rel);
        }
        previous = out.values;
        out.level = level;
        out.error = worst;
        if (level >= opt.min_level && worst <= opt.rel_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace de_impl

/// Integral over the finite interval [a, b]; endpoint singularities allowed.
template <class Real, class F>
DeResult<Real> tanh_sinh(F&& f, std::size_t width, Real a, Real b, const DeOptions<Real>& opt = {}) {
    return de_impl::integrate<Real>([&](Real t) { return de_impl::tanh_sinh_node(t, a, b); },
                                    std::forward<F>(f), width, opt);
}

/// Integral over [a, infinity) for integrands decaying at infinity.
template <class Real, class F>
DeResult<Real> exp_sinh(F&& f, std::size_t width, Real a, const DeOptions<Real>& opt = {}) {
    return de_impl::integrate<Real>([&](Real t) { return de_impl::exp_sinh_node(t, a); },
                                    std::forward<F>(f), width, opt);
}

}  // namespace fbrate::detail
