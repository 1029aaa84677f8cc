#include "fbrate/poles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fbrate/errors.hpp"
#include "fbrate/special_functions.hpp"

namespace fbrate {

namespace {

constexpr double kIntegralTolerance = 1e-9;

bool near_integer(double v, long& out) {
    const double r = std::round(v);
    if (std::abs(v - r) > kIntegralTolerance) return false;
    out = static_cast<long>(r);
    return true;
}

void add_pole(std::vector<Pole>& poles, double theta, int multiplicity) {
    for (auto& p : poles) {
        if (roots_coincide(p.theta, theta)) {
            p.multiplicity += multiplicity;
            return;
        }
    }
    poles.push_back({theta, multiplicity});
}

void add_numerator(std::vector<NumeratorFactor>& factors, double theta, int exponent) {
    for (auto& f : factors) {
        if (roots_coincide(f.theta, theta)) {
            f.exponent += exponent;
            return;
        }
    }
    factors.push_back({theta, exponent});
}

}  // namespace

int PoleSet::total_multiplicity() const noexcept {
    return std::accumulate(poles.begin(), poles.end(), 0,
                           [](int acc, const Pole& p) { return acc + p.multiplicity; });
}

bool closed_form_regime(const ChannelParams& p, std::string* reason) {
    auto fail = [&](const char* why) {
        if (reason) *reason = why;
        return false;
    };
    long m = 0;
    long half_mu = 0;
    if (!std::isfinite(p.m) || !near_integer(p.m, m) || m < 1) {
        return fail("closed form requires a positive integer m");
    }
    if (!near_integer(p.mu / 2.0, half_mu) || half_mu < 1) {
        return fail("closed form requires even integer mu");
    }
    if (2 * m + 2 * half_mu > kMaxPoleOrder) {
        return fail("closed form pole order 2m + mu exceeds 500");
    }
    return true;
}

PoleSet build_pole_set(const ChannelParams& params, const DerivedParams& d) {
    std::string reason;
    if (!closed_form_regime(params, &reason)) throw ClosedFormUnavailable(reason);
    const int m = static_cast<int>(std::lround(params.m));
    const int half_mu = static_cast<int>(std::lround(params.mu / 2.0));

    PoleSet set;
    add_pole(set.poles, d.c1, m);
    add_pole(set.poles, d.c2, m);
    const double omega_over_eta = d.omega_cap / params.eta;
    if (half_mu > m) {
        set.group_count = 4;
        add_pole(set.poles, omega_over_eta, half_mu - m);
        add_pole(set.poles, d.omega_cap, half_mu - m);
    } else if (half_mu < m) {
        add_numerator(set.numerator, omega_over_eta, m - half_mu);
        add_numerator(set.numerator, d.omega_cap, m - half_mu);
        // A numerator root that coincides with a pole (eta = 1 puts c2 on Omega)
        // must use the identical value, or the cancellation in the closed form
        // amplifies the mismatch.
        for (auto& f : set.numerator) {
            for (const auto& pole : set.poles) {
                if (roots_coincide(f.theta, pole.theta)) f.theta = pole.theta;
            }
        }
    }
    return set;
}

template <class Real>
Real BasicExpansion<Real>::evaluate(Real x) const {
    Real sum = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const Real inv = 1 / (1 + x / theta[i]);
        Real power = inv;
        for (const Real& a : coefficients[i]) {
            sum += a * power;
            power *= inv;
        }
    }
    return sum;
}

template <class Real>
BasicExpansion<Real> residues(const PoleSet& set) {
    using std::pow;
    if (set.total_multiplicity() > kMaxPoleOrder) {
        throw ClosedFormUnavailable("pole order exceeds 500");
    }
    BasicExpansion<Real> out;
    for (std::size_t i = 0; i < set.poles.size(); ++i) {
        const Pole& pole = set.poles[i];
        const Real ti = Real(pole.theta);

        // Cofactor of pole i as prod_k a_k^{p_k} (1 + b_k u)^{p_k} times u^{shift},
        // u = 1 + x/theta_i. Numerator factors sitting on the pole contribute
        // the pure power u^{shift}.
        struct Factor {
            Real a, b;
            int power;
        };
        std::vector<Factor> factors;
        int shift = 0;
        auto push = [&](double theta_k, int power) {
            const Real tk = Real(theta_k);
            factors.push_back({(tk - ti) / tk, ti / (tk - ti), power});
        };
        for (std::size_t k = 0; k < set.poles.size(); ++k) {
            if (k != i) push(set.poles[k].theta, -set.poles[k].multiplicity);
        }
        for (const auto& f : set.numerator) {
            if (roots_coincide(f.theta, pole.theta)) {
                shift += f.exponent;
            } else {
                push(f.theta, f.exponent);
            }
        }

        const int w = pole.multiplicity;
        const int n_terms = w - shift;
        if (n_terms <= 0) {  // fully cancelled by the numerator
            out.theta.push_back(ti);
            out.coefficients.emplace_back(static_cast<std::size_t>(w), Real(0));
            continue;
        }

        // log of the cofactor: L_n = sum_k p_k (-1)^{n+1} b_k^n / n
        std::vector<Real> log_coef(static_cast<std::size_t>(n_terms), Real(0));
        for (const auto& f : factors) {
            Real bn = 1;
            for (int n = 1; n < n_terms; ++n) {
                bn *= f.b;
                const Real sign = (n % 2 == 1) ? Real(1) : Real(-1);
                log_coef[n] += Real(f.power) * sign * bn / Real(n);
            }
        }
        // exp of the series: g_n = (1/n) sum_{k=1}^{n} k L_k g_{n-k}
        std::vector<Real> g(static_cast<std::size_t>(n_terms), Real(0));
        g[0] = 1;
        for (const auto& f : factors) g[0] *= pow(f.a, f.power);
        for (int n = 1; n < n_terms; ++n) {
            Real acc = 0;
            for (int k = 1; k <= n; ++k) acc += Real(k) * log_coef[k] * g[n - k];
            g[n] = acc / Real(n);
        }

        std::vector<Real> coef(static_cast<std::size_t>(w), Real(0));
        for (int j = 1; j <= n_terms; ++j) coef[j - 1] = g[n_terms - j];
        out.theta.push_back(ti);
        out.coefficients.push_back(std::move(coef));
    }
    return out;
}

template struct BasicExpansion<double>;
template struct BasicExpansion<WideReal>;
template BasicExpansion<double> residues<double>(const PoleSet&);
template BasicExpansion<WideReal> residues<WideReal>(const PoleSet&);

double pdf(const ChannelParams& params, const PartialFractionExpansion& e, double gamma) {
    if (!(gamma >= 0.0)) throw ValidationError("gamma", "must be >= 0");
    double sum = 0.0;
    double magnitude = 0.0;
    for (std::size_t i = 0; i < e.theta.size(); ++i) {
        const double lambda = e.theta[i] / params.gamma_bar;
        const double log_lambda = std::log(lambda);
        const auto& a = e.coefficients[i];
        for (std::size_t jj = 0; jj < a.size(); ++jj) {
            if (a[jj] == 0.0) continue;
            const int j = static_cast<int>(jj) + 1;
            double kernel;
            if (gamma == 0.0) {
                kernel = (j == 1) ? lambda : 0.0;
            } else {
                kernel = std::exp(j * log_lambda + (j - 1) * std::log(gamma) -
                                  ln_gamma(static_cast<double>(j)) - lambda * gamma);
            }
            const double term = a[jj] * kernel;
            sum += term;
            magnitude += std::abs(term);
        }
    }
    if (sum < -1e-12 * std::max(1.0, magnitude)) {
        throw std::logic_error("pdf: negative density, residue table is inconsistent");
    }
    return std::max(sum, 0.0);
}

}  // namespace fbrate
