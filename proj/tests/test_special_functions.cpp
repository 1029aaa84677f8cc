#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/expint.hpp>

#include "fbrate/errors.hpp"
#include "fbrate/special_functions.hpp"
#include "oracles.hpp"

using namespace fbrate;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("ln_gamma reference values") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rel(ln_gamma(0.5), 0.5 * std::log(std::numbers::pi)) < 1e-14);
    CHECK(rel(ln_gamma(10.0), std::log(362880.0)) < 1e-14);
    CHECK(rel(std::exp(ln_gamma(2.5)), 1.329340388179137020474) < 1e-14);
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("E1 against a series oracle and Boost") {
    CHECK(rel(detail::expint_e1(1.0), 0.2193839343955202736772) < 1e-14);
    for (double x : {1e-6, 0.01, 0.3, 0.99, 1.01, 2.5, 10.0, 40.0, 300.0}) {
        CAPTURE(x);
        CHECK(rel(detail::expint_e1(x), boost::math::expint(1, x)) < 1e-13);
    }
    CHECK_THROWS_AS(detail::expint_e1(0.0), std::domain_error);
}

TEST_CASE("Tricomi U exponential-integral identities") {
    CHECK(rel(tricomi_u_int_a(1, 0.0, 1.0), 0.4036526376768059256589) < 1e-11);
    CHECK(rel(tricomi_u_int_a(1, 1.0, 1.0), 0.5963473623231940743411) < 1e-11);
    for (double z : {0.01, 0.5, 3.0, 17.0, 60.0}) {
        CAPTURE(z);
        const double ez = std::exp(z) * boost::math::expint(1, z);
        CHECK(rel(tricomi_u_int_a(1, 1.0, z), ez) < 1e-11);
        CHECK(rel(tricomi_u_int_a(1, 0.0, z), 1 - z * ez) < 1e-9);
    }
}

TEST_CASE("Tricomi U frozen high-precision values") {
    struct Row {
        int a;
        double b, z, want;
    };
    const Row rows[] = {
        {3, 0.5, 2.0, 0.01103796273975098680395},
        {1, -0.5, 1e-3, 0.6654054728749914990},
        {2, 0.5, 1e-4, 1.298411734391640917},
        {4, -1.0, 0.05, 0.007068903567627876328},
        {1, 1.5, 50.0, 0.01980571929434638428},
        {3, 3.0, 200.0, 1.231615896783121207e-7},
        {6, 2.0, 7.5, 4.57100431648346983e-7},
        {2, -3.0, 1e4, 9.988012586575101879e-9},
        {5, 5.5, 0.3, 104.9271499552087403},
        {1, 0.0, 15.06222081039093402398, 0.05897733195077076982},
        {1, 0.0, 1.071112522942398576605, 0.3904609705919299681},
    };
    for (const auto& r : rows) {
        CAPTURE(r.a);
        CAPTURE(r.b);
        CAPTURE(r.z);
        CHECK(rel(tricomi_u_int_a(r.a, r.b, r.z), r.want) < 1e-10);
    }
}

TEST_CASE("Tricomi U against the defining integral") {
    // fine trapezoid on t = e^v, independent of either library integrator
    auto trapezoid = [](int a, double b, double z) {
        const double h = 1e-3;
        double sum = 0.0;
        for (double v = -40.0; v <= 8.0; v += h) {
            const double t = std::exp(v);
            sum += std::exp(a * v + (b - a - 1) * std::log1p(t) - z * t);
        }
        return sum * h / std::tgamma(a);
    };
    CHECK(rel(tricomi_u_int_a(3, 0.5, 2.0), trapezoid(3, 0.5, 2.0)) < 1e-10);

    // bridge identity U(1; 2 - A; z) = int (1 + g)^-A e^{-z g} dg
    for (double a : {0.3, 1.0, 2.0, 5.0, 11.5}) {
        for (double z : {0.02, 0.4, 1.0, 6.0, 35.0}) {
            CAPTURE(a);
            CAPTURE(z);
            auto f = [&](double g) { return std::pow(1 + g, -a) * std::exp(-z * g); };
            CHECK(rel(tricomi_u_int_a(1, 2 - a, z), oracle::integrate_half_line(f)) < 1e-9);
        }
    }
}

TEST_CASE("Tricomi U three-term recurrence in a") {
    // U(a-1) + (b - 2a - z) U(a) + a(a - b + 1) U(a+1) = 0
    for (int a = 2; a <= 8; ++a) {
        for (double b : {-2.5, 0.0, 1.0, 3.7}) {
            for (double z : {0.05, 1.3, 9.0, 45.0}) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(z);
                const double um = tricomi_u_int_a(a - 1, b, z);
                const double u0 = tricomi_u_int_a(a, b, z);
                const double up = tricomi_u_int_a(a + 1, b, z);
                const double resid = um + (b - 2 * a - z) * u0 + a * (a - b + 1) * up;
                const double scale = std::abs(um) + std::abs((b - 2 * a - z) * u0) + std::abs(a * (a - b + 1) * up);
                CHECK(std::abs(resid) <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("Tricomi ladders: scaled form, wide precision and input checks") {
    const double shift = -1.0;  // U(j; j - 1; z)
    for (double z : {0.02, 0.7, 5.0, 30.0, 300.0}) {
        CAPTURE(z);
        const auto plain = tricomi_u_ladder<double>(12, shift, z);
        const auto scaled = tricomi_u_scaled_ladder<double>(12, shift, z);
        const auto wide = tricomi_u_scaled_ladder<WideReal>(12, WideReal(shift), WideReal(z));
        for (int j = 1; j <= 12; ++j) {
            CAPTURE(j);
            CHECK(rel(plain[j - 1], tricomi_u_int_a(j, j + shift, z)) < 1e-12);
            CHECK(rel(scaled[j - 1], std::pow(z, j) * plain[j - 1]) < 1e-11);
            CHECK(scaled[j - 1] > 0.0);
            CHECK(scaled[j - 1] <= 1.0 + 1e-15);
            CHECK(rel(scaled[j - 1], static_cast<double>(wide[j - 1])) < 1e-12);
        }
    }
    CHECK_THROWS_AS(tricomi_u_int_a(0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(tricomi_u_int_a(1, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(tricomi_u_int_a(1, 1.0, -2.0), std::domain_error);
}

TEST_CASE("Gauss-Laguerre closed-form rules") {
    const auto one = gauss_laguerre(1, 0.0);
    REQUIRE(one.nodes.size() == 1);
    CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

    const auto two = gauss_laguerre(2, 0.0);
    const double r2 = std::sqrt(2.0);
    CHECK(rel(two.nodes[0], 2 - r2) < 1e-14);
    CHECK(rel(two.nodes[1], 2 + r2) < 1e-14);
    CHECK(rel(two.weights[0], (2 + r2) / 4) < 1e-14);
    CHECK(rel(two.weights[1], (2 - r2) / 4) < 1e-14);

    const auto rule = gauss_laguerre(64, 1.5);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(rel(total, 1.329340388179137020474) < 1e-12);
}

TEST_CASE("Gauss-Laguerre exactness and ordering") {
    for (double alpha : {-0.5, 0.0, 1.0, 1.5, 4.0}) {
        const auto rule = gauss_laguerre(8, alpha);
        for (int k = 0; k <= 9; ++k) {
            double sum = 0.0;
            for (int i = 0; i < 8; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            CAPTURE(alpha);
            CAPTURE(k);
            CHECK(rel(sum, std::tgamma(alpha + k + 1)) < 1e-12);
        }
    }
    for (int order : {4, 32, 128, 512}) {
        const auto rule = gauss_laguerre(order, 0.7);
        CAPTURE(order);
        CHECK(rule.nodes.front() > 0.0);
        bool increasing = true;
        bool positive = true;
        double sum = 0.0;
        for (int i = 0; i < order; ++i) {
            if (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1])) increasing = false;
            if (!(rule.normalized_weights[i] >= 0.0)) positive = false;
            sum += rule.normalized_weights[i];
        }
        CHECK(increasing);
        CHECK(positive);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(gauss_laguerre(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gauss_laguerre(513, 0.0), std::domain_error);
    CHECK_THROWS_AS(gauss_laguerre(8, -1.0), std::domain_error);
}

TEST_CASE("Gauss-Laguerre cache returns shared rules") {
    const auto a = cached_gauss_laguerre(32, 0.25);
    const auto b = cached_gauss_laguerre(32, 0.25);
    CHECK(a.get() == b.get());
    CHECK(a->nodes == gauss_laguerre(32, 0.25).nodes);
}
