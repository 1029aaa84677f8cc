#include <doctest.h>

#include <cmath>
#include <random>

#include "fbrate/channel.hpp"
#include "fbrate/mgf.hpp"
#include "oracles.hpp"

using namespace fbrate;

TEST_CASE("MGF spot values") {
    const ChannelParams los{.mu = 2, .m = 1, .kappa = 1, .eta = 0.1, .rho2 = 0.1};
    CHECK(mgf(los, derive(los), 0.0).value == 1.0);
    CHECK(mgf(los, derive(los), 1.0).value == doctest::Approx(0.4849699398797595183760).epsilon(1e-14));

    const ChannelParams rayleigh = resolve_shadowing(preset(Preset::rayleigh));
    CHECK(mgf(rayleigh, derive(rayleigh), 1.0).value == doctest::Approx(0.5).epsilon(1e-12));

    const auto point = mgf(los, derive(los), 2.5);
    CHECK(point.s == 2.5);
    CHECK(point.value == doctest::Approx(std::exp(point.log_value)).epsilon(1e-15));
    CHECK_THROWS_AS(mgf(los, derive(los), -1.0), std::invalid_argument);
}

TEST_CASE("MGF is decreasing and log-convex") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const ChannelParams p{.mu = 0.3 + 6 * u(rng), .m = 0.2 + 8 * u(rng), .kappa = 5 * u(rng),
                              .eta = std::exp(-3 + 6 * u(rng)), .rho2 = std::exp(-3 + 6 * u(rng)),
                              .gamma_bar = std::exp(-3 + 8 * u(rng))};
        const auto d = derive(p);
        double prev = 0.0, prev2 = 0.0;
        bool ok = true;
        for (int k = 0; k <= 60; ++k) {
            const double s = 0.05 * k;
            const double lv = log_mgf(p, d, s);
            if (k >= 1 && !(lv < prev)) ok = false;
            if (k >= 2 && lv - 2 * prev + prev2 < -1e-12 * std::abs(lv)) ok = false;
            prev2 = prev;
            prev = lv;
        }
        CHECK(ok);
    }
}

TEST_CASE("mean check equals gamma_bar analytically and by finite difference") {
    const ChannelParams los{.mu = 2, .m = 1, .kappa = 1, .eta = 0.1, .rho2 = 0.1};
    CHECK(mgf_mean_check(los, derive(los)) == doctest::Approx(1.0).epsilon(1e-14));
    auto ray = resolve_shadowing(preset(Preset::rayleigh, {.gamma_bar = 3}));
    CHECK(mgf_mean_check(ray, derive(ray)) == doctest::Approx(3.0).epsilon(1e-12));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const ChannelParams p{.mu = 0.3 + 6 * u(rng), .m = 0.2 + 8 * u(rng), .kappa = 5 * u(rng),
                              .eta = std::exp(-3 + 6 * u(rng)), .rho2 = std::exp(-3 + 6 * u(rng)),
                              .gamma_bar = 0.5};
        const auto d = derive(p);
        // one-sided difference of log M with Richardson extrapolation (M is only defined for s >= 0)
        const double h = 1e-4;
        auto slope = [&](double step) { return -(log_mgf(p, d, step) - log_mgf(p, d, 0.0)) / step; };
        const double fd = 2 * slope(h / 2) - slope(h);
        CHECK(mgf_mean_check(p, d) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(fd - 0.5) <= 1e-6 * 0.5);
    }
}

TEST_CASE("eta = 1 matches the kappa-mu shadowed MGF") {
    for (double mu : {0.7, 1.0, 2.0, 3.5}) {
        for (double m : {0.5, 1.0, 2.0, 7.0}) {
            for (double kappa : {0.0, 0.4, 3.0}) {
                for (double rho2 : {0.1, 1.0, 5.0}) {
                    const ChannelParams p{.mu = mu, .m = m, .kappa = kappa, .eta = 1, .rho2 = rho2, .gamma_bar = 4};
                    const auto d = derive(p);
                    for (double s : {0.01, 0.3, 1.0, 4.0, 50.0}) {
                        const double want = oracle::kms_mgf(mu, m, kappa, 4, s);
                        CHECK(mgf(p, d, s).value == doctest::Approx(want).epsilon(1e-10));
                    }
                }
            }
        }
    }
}

TEST_CASE("log-space MGF stays finite far into the tail") {
    const ChannelParams p{.mu = 6, .m = 300, .kappa = 2, .eta = 0.5, .rho2 = 1, .gamma_bar = 1e3};
    const auto d = derive(p);
    const double lv = log_mgf(p, d, 1e6);
    CHECK(std::isfinite(lv));
    CHECK(lv < -50);
}
