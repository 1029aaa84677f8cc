#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fbrate/channel.hpp"
#include "fbrate/effective_rate.hpp"
#include "fbrate/errors.hpp"
#include "fbrate/mgf.hpp"
#include "fbrate/monte_carlo.hpp"
#include "fbrate/philox.hpp"

using namespace fbrate;

namespace {

const ChannelParams kLos{.mu = 2, .m = 1, .kappa = 1, .eta = 0.1, .rho2 = 0.1};

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
    using B = Philox4x32::Block;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::bijection(B{0, 0, 0, 0}, K{0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::bijection(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::bijection(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox streams are reproducible and distinct") {
    Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool same = true, differs_stream = false, differs_key = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        same = same && x == b();
        differs_stream = differs_stream || x != c();
        differs_key = differs_key || x != d();
    }
    CHECK(same);
    CHECK(differs_stream);
    CHECK(differs_key);
}

TEST_CASE("cluster geometry") {
    auto g = geometry_from_params({.mu = 1, .m = 1, .kappa = 0, .eta = 1});
    CHECK(g.p2() == 0.0);
    CHECK(g.q2() == 0.0);
    CHECK(g.normalization == 2.0);

    g = geometry_from_params(kLos);
    CHECK(g.q2() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g.p2() == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(g.normalization == doctest::Approx(4.4).epsilon(1e-14));
    CHECK(g.p_components.size() == 2);

    g = geometry_from_params({.mu = 1, .m = 1, .kappa = 1, .eta = 1, .rho2 = 1});
    CHECK(g.p2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.q2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.normalization == doctest::Approx(4.0).epsilon(1e-14));

    // kappa, eta and rho2 recovered from the geometry
    for (const ChannelParams& p : {kLos, ChannelParams{.mu = 3, .m = 2, .kappa = 0.7, .eta = 2.5, .rho2 = 4}}) {
        g = geometry_from_params(p);
        const double mu = static_cast<double>(g.p_components.size());
        CHECK(std::abs((g.p2() + g.q2()) / (mu * (g.sigma_x2 + g.sigma_y2)) - p.kappa) <= 1e-12);
        CHECK(std::abs(g.sigma_x2 / g.sigma_y2 - p.eta) <= 1e-12);
        CHECK(std::abs(g.p2() / g.q2() - p.rho2) <= 1e-12);
    }
    CHECK_THROWS_AS(geometry_from_params({.mu = 1.5}), ValidationError);
}

TEST_CASE("sample moments") {
    const McConfig cfg{.n_samples = 1'000'000, .seed = 42};
    const auto mean = estimate_mean(kLos, cfg, [](double g) { return g; });
    CHECK(std::abs(mean.mean - 1.0) <= 4 * mean.std_error);
    const auto lap = estimate_mean(kLos, cfg, [](double g) { return std::exp(-g); });
    CHECK(std::abs(lap.mean - mgf(kLos, derive(kLos), 1.0).value) <= 3 * lap.std_error);
}

namespace {

// sqrt(n) * sup |F_n - F| against Exponential(mean gamma_bar)
double scaled_ks(const ChannelParams& p, std::uint64_t n, std::uint64_t seed) {
    auto x = draw_snr_samples(p, n, seed);
    std::sort(x.begin(), x.end());
    const double nn = static_cast<double>(x.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = -std::expm1(-x[i] / p.gamma_bar);
        dmax = std::max({dmax, std::abs(f - i / nn), std::abs((i + 1) / nn - f)});
    }
    return dmax * std::sqrt(nn);
}

}  // namespace

TEST_CASE("exponential SNR under Beckmann proxy passes KS") {
    const ChannelParams p{.mu = 1, .m = 1e4, .kappa = 0, .eta = 1, .gamma_bar = 2};
    CHECK(scaled_ks(p, 1'000'000, 1) < 1.628);  // 1% critical value

    // The statistic over independent seeds should follow the Kolmogorov law (mean 0.8687, sd 0.26).
    double sum = 0.0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) sum += scaled_ks(p, 250'000, seed);
    CHECK(std::abs(sum / 20 - 0.8687) < 3 * 0.26 / std::sqrt(20.0));
}

TEST_CASE("estimate_er reference values") {
    const McConfig cfg{.n_samples = 1'000'000, .seed = 42};
    const auto ray = estimate_er(resolve_shadowing(preset(Preset::rayleigh)), 2.0, cfg);
    CHECK(std::abs(ray.j_hat - 0.4036526376768059) <= 3 * ray.j_stderr);
    CHECK(ray.rate_hat == -std::log2(ray.j_hat) / 2.0);
    CHECK(ray.n_samples == 1'000'000);
    CHECK(ray.seed == 42);

    const auto los = estimate_er(kLos, 2.0, cfg);
    CHECK(std::abs(los.j_hat - 0.3822381992098284) <= 3 * los.j_stderr);
    CHECK(los.j_stderr > 0.0);

    CHECK_THROWS_AS(estimate_er(kLos, 0.0, cfg), ValidationError);
    CHECK_THROWS_AS(estimate_er({.mu = 2.5}, 1.0, cfg), ValidationError);
    CHECK_THROWS_AS(estimate_er(kLos, 1.0, {.n_samples = 1}), ValidationError);
    CHECK_THROWS_AS(estimate_er(kLos, 1.0, {.chunk_size = 0}), ValidationError);
}

TEST_CASE("results do not depend on the thread count") {
    const ChannelParams p{.mu = 3, .m = 0.7, .kappa = 5, .eta = 2, .rho2 = 0.5, .gamma_bar = 3};
    McConfig cfg{.n_samples = 300'001, .seed = 9, .chunk_size = 4096, .threads = 1};
    const auto one = estimate_er(p, 1.5, cfg);
    for (unsigned t : {2u, 3u, 8u, 0u}) {
        cfg.threads = t;
        const auto many = estimate_er(p, 1.5, cfg);
        CHECK(many.j_hat == one.j_hat);
        CHECK(many.j_stderr == one.j_stderr);
    }
    cfg.seed = 10;
    CHECK(estimate_er(p, 1.5, cfg).j_hat != one.j_hat);
    const auto samples = draw_snr_samples(p, 10000, 9, 4096);
    CHECK(samples == draw_snr_samples(p, 10000, 9, 4096));
    CHECK(std::all_of(samples.begin(), samples.end(), [](double g) { return g >= 0.0; }));
}

TEST_CASE("gamma sampling for m below one") {
    const ChannelParams p{.mu = 1, .m = 0.3, .kappa = 8, .eta = 1, .rho2 = 1};
    const McConfig cfg{.n_samples = 400'000, .seed = 42};
    const auto mean = estimate_mean(p, cfg, [](double g) { return g; });
    CHECK(std::abs(mean.mean - 1.0) <= 4 * mean.std_error);
    const auto lap = estimate_mean(p, cfg, [](double g) { return std::exp(-0.5 * g); });
    CHECK(std::abs(lap.mean - mgf(p, derive(p), 0.5).value) <= 4 * lap.std_error);
}
