#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fbrate/channel.hpp"
#include "fbrate/philox.hpp"

namespace fbrate {

/// Physical cluster layout realizing (mu, kappa, eta, rho2) for integer mu.
///
/// sigma_y2 = 1, sigma_x2 = eta, q^2 = kappa mu (1 + eta) / (1 + rho2),
/// p^2 = rho2 q^2, with the LoS means split equally over the clusters. M(s)
/// depends on p and q only through p^2 and q^2, so the split is immaterial.
struct ClusterGeometry {
    std::vector<double> p_components;
    std::vector<double> q_components;
    double sigma_x2 = 1.0;
    double sigma_y2 = 1.0;
    double normalization = 2.0;  // E[W] = (1 + kappa) mu (sigma_x2 + sigma_y2)

    double p2() const noexcept;
    double q2() const noexcept;
};

/// Throws ValidationError for non-integer mu.
ClusterGeometry geometry_from_params(const ChannelParams& params);

struct McConfig {
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 42;
    std::uint64_t chunk_size = std::uint64_t{1} << 16;
    unsigned threads = 0;  // 0: hardware concurrency; never affects the result
};

struct McEstimate {
    double j_hat = 0.0;
    double j_stderr = 0.0;
    double rate_hat = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Sample mean and its standard error.
struct McMoments {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// Draws gamma = gamma_bar W / E[W] with W = sum_i X_i^2 + Y_i^2,
/// X_i ~ N(sqrt(xi) p_i, sigma_x2), Y_i ~ N(sqrt(xi) q_i, sigma_y2) and the
/// LoS fluctuation xi ~ Gamma(shape m, mean 1).
class SnrSampler {
public:
    SnrSampler(ClusterGeometry geometry, const ChannelParams& params);

    template <class Engine>
    double operator()(Engine& engine) {
        const double root_xi = std::sqrt(shadowing_(engine));
        const double sx = std::sqrt(geometry_.sigma_x2);
        const double sy = std::sqrt(geometry_.sigma_y2);
        double w = 0.0;
        for (std::size_t i = 0; i < geometry_.p_components.size(); ++i) {
            const double x = root_xi * geometry_.p_components[i] + sx * normal_(engine);
            const double y = root_xi * geometry_.q_components[i] + sy * normal_(engine);
            w += x * x + y * y;
        }
        return scale_ * w;
    }

private:
    ClusterGeometry geometry_;
    double scale_;
    std::gamma_distribution<double> shadowing_;
    std::normal_distribution<double> normal_;
};

/// One SNR draw; convenience wrapper over SnrSampler.
double sample_snr(const ClusterGeometry& geometry, const ChannelParams& params, Philox4x32& engine);

/// Mean of statistic(gamma) over config.n_samples draws. Chunk k uses the
/// Philox substream (seed, k); chunk statistics are merged in chunk order,
/// so the result is bit-identical for any thread count.
McMoments estimate_mean(const ChannelParams& params, const McConfig& config,
                        const std::function<double(double)>& statistic);

/// J = E[(1 + gamma)^{-A}] and the effective rate. The m = inf sentinel is
/// resolved to kDefaultLargeM.
McEstimate estimate_er(const ChannelParams& params, double a_exponent, const McConfig& config);

/// The first n draws of the (seed, chunk_size) stream layout, in order.
std::vector<double> draw_snr_samples(const ChannelParams& params, std::uint64_t n,
                                     std::uint64_t seed,
                                     std::uint64_t chunk_size = std::uint64_t{1} << 16);

}  // namespace fbrate
