#include "fbrate/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "fbrate/effective_rate.hpp"
#include "fbrate/errors.hpp"

namespace fbrate {

namespace {

int integer_mu(const ChannelParams& params) {
    const double r = std::round(params.mu);
    if (std::abs(params.mu - r) > 1e-9 || r < 1.0) {
        throw ValidationError("mu", "Monte-Carlo sampling needs an integer number of clusters");
    }
    return static_cast<int>(r);
}

// Welford accumulator; merge() is Chan's pairwise update.
struct Running {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }

    void merge(const Running& o) {
        if (o.n == 0) return;
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(o.n);
        const double total = na + nb;
        const double delta = o.mean - mean;
        mean += delta * nb / total;
        m2 += o.m2 + delta * delta * na * nb / total;
        n += o.n;
    }
};

std::uint64_t chunk_count(std::uint64_t n, std::uint64_t chunk) { return (n + chunk - 1) / chunk; }

template <class Body>
void for_each_chunk(std::uint64_t chunks, unsigned threads, Body&& body) {
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(chunks, 1)));
    std::atomic<std::uint64_t> next{0};
    auto run = [&] {
        for (std::uint64_t k = next++; k < chunks; k = next++) body(k);
    };
    if (workers <= 1) {
        run();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
}

void check_config(const McConfig& config) {
    if (config.n_samples < 2) throw ValidationError("n_samples", "must be >= 2");
    if (config.chunk_size < 1) throw ValidationError("chunk_size", "must be >= 1");
}

}  // namespace

double ClusterGeometry::p2() const noexcept {
    double s = 0.0;
    for (double p : p_components) s += p * p;
    return s;
}

double ClusterGeometry::q2() const noexcept {
    double s = 0.0;
    for (double q : q_components) s += q * q;
    return s;
}

ClusterGeometry geometry_from_params(const ChannelParams& params) {
    validate(params);
    const int clusters = integer_mu(params);
    ClusterGeometry g;
    g.sigma_y2 = 1.0;
    g.sigma_x2 = params.eta;
    const double q2 = params.kappa * clusters * (1.0 + params.eta) / (1.0 + params.rho2);
    const double p2 = params.rho2 * q2;
    const double root_mu = std::sqrt(static_cast<double>(clusters));
    g.p_components.assign(clusters, std::sqrt(p2) / root_mu);
    g.q_components.assign(clusters, std::sqrt(q2) / root_mu);
    g.normalization = (1.0 + params.kappa) * clusters * (g.sigma_x2 + g.sigma_y2);
    return g;
}

SnrSampler::SnrSampler(ClusterGeometry geometry, const ChannelParams& params)
    : geometry_(std::move(geometry)),
      scale_(params.gamma_bar / geometry_.normalization),
      shadowing_(resolve_shadowing(params).m, 1.0 / resolve_shadowing(params).m),
      normal_(0.0, 1.0) {}

double sample_snr(const ClusterGeometry& geometry, const ChannelParams& params, Philox4x32& engine) {
    SnrSampler sampler(geometry, params);
    return sampler(engine);
}

McMoments estimate_mean(const ChannelParams& params, const McConfig& config,
                        const std::function<double(double)>& statistic) {
    check_config(config);
    const ClusterGeometry geometry = geometry_from_params(params);
    const std::uint64_t chunks = chunk_count(config.n_samples, config.chunk_size);
    std::vector<Running> partial(chunks);
    for_each_chunk(chunks, config.threads, [&](std::uint64_t k) {
        Philox4x32 engine(config.seed, k);
        SnrSampler sampler(geometry, params);
        const std::uint64_t begin = k * config.chunk_size;
        const std::uint64_t end = std::min(config.n_samples, begin + config.chunk_size);
        Running acc;
        for (std::uint64_t i = begin; i < end; ++i) acc.push(statistic(sampler(engine)));
        partial[k] = acc;
    });
    Running total;
    for (const auto& p : partial) total.merge(p);
    McMoments out;
    out.n = total.n;
    out.mean = total.mean;
    const double variance = total.m2 / static_cast<double>(total.n - 1);
    out.std_error = std::sqrt(variance / static_cast<double>(total.n));
    return out;
}

McEstimate estimate_er(const ChannelParams& params, double a_exponent, const McConfig& config) {
    if (!(a_exponent > 0.0) || !std::isfinite(a_exponent)) {
        throw ValidationError("A", "must be finite and > 0");
    }
    const McMoments mom = estimate_mean(
        params, config, [a_exponent](double g) { return std::pow(1.0 + g, -a_exponent); });
    McEstimate est;
    est.j_hat = mom.mean;
    est.j_stderr = mom.std_error;
    est.rate_hat = effective_rate(mom.mean, a_exponent);
    est.n_samples = mom.n;
    est.seed = config.seed;
    return est;
}

std::vector<double> draw_snr_samples(const ChannelParams& params, std::uint64_t n,
                                     std::uint64_t seed, std::uint64_t chunk_size) {
    if (chunk_size < 1) throw ValidationError("chunk_size", "must be >= 1");
    const ClusterGeometry geometry = geometry_from_params(params);
    std::vector<double> out;
    out.reserve(n);
    for (std::uint64_t k = 0; out.size() < n; ++k) {
        Philox4x32 engine(seed, k);
        SnrSampler sampler(geometry, params);
        for (std::uint64_t i = 0; i < chunk_size && out.size() < n; ++i) out.push_back(sampler(engine));
    }
    return out;
}

}  // namespace fbrate
