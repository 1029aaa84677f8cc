#include "fbrate/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fbrate/errors.hpp"

namespace fbrate {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ValidationError(field, what);
}

struct PresetSpec {
    Preset id;
    std::string_view name;
    // pinned values; nullopt marks a free field
    std::optional<double> mu, m, kappa, eta;
};

constexpr double kInf = kUnboundedShadowing;

const std::array<PresetSpec, 7> kPresets{{
    {Preset::rayleigh, "rayleigh", 1.0, kInf, 0.0, 1.0},
    {Preset::nakagami_m, "nakagami-m", std::nullopt, kInf, 0.0, 1.0},
    {Preset::rician, "rician", 1.0, kInf, std::nullopt, 1.0},
    {Preset::kappa_mu, "kappa-mu", std::nullopt, kInf, std::nullopt, 1.0},
    {Preset::eta_mu, "eta-mu", std::nullopt, kInf, 0.0, std::nullopt},
    {Preset::kappa_mu_shadowed, "kappa-mu-shadowed", std::nullopt, std::nullopt, std::nullopt, 1.0},
    {Preset::beckmann, "beckmann", 1.0, kInf, std::nullopt, std::nullopt},
}};

const PresetSpec& spec_of(Preset p) {
    return *std::find_if(kPresets.begin(), kPresets.end(),
                         [p](const PresetSpec& s) { return s.id == p; });
}

double pick(const char* field, std::string_view preset, const std::optional<double>& pinned,
            const std::optional<double>& override_value, double fallback) {
    if (!pinned) return override_value.value_or(fallback);
    if (override_value && *override_value != *pinned) {
        throw ValidationError(field, "conflicts with the " + std::string(preset) + " preset");
    }
    return *pinned;
}

}  // namespace

void validate(const ChannelParams& p) {
    require(std::isfinite(p.mu), "mu", "must be finite");
    require(p.mu > 0.0, "mu", "out of range (must be > 0)");
    require(!std::isnan(p.m) && p.m != -kInf, "m", "must be finite or +inf");
    require(p.m > 0.0, "m", "out of range (must be > 0)");
    require(std::isfinite(p.kappa), "kappa", "must be finite");
    require(p.kappa >= 0.0, "kappa", "out of range (must be >= 0)");
    require(std::isfinite(p.eta), "eta", "must be finite");
    require(p.eta > 0.0, "eta", "out of range (must be > 0)");
    require(std::isfinite(p.rho2), "rho2", "must be finite");
    require(p.rho2 >= 0.0, "rho2", "out of range (must be >= 0)");
    require(std::isfinite(p.gamma_bar), "gamma_bar", "must be finite");
    require(p.gamma_bar > 0.0, "gamma_bar", "out of range (must be > 0)");
}

ChannelParams resolve_shadowing(ChannelParams params, double large_m) {
    if (params.unbounded_shadowing()) {
        if (!(std::isfinite(large_m) && large_m > 0.0)) {
            throw ValidationError("large_m", "must be finite and > 0");
        }
        params.m = large_m;
    }
    return params;
}

DerivedParams derive(const ChannelParams& p) {
    validate(p);
    if (p.unbounded_shadowing()) {
        throw ValidationError("m", "resolve the m = inf sentinel before derive()");
    }
    DerivedParams d;
    d.omega_cap = p.mu * (1.0 + p.eta) * (1.0 + p.kappa) / 2.0;
    d.alpha1 = p.eta / (d.omega_cap * d.omega_cap) +
               p.kappa * (p.rho2 + p.eta) /
                   (p.m * d.omega_cap * (1.0 + p.rho2) * (1.0 + p.kappa));
    d.beta = -(2.0 / p.mu + p.kappa / p.m) / (1.0 + p.kappa);
    d.exponent_e = p.m - p.mu / 2.0;

    d.discriminant = d.beta * d.beta - 4.0 * d.alpha1;
    // Exact double roots (eta = 1, kappa = 0) land a few ulps either side of 0.
    const double radicand = std::max(d.discriminant, 0.0);
    const double q = (-d.beta + std::sqrt(radicand)) / 2.0;
    d.c1 = q / d.alpha1;
    d.c2 = 1.0 / q;
    return d;
}

bool roots_coincide(double a, double b) noexcept {
    return std::abs(a - b) <= kCoincidentRootTolerance * std::max(std::abs(a), std::abs(b));
}

std::optional<Preset> parse_preset(std::string_view name) noexcept {
    for (const auto& s : kPresets) {
        if (s.name == name) return s.id;
    }
    return std::nullopt;
}

std::string_view preset_name(Preset preset) noexcept { return spec_of(preset).name; }

ChannelParams preset(Preset id, const ParamOverrides& o) {
    const PresetSpec& s = spec_of(id);
    const ChannelParams defaults;
    ChannelParams p;
    p.mu = pick("mu", s.name, s.mu, o.mu, defaults.mu);
    p.m = pick("m", s.name, s.m, o.m, defaults.m);
    p.kappa = pick("kappa", s.name, s.kappa, o.kappa, defaults.kappa);
    p.eta = pick("eta", s.name, s.eta, o.eta, defaults.eta);
    p.rho2 = o.rho2.value_or(defaults.rho2);
    p.gamma_bar = o.gamma_bar.value_or(defaults.gamma_bar);
    validate(p);
    return p;
}

ChannelParams preset(std::string_view name, const ParamOverrides& overrides) {
    const auto id = parse_preset(name);
    if (!id) throw ValidationError("preset", "unknown channel '" + std::string(name) + "'");
    return preset(*id, overrides);
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

}  // namespace fbrate
