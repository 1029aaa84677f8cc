#pragma once

#include <limits>
#include <optional>
#include <string_view>

namespace fbrate {

/// Marks the unshadowed limit m -> infinity (Beckmann, Rician, ...).
inline constexpr double kUnboundedShadowing = std::numeric_limits<double>::infinity();

/// Finite stand-in for m = infinity used by every numerical engine.
inline constexpr double kDefaultLargeM = 1e4;

/// Relative distance below which two pole locations are considered equal.
inline constexpr double kCoincidentRootTolerance = 1e-9;

/// Fluctuating Beckmann fading parameters plus the average SNR (linear).
struct ChannelParams {
    double mu = 1.0;         // multipath clusters (real extension)
    double m = 1.0;          // LoS shadowing severity, may be kUnboundedShadowing
    double kappa = 0.0;      // LoS power / scattered power
    double eta = 1.0;        // in-phase / quadrature scatter variance
    double rho2 = 1.0;       // in-phase / quadrature LoS power
    double gamma_bar = 1.0;  // average SNR

    bool unbounded_shadowing() const noexcept { return m == kUnboundedShadowing; }

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Constants derived from ChannelParams that the MGF and the pole set need.
///
/// c1 and c2 are the roots of alpha1 z^2 + beta z + 1 = 0, ordered so that
/// c1 >= c2. For every admissible parameter set the discriminant is
/// nonnegative: the quadratic is negative at z = -Omega (eta <= 1) or at
/// z = -Omega/eta (eta >= 1) and equals 1 at the origin, so both roots are
/// real, and they are positive because beta < 0 < alpha1.
struct DerivedParams {
    double omega_cap = 0.0;
    double alpha1 = 0.0;
    double beta = 0.0;
    double discriminant = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double exponent_e = 0.0;  // m - mu/2

    friend bool operator==(const DerivedParams&, const DerivedParams&) = default;
};

/// Throws ValidationError naming the first offending field.
void validate(const ChannelParams& params);

/// Replaces the m = infinity sentinel by `large_m`; other values pass through.
ChannelParams resolve_shadowing(ChannelParams params, double large_m = kDefaultLargeM);

/// Requires a validated parameter set with finite m.
DerivedParams derive(const ChannelParams& params);

/// True when a and b differ by less than kCoincidentRootTolerance relatively.
bool roots_coincide(double a, double b) noexcept;

enum class Preset {
    rayleigh,
    nakagami_m,
    rician,
    kappa_mu,
    eta_mu,
    kappa_mu_shadowed,
    beckmann,
};

std::optional<Preset> parse_preset(std::string_view name) noexcept;
std::string_view preset_name(Preset preset) noexcept;

/// Fields a caller wants to set on top of a preset.
struct ParamOverrides {
    std::optional<double> mu = std::nullopt;
    std::optional<double> m = std::nullopt;
    std::optional<double> kappa = std::nullopt;
    std::optional<double> eta = std::nullopt;
    std::optional<double> rho2 = std::nullopt;
    std::optional<double> gamma_bar = std::nullopt;
};

/// Builds the FB parameter set realizing a classical channel.
///
/// Fields pinned by the preset may be overridden only with the pinned value;
/// anything else raises ValidationError. Unset free fields take the
/// ChannelParams defaults.
ChannelParams preset(Preset preset, const ParamOverrides& overrides = {});
ChannelParams preset(std::string_view name, const ParamOverrides& overrides = {});

double db_to_linear(double db) noexcept;
double linear_to_db(double linear) noexcept;

}  // namespace fbrate
