#pragma once

#include <string>
#include <vector>

#include "fbrate/channel.hpp"
#include "fbrate/wide.hpp"

namespace fbrate {

/// Largest 2m + mu for which residues are attempted.
inline constexpr int kMaxPoleOrder = 500;

/// Pole of M expressed through the factor (1 + x/theta)^{-multiplicity},
/// x = gamma_bar * s. Poles are real and positive for every admissible
/// channel (see DerivedParams).
struct Pole {
    double theta = 0.0;
    int multiplicity = 0;
};

/// Factor (1 + x/theta)^{exponent} with exponent > 0 (present when mu/2 < m).
struct NumeratorFactor {
    double theta = 0.0;
    int exponent = 0;
};

struct PoleSet {
    std::vector<Pole> poles;  // c1, c2, Omega/eta, Omega order; coincident entries merged
    std::vector<NumeratorFactor> numerator;
    int group_count = 2;  // N(m, mu): 2 + 2 u(mu/2 - m), u(0) = 0

    int total_multiplicity() const noexcept;
};

/// True iff m is a positive integer and mu a positive even integer (both to
/// 1e-9) and 2m + mu <= kMaxPoleOrder. `reason` receives the failed condition.
bool closed_form_regime(const ChannelParams& params, std::string* reason = nullptr);

/// Throws ClosedFormUnavailable outside closed_form_regime().
PoleSet build_pole_set(const ChannelParams& params, const DerivedParams& derived);

/// Residue table: M(x) = sum_i sum_{j=1}^{w_i} A_ij (1 + x/theta_i)^{-j}.
template <class Real>
struct BasicExpansion {
    std::vector<Real> theta;
    std::vector<std::vector<Real>> coefficients;  // coefficients[i][j - 1] = A_ij

    /// Right-hand side of the expansion at x = gamma_bar * s >= 0.
    Real evaluate(Real x) const;
};

using PartialFractionExpansion = BasicExpansion<double>;
using WideExpansion = BasicExpansion<WideReal>;

/// Repeated-pole residues from the Taylor coefficients of the cofactor
/// (1 + x/theta_i)^{w_i} M(x) around x = -theta_i. The coefficients come from
/// the exponential of the cofactor's logarithm, so no numerical
/// differentiation is involved.
template <class Real>
BasicExpansion<Real> residues(const PoleSet& poles);

extern template struct BasicExpansion<double>;
extern template struct BasicExpansion<WideReal>;
extern template BasicExpansion<double> residues<double>(const PoleSet&);
extern template BasicExpansion<WideReal> residues<WideReal>(const PoleSet&);

/// SNR density by term-wise inverse Laplace transform of the expansion:
///   (1 + gb s/theta)^{-j}  <->  lambda^j g^{j-1} e^{-lambda g} / (j-1)!,
/// lambda = theta / gb. Throws std::logic_error on a clearly negative value.
double pdf(const ChannelParams& params, const PartialFractionExpansion& expansion, double gamma);

}  // namespace fbrate
