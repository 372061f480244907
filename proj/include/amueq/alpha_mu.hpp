#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "amueq/seed.hpp"

namespace amueq {

/// Parameter triple of the alpha-mu envelope distribution.
///
/// alpha is the nonlinearity exponent, mu the number-of-clusters parameter,
/// beta the alpha-root mean value of the envelope (same units as the
/// envelope). Construction rejects non-positive values.
struct AlphaMuParams {
    double alpha;
    double mu;
    double beta;

    AlphaMuParams(double alpha, double mu, double beta = 1.0);
};

/// Named parameter pairs measured on sub-THz links (LOS and non-LOS).
enum class Preset { RxTx1, RxTx2, RxTx5 };

struct PresetLink {
    Preset name;
    AlphaMuParams params; // beta = 1; rescale via beta_for_mean_power
    bool los;
};

const std::vector<PresetLink>& preset_links();
const PresetLink& preset_link(Preset p);
std::string_view preset_name(Preset p);

/// Density f(x) = alpha mu^mu (x/beta)^(alpha mu - 1)
///                exp(-mu (x/beta)^alpha) / (beta Gamma(mu)).
/// Returns 0 at x = 0 when alpha*mu > 1, +infinity when alpha*mu < 1
/// (the density is unbounded at the origin in that regime).
double pdf(const AlphaMuParams& p, double x);

/// Distribution function F(x) = P(mu, mu (x/beta)^alpha), the regularized
/// lower incomplete gamma. Monotone, F(0) = 0, F(inf) = 1.
double cdf(const AlphaMuParams& p, double x);

/// n i.i.d. envelope draws via the gamma-power transform
/// R = beta (G/mu)^(1/alpha), G ~ Gamma(mu, 1). Deterministic given the
/// engine state.
std::vector<double> sample(const AlphaMuParams& p, Rng& rng, std::size_t n);

/// beta from the alpha-th raw moment: beta = moment^(1/alpha).
double beta_from_moment(double alpha, double moment);

/// beta making the second raw moment E[X^2] equal mean_power. Used to give
/// a K-tap channel unit average energy (mean_power = 1/K per tap).
double beta_for_mean_power(double alpha, double mu, double mean_power);

/// Regularized lower incomplete gamma P(s, x) for s > 0, x >= 0.
/// Series expansion below x = s + 1, continued fraction above.
double regularized_gamma_p(double s, double x);

} // namespace amueq
