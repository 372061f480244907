#include "amueq/alpha_mu.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace amueq {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(name) + " must be positive and finite");
    }
}

} // namespace

AlphaMuParams::AlphaMuParams(double alpha_, double mu_, double beta_)
    : alpha(alpha_), mu(mu_), beta(beta_) {
    require_positive(alpha, "alpha");
    require_positive(mu, "mu");
    require_positive(beta, "beta");
}

const std::vector<PresetLink>& preset_links() {
    static const std::vector<PresetLink> links = {
        {Preset::RxTx1, AlphaMuParams(3.21, 7.81), true},
        {Preset::RxTx2, AlphaMuParams(3.13, 3.76), true},
        {Preset::RxTx5, AlphaMuParams(2.64, 0.71), false},
    };
    return links;
}

const PresetLink& preset_link(Preset p) {
    for (const auto& link : preset_links()) {
        if (link.name == p) return link;
    }
    throw std::logic_error("unknown preset");
}

std::string_view preset_name(Preset p) {
    switch (p) {
        case Preset::RxTx1: return "RX-TX1";
        case Preset::RxTx2: return "RX-TX2";
        case Preset::RxTx5: return "RX-TX5";
    }
    throw std::logic_error("unknown preset");
}

double regularized_gamma_p(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_p: shape must be positive");
    if (x < 0.0) throw std::domain_error("gamma_p: argument must be non-negative");
    if (x == 0.0) return 0.0;

    constexpr int kMaxIter = 400;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double log_prefactor = s * std::log(x) - x - std::lgamma(s);

    if (x < s + 1.0) {
        // Lower series: P(s,x) = x^s e^-x / Gamma(s) * sum x^n / (s (s+1)...(s+n))
        double term = 1.0 / s;
        double sum = term;
        double denom = s;
        for (int n = 0; n < kMaxIter; ++n) {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * kEps) break;
        }
        return std::exp(log_prefactor) * sum;
    }

    // Upper continued fraction (modified Lentz), Q(s,x) = prefactor / cf.
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    const double q = std::exp(log_prefactor) * h;
    return 1.0 - q;
}

double pdf(const AlphaMuParams& p, double x) {
    if (x < 0.0 || !std::isfinite(x)) {
        throw std::domain_error("pdf: x must be non-negative and finite");
    }
    const double shape_exponent = p.alpha * p.mu - 1.0;
    if (x == 0.0) {
        if (shape_exponent > 0.0) return 0.0;
        if (shape_exponent < 0.0) return std::numeric_limits<double>::infinity();
        return p.alpha * std::exp(p.mu * std::log(p.mu) - std::lgamma(p.mu)) / p.beta;
    }
    const double z = x / p.beta;
    // log form keeps large mu and extreme x out of overflow territory
    const double log_f = std::log(p.alpha) + p.mu * std::log(p.mu) +
                         shape_exponent * std::log(z) - p.mu * std::pow(z, p.alpha) -
                         std::log(p.beta) - std::lgamma(p.mu);
    return std::exp(log_f);
}

double cdf(const AlphaMuParams& p, double x) {
    if (x < 0.0) throw std::domain_error("cdf: x must be non-negative");
    if (x == 0.0) return 0.0;
    if (!std::isfinite(x)) return 1.0;
    return regularized_gamma_p(p.mu, p.mu * std::pow(x / p.beta, p.alpha));
}

std::vector<double> sample(const AlphaMuParams& p, Rng& rng, std::size_t n) {
    std::gamma_distribution<double> gamma(p.mu, 1.0);
    std::vector<double> out(n);
    const double inv_alpha = 1.0 / p.alpha;
    for (auto& r : out) {
        r = p.beta * std::pow(gamma(rng) / p.mu, inv_alpha);
    }
    return out;
}

double beta_from_moment(double alpha, double moment) {
    require_positive(alpha, "alpha");
    require_positive(moment, "moment");
    return std::pow(moment, 1.0 / alpha);
}

double beta_for_mean_power(double alpha, double mu, double mean_power) {
    require_positive(alpha, "alpha");
    require_positive(mu, "mu");
    require_positive(mean_power, "mean_power");
    // E[X^2] = beta^2 Gamma(mu + 2/alpha) / (mu^(2/alpha) Gamma(mu))
    const double log_ratio =
        std::lgamma(mu) + (2.0 / alpha) * std::log(mu) - std::lgamma(mu + 2.0 / alpha);
    return std::sqrt(mean_power * std::exp(log_ratio));
}

} // namespace amueq
