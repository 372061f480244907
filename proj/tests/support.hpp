#pragma once

// Test-only oracles: quadrature, KS statistic, the BPSK closed form.
// These stay independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace testutil {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                                   double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, left, tol * 0.5, depth - 1) +
           adaptive_simpson_rec(f, m, b, right, tol * 0.5, depth - 1);
}

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 60) {
    if (b <= a) return 0.0;
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, max_depth);
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::fabs(hi - f), std::fabs(f - lo)));
    }
    return d;
}

/// Critical value of the two-sided KS test at significance 0.01.
inline double ks_critical_1pct(std::size_t n) {
    return 1.62762 / std::sqrt(static_cast<double>(n));
}

/// Gaussian tail Q(x) = P(N(0,1) > x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Theoretical BPSK bit error rate at Es/N0 = snr_db (complex noise,
/// decision on the real part): Q(sqrt(2 * snr_linear)).
inline double bpsk_ber_theory(double snr_db) {
    const double snr = std::pow(10.0, snr_db / 10.0);
    return q_function(std::sqrt(2.0 * snr));
}

} // namespace testutil
