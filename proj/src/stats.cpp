#include "amueq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amueq {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    if (successes > trials) {
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    }
    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)) / denom;
    // p = 0 and p = 1 are exact roots of the score equation at the extremes
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

std::vector<double> moving_average(std::span<const double> values,
                                   std::size_t window) {
    if (window == 0) throw std::invalid_argument("moving_average: zero window");
    std::vector<double> out(values.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < values.size(); ++n) {
        acc += values[n];
        if (n >= window) acc -= values[n - window];
        const std::size_t count = std::min(n + 1, window);
        out[n] = acc / static_cast<double>(count);
    }
    return out;
}

std::size_t convergence_iteration(std::span<const double> mse_trace,
                                  std::size_t smoothing_window) {
    if (mse_trace.empty()) {
        throw std::invalid_argument("convergence_iteration: empty trace");
    }
    const std::vector<double> smooth = moving_average(mse_trace, smoothing_window);
    // Anchor at the trace's peak: the first few error samples sit at zero
    // while the decision delay fills, and must not count as the floor.
    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(smooth.begin(), smooth.end()) - smooth.begin());
    const double floor = *std::min_element(smooth.begin() + peak, smooth.end());
    const double threshold = floor * std::pow(10.0, 0.3);
    for (std::size_t n = peak; n < smooth.size(); ++n) {
        if (smooth[n] <= threshold) return n + 1;
    }
    return smooth.size();
}

} // namespace amueq
