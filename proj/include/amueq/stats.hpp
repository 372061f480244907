#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace amueq {

struct WilsonInterval {
    double low;
    double high;
};

/// 95% two-sided z by default.
inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion. Valid down to zero
/// successes; trials must be positive.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = kZ95);

/// Trailing moving average; entry n averages the last min(n+1, window)
/// values. window = 1 returns the input.
std::vector<double> moving_average(std::span<const double> values,
                                   std::size_t window);

/// 1-based index of the first iteration whose smoothed value falls within
/// 3 dB (a factor 10^0.3) of the trace's floor. The floor is the smoothed
/// minimum after the trace's peak, so the warm-up samples in front of the
/// decision delay do not register as converged.
std::size_t convergence_iteration(std::span<const double> mse_trace,
                                  std::size_t smoothing_window = 5);

} // namespace amueq
