#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "amueq/alpha_mu.hpp"
#include "amueq/seed.hpp"

namespace amueq {

using cplx = std::complex<double>;

/// Unit-energy BPSK symbols together with the bits that produced them.
struct SymbolStream {
    std::vector<cplx> symbols;
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return symbols.size(); }
};

/// K complex channel taps: magnitudes drawn from the alpha-mu law, phases
/// uniform on [0, 2pi). K = 1 is flat fading.
struct ChannelRealization {
    std::vector<cplx> taps;
    AlphaMuParams params;
    std::uint64_t seed;
};

/// Channel output plus AWGN. noise_variance is the per-real-dimension
/// variance; the total complex noise variance is 2 * noise_variance.
struct NoisySignal {
    std::vector<cplx> samples;
    double noise_variance;
    double snr_db;
};

/// bit 0 -> +1, bit 1 -> -1 (real axis).
SymbolStream bpsk_modulate(const std::vector<std::uint8_t>& bits);

/// Hard decision on the real part; exact zero resolves to bit 0.
std::vector<std::uint8_t> bpsk_demodulate(std::span<const cplx> samples);

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng);

ChannelRealization draw_channel(const AlphaMuParams& params, std::size_t k,
                                std::uint64_t seed);

/// Same-length causal convolution with zero prehistory:
/// y(n) = sum_k taps(k) x(n-k), n = 0..N-1.
std::vector<cplx> convolve_same(std::span<const cplx> x, std::span<const cplx> taps);

std::vector<cplx> apply_channel(const SymbolStream& stream,
                                const ChannelRealization& channel);

/// Adds circularly-symmetric complex Gaussian noise with total variance
/// 10^(-snr_db/10) (unit symbol energy). snr_db = +infinity disables the
/// noise and returns the input unchanged.
NoisySignal add_awgn(std::span<const cplx> samples, double snr_db, Rng& rng);

} // namespace amueq
