#include "amueq/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amueq {

SymbolStream bpsk_modulate(const std::vector<std::uint8_t>& bits) {
    if (bits.empty()) throw std::invalid_argument("bpsk_modulate: empty bit vector");
    SymbolStream out;
    out.bits = bits;
    out.symbols.reserve(bits.size());
    for (auto b : bits) {
        out.symbols.emplace_back(b ? -1.0 : 1.0, 0.0);
    }
    return out;
}

std::vector<std::uint8_t> bpsk_demodulate(std::span<const cplx> samples) {
    if (samples.empty()) throw std::invalid_argument("bpsk_demodulate: empty input");
    std::vector<std::uint8_t> bits(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        bits[i] = samples[i].real() >= 0.0 ? 0 : 1;
    }
    return bits;
}

std::vector<std::uint8_t> random_bits(std::size_t n, Rng& rng) {
    std::vector<std::uint8_t> bits(n);
    std::uniform_int_distribution<int> coin(0, 1);
    for (auto& b : bits) b = static_cast<std::uint8_t>(coin(rng));
    return bits;
}

ChannelRealization draw_channel(const AlphaMuParams& params, std::size_t k,
                                std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("draw_channel: k must be >= 1");
    Rng rng(seed);
    const std::vector<double> magnitudes = sample(params, rng, k);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    ChannelRealization ch{std::vector<cplx>(k), params, seed};
    for (std::size_t i = 0; i < k; ++i) {
        const double theta = phase(rng);
        ch.taps[i] = magnitudes[i] * cplx(std::cos(theta), std::sin(theta));
    }
    return ch;
}

std::vector<cplx> convolve_same(std::span<const cplx> x, std::span<const cplx> taps) {
    std::vector<cplx> y(x.size());
    const std::size_t k_max = taps.size();
    for (std::size_t n = 0; n < x.size(); ++n) {
        cplx acc = taps[0] * x[n];
        const std::size_t reach = std::min(k_max - 1, n);
        for (std::size_t k = 1; k <= reach; ++k) {
            acc += taps[k] * x[n - k];
        }
        y[n] = acc;
    }
    return y;
}

std::vector<cplx> apply_channel(const SymbolStream& stream,
                                const ChannelRealization& channel) {
    if (stream.size() == 0) throw std::invalid_argument("apply_channel: empty stream");
    return convolve_same(stream.symbols, channel.taps);
}

NoisySignal add_awgn(std::span<const cplx> samples, double snr_db, Rng& rng) {
    if (samples.empty()) throw std::invalid_argument("add_awgn: empty input");
    NoisySignal out{std::vector<cplx>(samples.begin(), samples.end()), 0.0, snr_db};
    if (std::isinf(snr_db) && snr_db > 0.0) {
        return out; // noise disabled
    }
    const double total_variance = std::pow(10.0, -snr_db / 10.0);
    const double per_dim = total_variance / 2.0;
    out.noise_variance = per_dim;
    std::normal_distribution<double> gauss(0.0, std::sqrt(per_dim));
    for (auto& s : out.samples) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        s += cplx(re, im);
    }
    return out;
}

} // namespace amueq
