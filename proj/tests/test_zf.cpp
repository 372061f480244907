#include <doctest.h>

#include <cmath>
#include <complex>

#include "amueq/signal.hpp"
#include "amueq/zf.hpp"
#include "support.hpp"

using namespace amueq;

namespace {

ChannelRealization channel_of(std::vector<cplx> taps) {
    return ChannelRealization{std::move(taps), AlphaMuParams(2, 1, 1), 0};
}

// || conv(h, g) - delta_delay ||_2, full-length convolution
double design_residual(const std::vector<cplx>& h, const std::vector<cplx>& g,
                       std::size_t delay) {
    std::vector<cplx> conv(h.size() + g.size() - 1, cplx(0, 0));
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) conv[i + j] += h[i] * g[j];
    }
    conv[delay] -= 1.0;
    double acc = 0.0;
    for (const auto& c : conv) acc += std::norm(c);
    return std::sqrt(acc);
}

} // namespace

TEST_CASE("default decision delay is centered") {
    CHECK(default_decision_delay(1, 1) == 0);
    CHECK(default_decision_delay(16, 1) == 8);
    CHECK(default_decision_delay(16, 2) == 8);
    CHECK(default_decision_delay(16, 3) == 9);
}

TEST_CASE("design_zf: scalar inverse") {
    const auto eq = design_zf(channel_of({cplx(2, 0)}), 1, 0);
    REQUIRE(eq.taps.size() == 1);
    CHECK(eq.taps[0].real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(eq.taps[0].imag() == doctest::Approx(0.0));

    // complex flat channel inverts exactly too
    const cplx h(0.8, -0.6);
    const auto eq2 = design_zf(channel_of({h}), 1, 0);
    CHECK(std::abs(eq2.taps[0] * h - cplx(1, 0)) < 1e-14);
}

TEST_CASE("design_zf: geometric-series inverse of 1 + 0.5 z^-1") {
    const std::vector<cplx> h = {cplx(1, 0), cplx(0.5, 0)};
    const auto eq = design_zf(channel_of(h), 8, 0);
    // leading taps follow (-0.5)^i
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(eq.taps[i] - cplx(std::pow(-0.5, double(i)), 0)) < 1e-2);
    }
    // least squares beats the truncated geometric series
    std::vector<cplx> geometric(8);
    for (std::size_t i = 0; i < 8; ++i) geometric[i] = std::pow(-0.5, double(i));
    CHECK(design_residual(h, eq.taps, 0) <= design_residual(h, geometric, 0) + 1e-12);
}

TEST_CASE("design_zf: residual decreases monotonically with tap budget") {
    const std::vector<cplx> h = {cplx(1, 0), cplx(0.5, 0)};
    double prev = 1e9;
    for (std::size_t taps : {2u, 4u, 8u, 16u}) {
        const auto eq = design_zf(channel_of(h), taps, 0);
        const double res = design_residual(h, eq.taps, 0);
        CHECK(res < prev);
        prev = res;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("design_zf is a least-squares local minimum") {
    Rng rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> h = {cplx(g(rng), g(rng)), cplx(g(rng), g(rng)),
                           cplx(g(rng), g(rng))};
    const std::size_t delay = default_decision_delay(12, h.size());
    const auto eq = design_zf(channel_of(h), 12, delay);
    const double base = design_residual(h, eq.taps, delay);
    std::uniform_int_distribution<std::size_t> pick(0, eq.taps.size() - 1);
    std::uniform_int_distribution<int> part(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        for (double sign : {-1.0, 1.0}) {
            auto perturbed = eq.taps;
            const std::size_t j = pick(rng);
            perturbed[j] += part(rng) ? cplx(sign * 1e-3, 0) : cplx(0, sign * 1e-3);
            CHECK(design_residual(h, perturbed, delay) >= base - 1e-12);
        }
    }
}

TEST_CASE("design_zf: preconditions and singular channel") {
    CHECK_THROWS_AS(design_zf(channel_of({cplx(1, 0)}), 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(design_zf(channel_of({cplx(1, 0)}), 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(design_zf(channel_of({cplx(0, 0), cplx(0, 0)}), 4, 2),
                    std::invalid_argument);
    // taps so small the normal equations underflow to zero rank
    CHECK_THROWS_AS(design_zf(channel_of({cplx(1e-200, 0), cplx(1e-200, 0)}), 4, 2),
                    SingularChannel);
}

TEST_CASE("equalize_zf: flat channel exactness and zero input") {
    Rng rng(23);
    const auto bits = random_bits(512, rng);
    const SymbolStream u = bpsk_modulate(bits);
    const cplx tap(0.3, 1.1);
    const auto ch = channel_of({tap});
    const auto eq = design_zf(ch, 1, 0);
    const auto rx = apply_channel(u, ch);
    const auto out = equalize_zf(eq, rx);
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(std::abs(out[i] - u.symbols[i]) < 1e-10);
    }

    const std::vector<cplx> zeros(64, cplx(0, 0));
    for (const auto& z : equalize_zf(eq, zeros)) CHECK(z == cplx(0, 0));
}

TEST_CASE("equalize_zf: noise-free 16-tap inverse gives zero BER over 1e4 symbols") {
    Rng rng(29);
    const auto bits = random_bits(10000, rng);
    const SymbolStream u = bpsk_modulate(bits);
    const auto ch = channel_of({cplx(1, 0), cplx(0.5, 0)});
    const std::size_t delay = default_decision_delay(16, 2);
    const auto eq = design_zf(ch, 16, delay);
    const auto out = equalize_zf(eq, apply_channel(u, ch));
    const auto detected = bpsk_demodulate(out);
    std::size_t errors = 0;
    for (std::size_t i = 0; i + delay < bits.size(); ++i) {
        if (detected[i] != bits[i]) ++errors;
    }
    CHECK(errors == 0);
}

TEST_CASE("zf noise amplification factor is ||g||^2") {
    const auto ch = channel_of({cplx(1, 0), cplx(0.5, 0)});
    const auto eq = design_zf(ch, 16, default_decision_delay(16, 2));
    double g2 = 0.0;
    for (const auto& t : eq.taps) g2 += std::norm(t);

    const std::size_t n = 1000000;
    const std::vector<cplx> zeros(n, cplx(0, 0));
    Rng rng(41);
    const double sigma2 = 0.1; // 10 dB
    const auto noise = add_awgn(zeros, 10.0, rng).samples;
    const auto filtered = convolve_same(noise, eq.taps);
    double var = 0.0;
    for (const auto& s : filtered) var += std::norm(s);
    var /= static_cast<double>(n);
    CHECK(var == doctest::Approx(sigma2 * g2).epsilon(0.02));
}
