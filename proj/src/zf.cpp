#include "amueq/zf.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace amueq {

std::size_t default_decision_delay(std::size_t eq_taps, std::size_t channel_taps) {
    return (eq_taps + channel_taps - 1) / 2;
}

ZfEqualizer design_zf(const ChannelRealization& channel, std::size_t num_taps,
                      std::size_t delay) {
    const std::size_t k = channel.taps.size();
    if (num_taps < 1) throw std::invalid_argument("design_zf: num_taps must be >= 1");
    const std::size_t rows = num_taps + k - 1;
    if (delay >= rows) {
        throw std::invalid_argument("design_zf: delay must be < num_taps + K - 1");
    }
    bool any_nonzero = false;
    for (const auto& tap : channel.taps) {
        if (tap != cplx(0.0, 0.0)) any_nonzero = true;
    }
    if (!any_nonzero) {
        throw std::invalid_argument("design_zf: channel has no non-zero tap");
    }

    // Convolution matrix: column j is h delayed by j samples.
    Eigen::MatrixXcd conv = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                                   static_cast<Eigen::Index>(num_taps));
    for (std::size_t j = 0; j < num_taps; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            conv(static_cast<Eigen::Index>(i + j), static_cast<Eigen::Index>(j)) =
                channel.taps[i];
        }
    }
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows));
    target(static_cast<Eigen::Index>(delay)) = 1.0;

    const Eigen::MatrixXcd normal = conv.adjoint() * conv;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(normal);
    qr.setThreshold(1e-10);
    if (qr.rank() < static_cast<Eigen::Index>(num_taps)) {
        throw SingularChannel("design_zf: rank-deficient design matrix (spectral null)");
    }
    const Eigen::VectorXcd g = qr.solve(conv.adjoint() * target);

    ZfEqualizer eq;
    eq.delay = delay;
    eq.taps.assign(g.data(), g.data() + g.size());
    return eq;
}

std::vector<cplx> apply_fir_delayed(std::span<const cplx> weights,
                                    std::span<const cplx> received,
                                    std::size_t delay) {
    const std::vector<cplx> filtered = convolve_same(received, weights);
    std::vector<cplx> out(received.size(), cplx(0.0, 0.0));
    for (std::size_t n = 0; n + delay < filtered.size(); ++n) {
        out[n] = filtered[n + delay];
    }
    return out;
}

std::vector<cplx> equalize_zf(const ZfEqualizer& eq, std::span<const cplx> received) {
    if (received.empty()) throw std::invalid_argument("equalize_zf: empty input");
    return apply_fir_delayed(eq.taps, received, eq.delay);
}

} // namespace amueq
