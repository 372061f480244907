#include "amueq/adaptive.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "amueq/zf.hpp"

namespace amueq {

namespace {

using MatrixMap =
    Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using VectorMap = Eigen::Map<Eigen::VectorXcd>;
using ConstVectorMap = Eigen::Map<const Eigen::VectorXcd>;

constexpr double kBreakdownTolerance = 1e-14;

} // namespace

AdaptiveFilterState::AdaptiveFilterState(std::size_t order_l)
    : weights(order_l + 1, cplx(0.0, 0.0)),
      window(order_l + 1, cplx(0.0, 0.0)),
      order(order_l) {}

AdaptiveFilterState::AdaptiveFilterState(std::size_t order_l,
                                         std::vector<cplx> initial_weights)
    : weights(std::move(initial_weights)),
      window(order_l + 1, cplx(0.0, 0.0)),
      order(order_l) {
    if (weights.size() != order + 1) {
        throw std::invalid_argument("AdaptiveFilterState: weights must have L+1 entries");
    }
}

void AdaptiveFilterState::push(cplx x_new) {
    for (std::size_t i = window.size() - 1; i > 0; --i) {
        window[i] = window[i - 1];
    }
    window[0] = x_new;
}

cplx AdaptiveFilterState::output() const {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i] * window[i];
    }
    return acc;
}

RlsState::RlsState(const RlsConfig& cfg)
    : base(cfg.order),
      p_matrix((cfg.order + 1) * (cfg.order + 1), cplx(0.0, 0.0)),
      gain(cfg.order + 1, cplx(0.0, 0.0)) {
    if (!(cfg.forgetting > 0.0) || cfg.forgetting > 1.0) {
        throw std::invalid_argument("RlsConfig: forgetting must lie in (0, 1]");
    }
    if (!(cfg.initial_p_scale > 0.0)) {
        throw std::invalid_argument("RlsConfig: initial_p_scale must be positive");
    }
    const std::size_t dim = cfg.order + 1;
    for (std::size_t i = 0; i < dim; ++i) {
        p_matrix[i * dim + i] = cfg.initial_p_scale;
    }
}

cplx lms_step(AdaptiveFilterState& state, const LmsConfig& cfg, cplx x_new,
              cplx desired) {
    if (state.order != cfg.order) {
        throw std::invalid_argument("lms_step: state order does not match config");
    }
    state.push(x_new);
    const cplx error = desired - state.output();
    const cplx scaled = cfg.step_size * error;
    for (std::size_t i = 0; i < state.weights.size(); ++i) {
        state.weights[i] += scaled * std::conj(state.window[i]);
    }
    return error;
}

cplx rls_step(RlsState& state, const RlsConfig& cfg, cplx x_new, cplx desired) {
    if (state.base.order != cfg.order) {
        throw std::invalid_argument("rls_step: state order does not match config");
    }
    const auto dim = static_cast<Eigen::Index>(cfg.order + 1);
    state.base.push(x_new);

    MatrixMap p(state.p_matrix.data(), dim, dim);
    ConstVectorMap x(state.base.window.data(), dim);
    VectorMap k(state.gain.data(), dim);
    VectorMap w(state.base.weights.data(), dim);

    // Regressor is the conjugated window, so the a-priori error below is
    // d - w.x, the same plain FIR response the frozen filter applies.
    const Eigen::VectorXcd phi = x.conjugate();
    const Eigen::VectorXcd p_phi = p * phi;
    const cplx denom = cfg.forgetting + phi.dot(p_phi);
    if (std::abs(denom) < kBreakdownTolerance) {
        throw NumericalBreakdown("rls_step: gain denominator below 1e-14");
    }
    k = p_phi / denom;

    const cplx error = desired - (w.array() * x.array()).sum();
    w += k * error;

    const Eigen::RowVectorXcd phi_h_p = phi.adjoint() * p;
    p = (p - k * phi_h_p) / cfg.forgetting;
    p = ((p + p.adjoint()) * 0.5).eval();

    return error;
}

namespace {

template <typename Config, typename State, typename StepFn>
TrainingRecord train_impl(const Config& cfg, State& state, const SymbolStream& pilot,
                          std::span<const cplx> received_pilot, std::size_t delay,
                          StepFn step) {
    if (pilot.size() != received_pilot.size()) {
        throw std::invalid_argument("train: pilot and received lengths differ");
    }
    if (pilot.size() < cfg.order + 1) {
        throw std::invalid_argument("train: pilot shorter than L+1");
    }
    TrainingRecord record;
    record.squared_error.reserve(pilot.size());
    for (std::size_t n = 0; n < pilot.size(); ++n) {
        const cplx desired =
            n >= delay ? pilot.symbols[n - delay] : cplx(0.0, 0.0);
        const cplx e = step(state, cfg, received_pilot[n], desired);
        record.squared_error.push_back(std::norm(e));
    }
    return record;
}

double mean_input_power(std::span<const cplx> samples) {
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

} // namespace

TrainingRecord train(const LmsConfig& cfg, const SymbolStream& pilot,
                     std::span<const cplx> received_pilot, std::size_t delay) {
    AdaptiveFilterState state(cfg.order);
    TrainingRecord record = train_impl(
        cfg, state, pilot, received_pilot, delay,
        [](AdaptiveFilterState& s, const LmsConfig& c, cplx x, cplx d) {
            return lms_step(s, c, x, d);
        });
    record.final_weights = state.weights;
    const double power = mean_input_power(received_pilot);
    if (power > 0.0 &&
        cfg.step_size >= 2.0 / (power * static_cast<double>(cfg.order + 1))) {
        record.step_size_warning = true;
    }
    return record;
}

TrainingRecord train(const RlsConfig& cfg, const SymbolStream& pilot,
                     std::span<const cplx> received_pilot, std::size_t delay) {
    RlsState state(cfg);
    TrainingRecord record =
        train_impl(cfg, state, pilot, received_pilot, delay,
                   [](RlsState& s, const RlsConfig& c, cplx x, cplx d) {
                       return rls_step(s, c, x, d);
                   });
    record.final_weights = state.base.weights;
    return record;
}

std::vector<cplx> equalize(std::span<const cplx> weights,
                           std::span<const cplx> received, std::size_t delay) {
    if (weights.empty()) throw std::invalid_argument("equalize: empty weights");
    if (received.empty()) throw std::invalid_argument("equalize: empty input");
    return apply_fir_delayed(weights, received, delay);
}

} // namespace amueq
