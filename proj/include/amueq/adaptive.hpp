#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "amueq/signal.hpp"

namespace amueq {

/// Thrown when the RLS gain denominator collapses (inverse-correlation
/// matrix no longer positive), signalling the recursion has broken down.
struct NumericalBreakdown : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LmsConfig {
    double step_size = 0.04; // eta
    std::size_t order = 15;  // L; the filter has L+1 weights
};

struct RlsConfig {
    double forgetting = 0.999;   // gamma in (0, 1]
    std::size_t order = 15;      // L
    double initial_p_scale = 1.0; // P(0) = scale * I
};

/// Weight vector and sliding input window, both of length L+1, newest
/// sample first. The filter output is y(n) = sum_i weights[i] * window[i],
/// i.e. a plain FIR response to the stored window.
struct AdaptiveFilterState {
    std::vector<cplx> weights;
    std::vector<cplx> window;
    std::size_t order;

    explicit AdaptiveFilterState(std::size_t order_l);
    AdaptiveFilterState(std::size_t order_l, std::vector<cplx> initial_weights);

    void push(cplx x_new);
    cplx output() const;
};

/// LMS state plus the inverse-correlation matrix and gain vector. p_matrix
/// is (L+1)^2 complex entries in row-major order; it starts at
/// initial_p_scale * I and stays Hermitian (re-symmetrized every update).
struct RlsState {
    AdaptiveFilterState base;
    std::vector<cplx> p_matrix;
    std::vector<cplx> gain;

    RlsState(const RlsConfig& cfg);
};

/// One LMS iteration: shift x_new in, y = w.window, e = d - y,
/// w += eta * e * conj(window). Returns the a-priori error e.
cplx lms_step(AdaptiveFilterState& state, const LmsConfig& cfg, cplx x_new,
              cplx desired);

/// One RLS iteration (gain, a-priori error, weight update, rank-one
/// inverse-correlation update). Returns the a-priori error. Throws
/// NumericalBreakdown when the gain denominator magnitude drops below
/// 1e-14.
cplx rls_step(RlsState& state, const RlsConfig& cfg, cplx x_new, cplx desired);

/// Squared-error trace of a training pass plus the frozen weights.
struct TrainingRecord {
    std::vector<double> squared_error;
    std::vector<cplx> final_weights;
    bool step_size_warning = false; // LMS eta above the stability bound
};

/// Run the per-sample update over the whole pilot. The desired sample at
/// step n is pilot[n - delay] (zero for n < delay), matching the decision
/// delay used when the frozen weights are applied to payload.
TrainingRecord train(const LmsConfig& cfg, const SymbolStream& pilot,
                     std::span<const cplx> received_pilot, std::size_t delay);
TrainingRecord train(const RlsConfig& cfg, const SymbolStream& pilot,
                     std::span<const cplx> received_pilot, std::size_t delay);

/// Filter payload with frozen weights, delay-aligned: output sample n
/// estimates transmitted symbol n. No adaptation.
std::vector<cplx> equalize(std::span<const cplx> weights,
                           std::span<const cplx> received, std::size_t delay);

} // namespace amueq
