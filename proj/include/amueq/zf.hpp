#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "amueq/signal.hpp"

namespace amueq {

/// Thrown when the zero-forcing design matrix is rank-deficient (spectral
/// null in the channel at the working tolerance).
struct SingularChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FIR approximation to the channel inverse, with its decision delay.
/// Immutable once designed; safe to share across threads.
struct ZfEqualizer {
    std::vector<cplx> taps;
    std::size_t delay;
};

/// Centered decision delay, floor((eq_taps + channel_taps - 1) / 2).
std::size_t default_decision_delay(std::size_t eq_taps, std::size_t channel_taps);

/// Least-squares truncated inverse: the length-num_taps filter g minimizing
/// || conv(h, g) - delta_delay ||_2. The exact inverse of a finite channel
/// has infinite length, so the design solves for the best FIR of the
/// budgeted length on the convolution matrix's normal equations.
ZfEqualizer design_zf(const ChannelRealization& channel, std::size_t num_taps,
                      std::size_t delay);

/// Filter the received sequence and realign by the decision delay, so
/// output sample n estimates transmitted symbol n. Tail samples whose
/// decision instant falls past the end of the input are zero.
std::vector<cplx> equalize_zf(const ZfEqualizer& eq, std::span<const cplx> received);

/// Shared FIR-and-realign kernel used by both ZF and trained adaptive
/// weights.
std::vector<cplx> apply_fir_delayed(std::span<const cplx> weights,
                                    std::span<const cplx> received,
                                    std::size_t delay);

} // namespace amueq
