#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amueq/alpha_mu.hpp"

namespace amueq {

enum class EqualizerKind { None, Zf, Lms, Rls };

/// Channel description for a campaign: one of the measured presets, an
/// explicit (alpha, mu) pair, or a fixed unit tap (pure-AWGN reference).
struct ChannelSpec {
    enum class Kind { Preset, Explicit, Unit };
    Kind kind = Kind::Preset;
    Preset preset = Preset::RxTx1;
    double alpha = 0.0;
    double mu = 0.0;

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

/// One Monte Carlo campaign. Defaults: 1000-symbol streams, up to 10000
/// streams per SNR point, training length 1000, 16-tap equalizer, eta
/// 0.04, gamma 0.999, 100 runs for MSE traces.
struct ExperimentConfig {
    ChannelSpec channel;
    std::size_t channel_taps = 1;
    std::vector<double> snr_grid_db = {0, 2, 4, 6, 8, 10, 12};
    std::size_t stream_length = 1000;
    std::size_t num_streams = 10000;
    std::size_t training_length = 1000;
    EqualizerKind equalizer = EqualizerKind::Lms;
    std::size_t equalizer_taps = 16;
    double step_size = 0.04;
    double forgetting = 0.999;
    double initial_p_scale = 1.0;
    std::size_t num_runs_for_mse = 100;
    std::uint64_t master_seed = 1;
    // < 0 selects the centered default (equalizer_taps + K - 1) / 2.
    int decision_delay = -1;

    void validate() const; // throws std::invalid_argument naming the field

    std::size_t resolved_delay() const;
    /// Distribution parameters with beta set for unit average channel
    /// energy across the configured tap count.
    AlphaMuParams channel_params() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// One point of a BER or MSE curve. x is SNR in dB for BER curves and the
/// 1-based iteration index for convergence curves; ci bounds are a 95%
/// interval. n_errors/n_bits are zero on convergence curves.
struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t n_errors = 0;
    std::uint64_t n_bits = 0;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct PointStats {
    std::uint64_t streams_used = 0;
    std::uint64_t excluded_trials = 0;
};

struct ExperimentResult {
    std::vector<CurvePoint> points;
    std::vector<PointStats> stats; // one entry per SNR point (BER runs)
    bool step_size_warning = false;
};

/// Streams accumulate per SNR point until this many bit errors or the
/// num_streams cap, whichever comes first.
inline constexpr std::uint64_t kBerErrorFloor = 100;

/// Order-independent reduction of per-trial outcomes into one BER point.
/// Trials are consumed strictly in index order; once the error floor is
/// crossed the point is done and later trials are ignored, so the result
/// cannot depend on how trials were scheduled.
struct BerAccumulator {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    PointStats stats;
    bool warned = false;
    bool done = false;

    /// One trial's result: error/bit counts, or an aborted trial
    /// (excluded = true), plus the step-size warning flag. Returns done.
    bool consume(std::uint64_t trial_errors, std::uint64_t trial_bits,
                 bool excluded, bool warning,
                 std::uint64_t floor = kBerErrorFloor);
};

/// BER vs SNR. Per point and per trial: draw a channel, train on a pilot
/// frame through that channel plus fresh noise (ZF designs from the true
/// taps instead), then push an independent payload stream through the same
/// realization with fresh noise and count bit errors. Deterministic given
/// master_seed, independent of the thread count.
ExperimentResult run_ber_experiment(const ExperimentConfig& cfg,
                                    unsigned threads = 0);

/// Ensemble MSE per training iteration over num_runs_for_mse independent
/// trainings (fresh channel and noise each). Uses the first SNR grid
/// entry. LMS or RLS only.
ExperimentResult run_convergence_experiment(const ExperimentConfig& cfg,
                                            unsigned threads = 0);

enum class SweepParam { TrainingLength, EqualizerTaps, Preset, ChannelTaps };

struct SweepEntry {
    std::string value;
    ExperimentResult result;
};

/// Run the BER experiment once per value of the swept parameter, with the
/// same master seed so only that parameter varies.
std::vector<SweepEntry> run_sweep(const ExperimentConfig& base, SweepParam param,
                                  const std::vector<std::string>& values,
                                  unsigned threads = 0);

SweepParam sweep_param_from_string(const std::string& name);
std::string sweep_param_name(SweepParam param);

std::string equalizer_name(EqualizerKind kind);
EqualizerKind equalizer_from_token(const std::string& token);

/// Lower-case config/CLI tokens ("rxtx1", ...).
Preset preset_from_token(const std::string& token);
std::string preset_token(Preset p);

} // namespace amueq
