#include "amueq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <thread>

#include "amueq/adaptive.hpp"
#include "amueq/signal.hpp"
#include "amueq/stats.hpp"
#include "amueq/zf.hpp"

namespace amueq {

namespace {

// Stream tags for the seed-splitting rule; combined with the SNR point
// index so every (experiment kind, point, trial) gets its own substream.
constexpr std::uint64_t kBerStream = 1;
constexpr std::uint64_t kMseStream = 2;

std::uint64_t stream_tag(std::uint64_t kind, std::uint64_t point_index) {
    return (kind << 32) | point_index;
}

unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Evaluate fn(i) for i in [begin, end), filling out[i - begin]. Work is
/// split in blocks across the workers; results land at fixed indices, so
/// scheduling cannot change them.
template <typename T, typename Fn>
void parallel_map(std::uint64_t begin, std::uint64_t end, unsigned threads,
                  std::vector<T>& out, Fn&& fn) {
    const std::uint64_t count = end - begin;
    out.resize(count);
    if (count == 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), count));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(begin + i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            out[i] = fn(begin + i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

struct TrialOutcome {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    bool excluded = false;
    bool step_warning = false;
};

ChannelRealization make_channel(const ExperimentConfig& cfg,
                                const AlphaMuParams& params, Rng& rng) {
    if (cfg.channel.kind == ChannelSpec::Kind::Unit) {
        return ChannelRealization{{cplx(1.0, 0.0)}, params, 0};
    }
    return draw_channel(params, cfg.channel_taps, rng());
}

// RNG consumption order within a trial is fixed: channel seed, pilot bits,
// pilot noise, payload bits, payload noise.
TrialOutcome ber_trial(const ExperimentConfig& cfg, const AlphaMuParams& params,
                       double snr_db, std::size_t point_index,
                       std::uint64_t trial_index) {
    Rng rng(derive_seed(cfg.master_seed, stream_tag(kBerStream, point_index),
                        trial_index));
    const ChannelRealization channel = make_channel(cfg, params, rng);
    const std::size_t delay = cfg.resolved_delay();

    std::vector<cplx> weights;
    std::size_t zf_delay = delay;
    TrialOutcome outcome;
    try {
        switch (cfg.equalizer) {
            case EqualizerKind::None:
                break;
            case EqualizerKind::Zf: {
                const ZfEqualizer eq = design_zf(channel, cfg.equalizer_taps, delay);
                weights = eq.taps;
                zf_delay = eq.delay;
                break;
            }
            case EqualizerKind::Lms: {
                const SymbolStream pilot =
                    bpsk_modulate(random_bits(cfg.training_length, rng));
                const NoisySignal rx =
                    add_awgn(apply_channel(pilot, channel), snr_db, rng);
                const TrainingRecord rec =
                    train(LmsConfig{cfg.step_size, cfg.equalizer_taps - 1}, pilot,
                          rx.samples, delay);
                weights = rec.final_weights;
                outcome.step_warning = rec.step_size_warning;
                break;
            }
            case EqualizerKind::Rls: {
                const SymbolStream pilot =
                    bpsk_modulate(random_bits(cfg.training_length, rng));
                const NoisySignal rx =
                    add_awgn(apply_channel(pilot, channel), snr_db, rng);
                const TrainingRecord rec =
                    train(RlsConfig{cfg.forgetting, cfg.equalizer_taps - 1,
                                    cfg.initial_p_scale},
                          pilot, rx.samples, delay);
                weights = rec.final_weights;
                break;
            }
        }
    } catch (const NumericalBreakdown&) {
        outcome.excluded = true;
        return outcome;
    } catch (const SingularChannel&) {
        outcome.excluded = true;
        return outcome;
    }

    const SymbolStream payload = bpsk_modulate(random_bits(cfg.stream_length, rng));
    const NoisySignal rx = add_awgn(apply_channel(payload, channel), snr_db, rng);

    std::vector<cplx> estimates;
    if (cfg.equalizer == EqualizerKind::None) {
        estimates = rx.samples;
    } else {
        estimates = equalize(weights, rx.samples, zf_delay);
    }

    // Symbols whose decision sample would fall past the end of the frame
    // are undecidable and are not counted.
    const std::size_t decided = cfg.stream_length - delay;
    const std::vector<std::uint8_t> detected = bpsk_demodulate(estimates);
    for (std::size_t i = 0; i < decided; ++i) {
        if (detected[i] != payload.bits[i]) ++outcome.errors;
    }
    outcome.bits = decided;
    return outcome;
}

CurvePoint make_ber_point(double snr_db, std::uint64_t errors, std::uint64_t bits) {
    CurvePoint point;
    point.x = snr_db;
    point.n_errors = errors;
    point.n_bits = bits;
    if (bits == 0) {
        point.y = 0.0;
        point.ci_low = 0.0;
        point.ci_high = 1.0;
        return point;
    }
    point.y = static_cast<double>(errors) / static_cast<double>(bits);
    const WilsonInterval ci = wilson_interval(errors, bits);
    point.ci_low = ci.low;
    point.ci_high = ci.high;
    return point;
}

std::optional<std::vector<double>> mse_trial(const ExperimentConfig& cfg,
                                             const AlphaMuParams& params,
                                             double snr_db,
                                             std::uint64_t run_index) {
    Rng rng(derive_seed(cfg.master_seed, stream_tag(kMseStream, 0), run_index));
    const ChannelRealization channel = make_channel(cfg, params, rng);
    const std::size_t delay = cfg.resolved_delay();
    const SymbolStream pilot = bpsk_modulate(random_bits(cfg.training_length, rng));
    const NoisySignal rx = add_awgn(apply_channel(pilot, channel), snr_db, rng);
    try {
        if (cfg.equalizer == EqualizerKind::Lms) {
            return train(LmsConfig{cfg.step_size, cfg.equalizer_taps - 1}, pilot,
                         rx.samples, delay)
                .squared_error;
        }
        return train(RlsConfig{cfg.forgetting, cfg.equalizer_taps - 1,
                               cfg.initial_p_scale},
                     pilot, rx.samples, delay)
            .squared_error;
    } catch (const NumericalBreakdown&) {
        return std::nullopt;
    }
}

} // namespace

bool BerAccumulator::consume(std::uint64_t trial_errors, std::uint64_t trial_bits,
                             bool excluded, bool warning, std::uint64_t floor) {
    if (done) return true;
    ++stats.streams_used;
    if (excluded) {
        ++stats.excluded_trials;
        return false;
    }
    errors += trial_errors;
    bits += trial_bits;
    warned = warned || warning;
    if (errors >= floor) done = true;
    return done;
}

void ExperimentConfig::validate() const {
    if (channel_taps < 1) throw std::invalid_argument("channel_taps must be >= 1");
    if (channel.kind == ChannelSpec::Kind::Unit && channel_taps != 1) {
        throw std::invalid_argument("channel_taps must be 1 for the unit channel");
    }
    if (channel.kind == ChannelSpec::Kind::Explicit) {
        if (!(channel.alpha > 0)) throw std::invalid_argument("alpha must be positive");
        if (!(channel.mu > 0)) throw std::invalid_argument("mu must be positive");
    }
    if (snr_grid_db.empty()) throw std::invalid_argument("snr grid must be non-empty");
    for (double s : snr_grid_db) {
        if (std::isnan(s)) throw std::invalid_argument("snr grid contains NaN");
    }
    if (stream_length < 1) throw std::invalid_argument("stream_length must be >= 1");
    if (num_streams < 1) throw std::invalid_argument("num_streams must be >= 1");
    if (training_length < 1) throw std::invalid_argument("training_length must be >= 1");
    if (equalizer_taps < 1) throw std::invalid_argument("equalizer_taps must be >= 1");
    if (!(step_size > 0)) throw std::invalid_argument("step_size must be positive");
    if (!(forgetting > 0) || forgetting > 1.0) {
        throw std::invalid_argument("forgetting must lie in (0, 1]");
    }
    if (!(initial_p_scale > 0)) {
        throw std::invalid_argument("initial_p_scale must be positive");
    }
    if (num_runs_for_mse < 1) {
        throw std::invalid_argument("num_runs_for_mse must be >= 1");
    }
    if ((equalizer == EqualizerKind::Lms || equalizer == EqualizerKind::Rls) &&
        training_length < equalizer_taps) {
        throw std::invalid_argument("training_length must be >= equalizer_taps");
    }
    if (resolved_delay() >= stream_length) {
        throw std::invalid_argument("decision_delay must be < stream_length");
    }
}

std::size_t ExperimentConfig::resolved_delay() const {
    if (equalizer == EqualizerKind::None) return 0;
    if (decision_delay >= 0) return static_cast<std::size_t>(decision_delay);
    return default_decision_delay(equalizer_taps, channel_taps);
}

AlphaMuParams ExperimentConfig::channel_params() const {
    double alpha = channel.alpha;
    double mu = channel.mu;
    if (channel.kind == ChannelSpec::Kind::Preset) {
        const PresetLink& link = preset_link(channel.preset);
        alpha = link.params.alpha;
        mu = link.params.mu;
    } else if (channel.kind == ChannelSpec::Kind::Unit) {
        return AlphaMuParams(2.0, 1.0, 1.0); // placeholder; taps are fixed
    }
    const double beta =
        beta_for_mean_power(alpha, mu, 1.0 / static_cast<double>(channel_taps));
    return AlphaMuParams(alpha, mu, beta);
}

ExperimentResult run_ber_experiment(const ExperimentConfig& cfg, unsigned threads) {
    cfg.validate();
    const AlphaMuParams params = cfg.channel_params();
    ExperimentResult result;
    result.points.reserve(cfg.snr_grid_db.size());
    result.stats.reserve(cfg.snr_grid_db.size());

    for (std::size_t point_index = 0; point_index < cfg.snr_grid_db.size();
         ++point_index) {
        const double snr_db = cfg.snr_grid_db[point_index];
        BerAccumulator acc;

        const std::uint64_t chunk_size =
            std::max<std::uint64_t>(64, std::uint64_t{16} * resolve_threads(threads));
        std::vector<TrialOutcome> outcomes;
        for (std::uint64_t start = 0; start < cfg.num_streams && !acc.done;
             start += chunk_size) {
            const std::uint64_t stop =
                std::min<std::uint64_t>(start + chunk_size, cfg.num_streams);
            parallel_map(start, stop, threads, outcomes, [&](std::uint64_t trial) {
                return ber_trial(cfg, params, snr_db, point_index, trial);
            });
            for (const TrialOutcome& o : outcomes) {
                if (acc.consume(o.errors, o.bits, o.excluded, o.step_warning)) break;
            }
        }
        result.step_size_warning = result.step_size_warning || acc.warned;
        result.points.push_back(make_ber_point(snr_db, acc.errors, acc.bits));
        result.stats.push_back(acc.stats);
    }
    return result;
}

ExperimentResult run_convergence_experiment(const ExperimentConfig& cfg,
                                            unsigned threads) {
    cfg.validate();
    if (cfg.equalizer != EqualizerKind::Lms && cfg.equalizer != EqualizerKind::Rls) {
        throw std::invalid_argument("convergence experiment requires lms or rls");
    }
    const AlphaMuParams params = cfg.channel_params();
    const double snr_db = cfg.snr_grid_db.front();

    std::vector<std::optional<std::vector<double>>> traces;
    parallel_map(0, cfg.num_runs_for_mse, threads, traces, [&](std::uint64_t run) {
        return mse_trial(cfg, params, snr_db, run);
    });

    const std::size_t len = cfg.training_length;
    std::vector<double> sum(len, 0.0);
    std::vector<double> sum_sq(len, 0.0);
    PointStats stats;
    std::uint64_t kept = 0;
    for (const auto& trace : traces) {
        ++stats.streams_used;
        if (!trace) {
            ++stats.excluded_trials;
            continue;
        }
        ++kept;
        for (std::size_t n = 0; n < len; ++n) {
            sum[n] += (*trace)[n];
            sum_sq[n] += (*trace)[n] * (*trace)[n];
        }
    }
    if (kept == 0) throw std::runtime_error("all convergence runs were excluded");

    ExperimentResult result;
    result.points.reserve(len);
    const double r = static_cast<double>(kept);
    for (std::size_t n = 0; n < len; ++n) {
        CurvePoint point;
        point.x = static_cast<double>(n + 1);
        point.y = sum[n] / r;
        double half = 0.0;
        if (kept > 1) {
            const double var =
                std::max(0.0, (sum_sq[n] - r * point.y * point.y) / (r - 1.0));
            half = kZ95 * std::sqrt(var / r);
        }
        point.ci_low = std::max(0.0, point.y - half);
        point.ci_high = point.y + half;
        result.points.push_back(point);
    }
    result.stats.push_back(stats);
    return result;
}

namespace {

std::size_t parse_count(const std::string& value, const std::string& what) {
    std::size_t pos = 0;
    long long parsed = 0;
    try {
        parsed = std::stoll(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("sweep value '" + value + "' is not a valid " + what);
    }
    if (pos != value.size() || parsed < 1) {
        throw std::invalid_argument("sweep value '" + value + "' is not a valid " + what);
    }
    return static_cast<std::size_t>(parsed);
}

} // namespace

std::vector<SweepEntry> run_sweep(const ExperimentConfig& base, SweepParam param,
                                  const std::vector<std::string>& values,
                                  unsigned threads) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
    std::vector<SweepEntry> entries;
    entries.reserve(values.size());
    for (const std::string& value : values) {
        ExperimentConfig cfg = base;
        switch (param) {
            case SweepParam::TrainingLength:
                cfg.training_length = parse_count(value, "training_length");
                break;
            case SweepParam::EqualizerTaps:
                cfg.equalizer_taps = parse_count(value, "equalizer_taps");
                break;
            case SweepParam::ChannelTaps:
                cfg.channel_taps = parse_count(value, "channel_taps");
                break;
            case SweepParam::Preset:
                cfg.channel.kind = ChannelSpec::Kind::Preset;
                cfg.channel.preset = preset_from_token(value);
                break;
        }
        entries.push_back(SweepEntry{value, run_ber_experiment(cfg, threads)});
    }
    return entries;
}

SweepParam sweep_param_from_string(const std::string& name) {
    if (name == "training_length") return SweepParam::TrainingLength;
    if (name == "equalizer_taps") return SweepParam::EqualizerTaps;
    if (name == "preset") return SweepParam::Preset;
    if (name == "channel_taps") return SweepParam::ChannelTaps;
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

std::string sweep_param_name(SweepParam param) {
    switch (param) {
        case SweepParam::TrainingLength: return "training_length";
        case SweepParam::EqualizerTaps: return "equalizer_taps";
        case SweepParam::Preset: return "preset";
        case SweepParam::ChannelTaps: return "channel_taps";
    }
    throw std::logic_error("unknown sweep parameter");
}

std::string equalizer_name(EqualizerKind kind) {
    switch (kind) {
        case EqualizerKind::None: return "none";
        case EqualizerKind::Zf: return "zf";
        case EqualizerKind::Lms: return "lms";
        case EqualizerKind::Rls: return "rls";
    }
    throw std::logic_error("unknown equalizer kind");
}

EqualizerKind equalizer_from_token(const std::string& token) {
    if (token == "none") return EqualizerKind::None;
    if (token == "zf") return EqualizerKind::Zf;
    if (token == "lms") return EqualizerKind::Lms;
    if (token == "rls") return EqualizerKind::Rls;
    throw std::invalid_argument("unknown equalizer '" + token + "'");
}

Preset preset_from_token(const std::string& token) {
    if (token == "rxtx1") return Preset::RxTx1;
    if (token == "rxtx2") return Preset::RxTx2;
    if (token == "rxtx5") return Preset::RxTx5;
    throw std::invalid_argument("unknown preset '" + token + "'");
}

std::string preset_token(Preset p) {
    switch (p) {
        case Preset::RxTx1: return "rxtx1";
        case Preset::RxTx2: return "rxtx2";
        case Preset::RxTx5: return "rxtx5";
    }
    throw std::logic_error("unknown preset");
}

} // namespace amueq
