#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>

#include "amueq/config.hpp"
#include "amueq/harness.hpp"
#include "amueq/report.hpp"
#include "amueq/version.hpp"

namespace {

using namespace amueq;

unsigned threads_from_env() {
    const char* env = std::getenv("AMUEQ_THREADS");
    if (!env || !*env) return 0; // library default (hardware concurrency)
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
        throw std::invalid_argument("AMUEQ_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(v);
}

/// Flags shared by ber/converge/sweep; collected as strings so they merge
/// into (and override) a config file through the one parser.
struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App* cmd, const std::string& default_out) {
        out_path = default_out;
        cmd->add_option("--config", config_path, "key = value config file");
        cmd->add_option("--out", out_path, "output CSV path");
        auto capture = [this](const std::string& key) {
            return [this, key](const std::string& value) { overrides[key] = value; };
        };
        cmd->add_option_function<std::string>("--seed", capture("seed"),
                                              "master seed");
        cmd->add_option_function<std::string>("--snr", capture("snr"),
                                              "SNR grid: start:step:stop or list");
        cmd->add_option_function<std::string>(
            "--equalizer", capture("equalizer"), "one of none, zf, lms, rls");
        cmd->add_option_function<std::string>(
            "--preset", capture("preset"), "one of rxtx1, rxtx2, rxtx5, unit");
        cmd->add_option_function<std::string>("--channel-taps",
                                              capture("channel_taps"),
                                              "multipath tap count K");
        cmd->add_option_function<std::string>("--training-length",
                                              capture("training_length"),
                                              "pilot symbols per trial");
        cmd->add_option_function<std::string>("--eq-taps", capture("equalizer_taps"),
                                              "equalizer weight count");
        cmd->add_option_function<std::string>("--streams", capture("num_streams"),
                                              "stream cap per SNR point");
        cmd->add_option_function<std::string>("--stream-length",
                                              capture("stream_length"),
                                              "payload symbols per stream");
        cmd->add_option_function<std::string>("--step-size", capture("step_size"),
                                              "LMS step size eta");
        cmd->add_option_function<std::string>("--forgetting", capture("forgetting"),
                                              "RLS forgetting factor gamma");
        cmd->add_option_function<std::string>("--mse-runs",
                                              capture("num_runs_for_mse"),
                                              "trainings averaged per MSE curve");
        cmd->add_option_function<std::string>("--decision-delay",
                                              capture("decision_delay"),
                                              "decision delay (-1 = centered)");
    }

    ExperimentConfig resolve() const {
        std::map<std::string, std::string> entries;
        if (!config_path.empty()) entries = read_config_file(config_path);
        return parse_config(merge_entries(entries, overrides));
    }
};

RunManifest start_manifest(const std::string& command, const ExperimentConfig& cfg) {
    RunManifest manifest;
    manifest.tool_version = std::string(kToolVersion);
    manifest.command = command;
    manifest.master_seed = cfg.master_seed;
    manifest.started_utc = utc_timestamp();
    manifest.config = cfg;
    return manifest;
}

RunManifest::Output output_entry(const std::string& path,
                                 const std::string& param_value,
                                 const ExperimentResult& result) {
    RunManifest::Output output;
    output.path = path;
    output.param_value = param_value;
    output.points = result.points.size();
    for (const PointStats& s : result.stats) {
        output.streams_used.push_back(s.streams_used);
        output.excluded_trials.push_back(s.excluded_trials);
    }
    return output;
}

void print_ber_summary(const ExperimentResult& result) {
    for (const CurvePoint& p : result.points) {
        std::printf("snr=%g dB  ber=%.6g  (%llu/%llu)\n", p.x, p.y,
                    static_cast<unsigned long long>(p.n_errors),
                    static_cast<unsigned long long>(p.n_bits));
    }
    if (result.step_size_warning) {
        std::fprintf(stderr,
                     "warning: step size exceeds 2 / (input power * taps); "
                     "LMS may be unstable\n");
    }
}

int run_ber(const CommonFlags& flags) {
    const ExperimentConfig cfg = flags.resolve();
    RunManifest manifest = start_manifest("ber", cfg);
    const ExperimentResult result = run_ber_experiment(cfg, threads_from_env());
    emit_csv(result.points, flags.out_path);
    manifest.outputs.push_back(output_entry(flags.out_path, "", result));
    manifest.finished_utc = utc_timestamp();
    write_manifest(manifest, flags.out_path + ".manifest.json");
    print_ber_summary(result);
    std::printf("wrote %s\n", flags.out_path.c_str());
    return 0;
}

int run_converge(const CommonFlags& flags) {
    const ExperimentConfig cfg = flags.resolve();
    RunManifest manifest = start_manifest("converge", cfg);
    const ExperimentResult result = run_convergence_experiment(cfg, threads_from_env());
    emit_csv(result.points, flags.out_path);
    manifest.outputs.push_back(output_entry(flags.out_path, "", result));
    manifest.finished_utc = utc_timestamp();
    write_manifest(manifest, flags.out_path + ".manifest.json");
    std::printf("%zu iterations, final mse=%.6g, wrote %s\n", result.points.size(),
                result.points.empty() ? 0.0 : result.points.back().y,
                flags.out_path.c_str());
    return 0;
}

int run_sweep_cmd(const CommonFlags& flags, const std::string& param_name,
                  const std::string& values_csv) {
    const ExperimentConfig cfg = flags.resolve();
    const SweepParam param = sweep_param_from_string(param_name);
    std::vector<std::string> values;
    std::string item;
    std::istringstream in(values_csv);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) values.push_back(item);
    }

    RunManifest manifest = start_manifest("sweep", cfg);
    const std::vector<SweepEntry> entries =
        run_sweep(cfg, param, values, threads_from_env());

    std::string stem = flags.out_path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") {
        stem.resize(stem.size() - 4);
    }
    for (const SweepEntry& entry : entries) {
        const std::string path =
            stem + "_" + sweep_param_name(param) + "_" + entry.value + ".csv";
        emit_csv(entry.result.points, path);
        manifest.outputs.push_back(output_entry(path, entry.value, entry.result));
        std::printf("%s = %s -> %s\n", sweep_param_name(param).c_str(),
                    entry.value.c_str(), path.c_str());
    }
    manifest.finished_utc = utc_timestamp();
    write_manifest(manifest, stem + ".manifest.json");
    return 0;
}

int run_presets() {
    std::printf("%-8s %-7s %-7s %s\n", "name", "alpha", "mu", "link");
    for (const PresetLink& link : preset_links()) {
        std::printf("%-8s %-7.2f %-7.2f %s\n",
                    std::string(preset_name(link.name)).c_str(), link.params.alpha,
                    link.params.mu, link.los ? "LOS" : "non-LOS");
    }
    std::printf("\nMeasured sub-THz RX-TX link parameters; beta is chosen at run\n"
                "time so a K-tap channel has unit average energy.\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"BER and convergence experiments for ZF/LMS/RLS equalization "
                 "over alpha-mu fading channels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    CommonFlags ber_flags;
    CLI::App* ber = app.add_subcommand("ber", "BER vs SNR curve");
    ber_flags.attach(ber, "ber.csv");

    CommonFlags conv_flags;
    CLI::App* converge =
        app.add_subcommand("converge", "ensemble MSE per training iteration");
    conv_flags.attach(converge, "converge.csv");

    CommonFlags sweep_flags;
    std::string sweep_param;
    std::string sweep_values;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "BER curves while sweeping one parameter");
    sweep_flags.attach(sweep, "sweep.csv");
    sweep->add_option("--param", sweep_param,
                      "training_length | equalizer_taps | preset | channel_taps")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")->required();

    CLI::App* presets =
        app.add_subcommand("presets", "list the measured RX-TX parameter sets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ber->parsed()) return run_ber(ber_flags);
        if (converge->parsed()) return run_converge(conv_flags);
        if (sweep->parsed()) return run_sweep_cmd(sweep_flags, sweep_param, sweep_values);
        if (presets->parsed()) return run_presets();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
