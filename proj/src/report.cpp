#include "amueq/report.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace amueq {

namespace {

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

using nlohmann::json;

json channel_to_json(const ChannelSpec& channel) {
    json j;
    switch (channel.kind) {
        case ChannelSpec::Kind::Preset:
            j["kind"] = "preset";
            j["preset"] = preset_token(channel.preset);
            break;
        case ChannelSpec::Kind::Unit:
            j["kind"] = "unit";
            break;
        case ChannelSpec::Kind::Explicit:
            j["kind"] = "explicit";
            j["alpha"] = channel.alpha;
            j["mu"] = channel.mu;
            break;
    }
    return j;
}

ChannelSpec channel_from_json(const json& j) {
    ChannelSpec channel;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "preset") {
        channel.kind = ChannelSpec::Kind::Preset;
        channel.preset = preset_from_token(j.at("preset").get<std::string>());
    } else if (kind == "unit") {
        channel.kind = ChannelSpec::Kind::Unit;
    } else if (kind == "explicit") {
        channel.kind = ChannelSpec::Kind::Explicit;
        channel.alpha = j.at("alpha").get<double>();
        channel.mu = j.at("mu").get<double>();
    } else {
        throw std::invalid_argument("manifest: unknown channel kind '" + kind + "'");
    }
    return channel;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["channel"] = channel_to_json(cfg.channel);
    j["channel_taps"] = cfg.channel_taps;
    j["snr_grid_db"] = cfg.snr_grid_db;
    j["stream_length"] = cfg.stream_length;
    j["num_streams"] = cfg.num_streams;
    j["training_length"] = cfg.training_length;
    j["equalizer"] = equalizer_name(cfg.equalizer);
    j["equalizer_taps"] = cfg.equalizer_taps;
    j["step_size"] = cfg.step_size;
    j["forgetting"] = cfg.forgetting;
    j["initial_p_scale"] = cfg.initial_p_scale;
    j["num_runs_for_mse"] = cfg.num_runs_for_mse;
    j["master_seed"] = cfg.master_seed;
    j["decision_delay"] = cfg.decision_delay;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.channel = channel_from_json(j.at("channel"));
    cfg.channel_taps = j.at("channel_taps").get<std::size_t>();
    cfg.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
    cfg.stream_length = j.at("stream_length").get<std::size_t>();
    cfg.num_streams = j.at("num_streams").get<std::size_t>();
    cfg.training_length = j.at("training_length").get<std::size_t>();
    cfg.equalizer = equalizer_from_token(j.at("equalizer").get<std::string>());
    cfg.equalizer_taps = j.at("equalizer_taps").get<std::size_t>();
    cfg.step_size = j.at("step_size").get<double>();
    cfg.forgetting = j.at("forgetting").get<double>();
    cfg.initial_p_scale = j.at("initial_p_scale").get<double>();
    cfg.num_runs_for_mse = j.at("num_runs_for_mse").get<std::size_t>();
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    cfg.decision_delay = j.at("decision_delay").get<int>();
    return cfg;
}

} // namespace

std::string format_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out << "x,y,ci_low,ci_high,n_errors,n_bits\n";
    for (const CurvePoint& p : points) {
        out << csv_number(p.x) << ',' << csv_number(p.y) << ','
            << csv_number(p.ci_low) << ',' << csv_number(p.ci_high) << ','
            << p.n_errors << ',' << p.n_bits << '\n';
    }
    return out.str();
}

void emit_csv(const std::vector<CurvePoint>& points, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "'");
    out << format_csv(points);
    if (!out) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

std::string to_json_text(const RunManifest& manifest) {
    json j;
    j["tool_version"] = manifest.tool_version;
    j["command"] = manifest.command;
    j["master_seed"] = manifest.master_seed;
    j["started_utc"] = manifest.started_utc;
    j["finished_utc"] = manifest.finished_utc;
    j["config"] = config_to_json(manifest.config);
    j["outputs"] = json::array();
    for (const auto& output : manifest.outputs) {
        json o;
        o["path"] = output.path;
        o["param_value"] = output.param_value;
        o["points"] = output.points;
        o["streams_used"] = output.streams_used;
        o["excluded_trials"] = output.excluded_trials;
        j["outputs"].push_back(o);
    }
    return j.dump(2) + "\n";
}

RunManifest manifest_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    RunManifest manifest;
    manifest.tool_version = j.at("tool_version").get<std::string>();
    manifest.command = j.at("command").get<std::string>();
    manifest.master_seed = j.at("master_seed").get<std::uint64_t>();
    manifest.started_utc = j.at("started_utc").get<std::string>();
    manifest.finished_utc = j.at("finished_utc").get<std::string>();
    manifest.config = config_from_json(j.at("config"));
    for (const auto& o : j.at("outputs")) {
        RunManifest::Output output;
        output.path = o.at("path").get<std::string>();
        output.param_value = o.at("param_value").get<std::string>();
        output.points = o.at("points").get<std::uint64_t>();
        output.streams_used = o.at("streams_used").get<std::vector<std::uint64_t>>();
        output.excluded_trials =
            o.at("excluded_trials").get<std::vector<std::uint64_t>>();
        manifest.outputs.push_back(std::move(output));
    }
    return manifest;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest: cannot open '" + path + "'");
    out << to_json_text(manifest);
    if (!out) {
        throw std::runtime_error("write_manifest: write failed for '" + path + "'");
    }
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_manifest: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return manifest_from_json_text(buf.str());
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace amueq
