#include "amueq/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace amueq {

namespace {

std::string trim(const std::string& s) {
    std::size_t first = 0;
    std::size_t last = s.size();
    while (first < last && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
    return s.substr(first, last - first);
}

[[noreturn]] void key_error(const std::string& key, const std::string& detail) {
    throw std::invalid_argument("config key '" + key + "': " + detail);
}

double parse_double_value(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        key_error(key, "'" + value + "' is not a number");
    }
    return v;
}

long long parse_int_value(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        key_error(key, "'" + value + "' is not an integer");
    }
    return v;
}

std::size_t parse_positive_count(const std::string& key, const std::string& value) {
    const long long v = parse_int_value(key, value);
    if (v < 1) key_error(key, "must be >= 1");
    return static_cast<std::size_t>(v);
}

} // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::vector<double> parse_snr_grid(const std::string& text) {
    const std::string spec = trim(text);
    if (spec.empty()) throw std::invalid_argument("config key 'snr': empty grid");

    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        std::istringstream in(spec);
        std::string start_s, step_s, stop_s;
        if (!std::getline(in, start_s, ':') || !std::getline(in, step_s, ':') ||
            !std::getline(in, stop_s)) {
            key_error("snr", "range must be start:step:stop");
        }
        const double start = parse_double_value("snr", trim(start_s));
        const double step = parse_double_value("snr", trim(step_s));
        const double stop = parse_double_value("snr", trim(stop_s));
        if (!std::isfinite(start) || !std::isfinite(step) || !std::isfinite(stop)) {
            key_error("snr", "range bounds must be finite");
        }
        if (!(step > 0)) key_error("snr", "range step must be positive");
        if (stop < start) key_error("snr", "range stop must be >= start");
        // Half-step slack keeps the endpoint in despite rounding.
        for (double v = start; v <= stop + step * 0.5; v += step) {
            grid.push_back(v);
        }
        return grid;
    }
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
        grid.push_back(parse_double_value("snr", trim(item)));
    }
    return grid;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config file '" + path + "' line " +
                                        std::to_string(line_no) +
                                        ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config file '" + path + "' line " +
                                        std::to_string(line_no) + ": empty key");
        }
        entries[key] = value;
    }
    return entries;
}

std::map<std::string, std::string> merge_entries(
    std::map<std::string, std::string> base,
    const std::map<std::string, std::string>& overrides) {
    for (const auto& [key, value] : overrides) {
        base[key] = value;
    }
    return base;
}

ExperimentConfig parse_config(const std::map<std::string, std::string>& entries) {
    ExperimentConfig cfg;
    bool have_alpha = false;
    bool have_mu = false;
    for (const auto& [key, value] : entries) {
        if (key == "preset") {
            if (value == "unit") {
                cfg.channel.kind = ChannelSpec::Kind::Unit;
            } else {
                cfg.channel.kind = ChannelSpec::Kind::Preset;
                try {
                    cfg.channel.preset = preset_from_token(value);
                } catch (const std::invalid_argument&) {
                    key_error(key, "'" + value +
                                       "' is not one of rxtx1, rxtx2, rxtx5, unit");
                }
            }
        } else if (key == "alpha") {
            cfg.channel.alpha = parse_double_value(key, value);
            if (!(cfg.channel.alpha > 0)) key_error(key, "must be positive");
            have_alpha = true;
        } else if (key == "mu") {
            cfg.channel.mu = parse_double_value(key, value);
            if (!(cfg.channel.mu > 0)) key_error(key, "must be positive");
            have_mu = true;
        } else if (key == "channel_taps") {
            cfg.channel_taps = parse_positive_count(key, value);
        } else if (key == "snr") {
            cfg.snr_grid_db = parse_snr_grid(value);
        } else if (key == "stream_length") {
            cfg.stream_length = parse_positive_count(key, value);
        } else if (key == "num_streams") {
            cfg.num_streams = parse_positive_count(key, value);
        } else if (key == "training_length") {
            cfg.training_length = parse_positive_count(key, value);
        } else if (key == "equalizer") {
            try {
                cfg.equalizer = equalizer_from_token(value);
            } catch (const std::invalid_argument&) {
                key_error(key, "'" + value + "' is not one of none, zf, lms, rls");
            }
        } else if (key == "equalizer_taps") {
            cfg.equalizer_taps = parse_positive_count(key, value);
        } else if (key == "step_size") {
            cfg.step_size = parse_double_value(key, value);
            if (!(cfg.step_size > 0)) key_error(key, "must be positive");
        } else if (key == "forgetting") {
            cfg.forgetting = parse_double_value(key, value);
            if (!(cfg.forgetting > 0) || cfg.forgetting > 1.0) {
                key_error(key, "must lie in (0, 1]");
            }
        } else if (key == "initial_p_scale") {
            cfg.initial_p_scale = parse_double_value(key, value);
            if (!(cfg.initial_p_scale > 0)) key_error(key, "must be positive");
        } else if (key == "num_runs_for_mse") {
            cfg.num_runs_for_mse = parse_positive_count(key, value);
        } else if (key == "seed") {
            // stoull would wrap "-1" silently
            if (value.empty() || value[0] == '-') {
                key_error(key, "'" + value + "' is not an unsigned integer");
            }
            try {
                std::size_t pos = 0;
                cfg.master_seed = std::stoull(value, &pos);
                if (pos != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                key_error(key, "'" + value + "' is not an unsigned integer");
            }
        } else if (key == "decision_delay") {
            const long long v = parse_int_value(key, value);
            if (v < -1) key_error(key, "must be -1 (auto) or non-negative");
            cfg.decision_delay = static_cast<int>(v);
        } else {
            key_error(key, "unknown key");
        }
    }
    if (have_alpha != have_mu) {
        key_error(have_alpha ? "alpha" : "mu", "alpha and mu must be given together");
    }
    if (have_alpha && have_mu) {
        cfg.channel.kind = ChannelSpec::Kind::Explicit;
        cfg.channel.preset = Preset::RxTx1;
    }
    cfg.validate();
    return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    switch (cfg.channel.kind) {
        case ChannelSpec::Kind::Preset:
            out << "preset = " << preset_token(cfg.channel.preset) << "\n";
            break;
        case ChannelSpec::Kind::Unit:
            out << "preset = unit\n";
            break;
        case ChannelSpec::Kind::Explicit:
            out << "alpha = " << format_double(cfg.channel.alpha) << "\n";
            out << "mu = " << format_double(cfg.channel.mu) << "\n";
            break;
    }
    out << "channel_taps = " << cfg.channel_taps << "\n";
    out << "snr = ";
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
        if (i) out << ",";
        out << format_double(cfg.snr_grid_db[i]);
    }
    out << "\n";
    out << "stream_length = " << cfg.stream_length << "\n";
    out << "num_streams = " << cfg.num_streams << "\n";
    out << "training_length = " << cfg.training_length << "\n";
    out << "equalizer = " << equalizer_name(cfg.equalizer) << "\n";
    out << "equalizer_taps = " << cfg.equalizer_taps << "\n";
    out << "step_size = " << format_double(cfg.step_size) << "\n";
    out << "forgetting = " << format_double(cfg.forgetting) << "\n";
    out << "initial_p_scale = " << format_double(cfg.initial_p_scale) << "\n";
    out << "num_runs_for_mse = " << cfg.num_runs_for_mse << "\n";
    out << "seed = " << cfg.master_seed << "\n";
    out << "decision_delay = " << cfg.decision_delay << "\n";
    return out.str();
}

} // namespace amueq
