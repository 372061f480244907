#pragma once

#include <map>
#include <string>

#include "amueq/harness.hpp"

namespace amueq {

/// key = value pairs from a config file: '#' starts a comment, blank lines
/// are skipped, later assignments win. Throws on malformed lines.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Resolve a key/value map into a full config. Every key is validated and
/// unknown keys are errors; missing keys take the documented defaults.
ExperimentConfig parse_config(const std::map<std::string, std::string>& entries);

/// Overlay overrides (e.g. CLI flags) onto base entries; override wins.
std::map<std::string, std::string> merge_entries(
    std::map<std::string, std::string> base,
    const std::map<std::string, std::string>& overrides);

/// Serialize a resolved config back to key = value text. Parsing the
/// result reproduces the config exactly.
std::string to_config_text(const ExperimentConfig& cfg);

/// Expand an SNR grid spec: either "start:step:stop" or a comma list.
/// Values may be "inf" for the noise-free sentinel.
std::vector<double> parse_snr_grid(const std::string& text);

/// Shortest decimal form of v that parses back to exactly v.
std::string format_double(double v);

} // namespace amueq
