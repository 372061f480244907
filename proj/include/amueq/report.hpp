#pragma once

#include <string>
#include <vector>

#include "amueq/harness.hpp"

namespace amueq {

/// CSV with header x,y,ci_low,ci_high,n_errors,n_bits, one row per point,
/// 12 significant digits, '\n' line endings. Byte-deterministic for
/// identical input.
std::string format_csv(const std::vector<CurvePoint>& points);

/// Write format_csv output to path; I/O failures name the path.
void emit_csv(const std::vector<CurvePoint>& points, const std::string& path);

/// Everything needed to reproduce a result file: the resolved config, the
/// seed, tool version, timestamps, and per-point trial accounting.
struct RunManifest {
    std::string tool_version;
    std::string command;
    std::uint64_t master_seed = 0;
    std::string started_utc;
    std::string finished_utc;
    ExperimentConfig config;

    struct Output {
        std::string path;
        std::string param_value; // swept value; empty outside sweeps
        std::uint64_t points = 0;
        std::vector<std::uint64_t> streams_used;
        std::vector<std::uint64_t> excluded_trials;

        friend bool operator==(const Output&, const Output&) = default;
    };
    std::vector<Output> outputs;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string to_json_text(const RunManifest& manifest);
RunManifest manifest_from_json_text(const std::string& text);

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

/// Current time as an ISO-8601 UTC stamp.
std::string utc_timestamp();

} // namespace amueq
