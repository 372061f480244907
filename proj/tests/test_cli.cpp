#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "amueq/config.hpp"
#include "amueq/harness.hpp"
#include "amueq/report.hpp"
#include "amueq/version.hpp"

using namespace amueq;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("parse_config: defaults with equalizer=lms") {
    const ExperimentConfig cfg = parse_config({{"equalizer", "lms"}});
    CHECK(cfg.equalizer == EqualizerKind::Lms);
    CHECK(cfg.stream_length == 1000);
    CHECK(cfg.num_streams == 10000);
    CHECK(cfg.training_length == 1000);
    CHECK(cfg.equalizer_taps == 16);
    CHECK(cfg.step_size == 0.04);
    CHECK(cfg.forgetting == 0.999);
    CHECK(cfg.num_runs_for_mse == 100);
    CHECK(cfg.channel.kind == ChannelSpec::Kind::Preset);
    CHECK(cfg.channel.preset == Preset::RxTx1);
}

TEST_CASE("parse_config: snr grid range expansion") {
    const ExperimentConfig cfg = parse_config({{"snr", "0:2:12"}});
    CHECK(cfg.snr_grid_db == std::vector<double>{0, 2, 4, 6, 8, 10, 12});
    const ExperimentConfig list = parse_config({{"snr", "1,3.5,inf"}});
    CHECK(list.snr_grid_db.size() == 3);
    CHECK(std::isinf(list.snr_grid_db[2]));
}

TEST_CASE("parse_config: errors name the offending key") {
    CHECK_THROWS_WITH_AS(parse_config({{"training_length", "-5"}}),
                         "config key 'training_length': must be >= 1",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config({{"wibble", "3"}}),
                         "config key 'wibble': unknown key", std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"equalizer", "dfe"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"snr", "5:0:10"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"snr", "0:2:inf"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"seed", "-1"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"seed", "12x"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"alpha", "2.0"}}), std::invalid_argument);
    CHECK_THROWS_AS(parse_config({{"forgetting", "1.2"}}), std::invalid_argument);
}

TEST_CASE("parse_config: explicit alpha/mu channel and unit channel") {
    const ExperimentConfig cfg =
        parse_config({{"alpha", "2.0"}, {"mu", "1.0"}, {"channel_taps", "2"}});
    CHECK(cfg.channel.kind == ChannelSpec::Kind::Explicit);
    CHECK(cfg.channel.alpha == 2.0);
    CHECK(cfg.channel.mu == 1.0);

    const ExperimentConfig unit = parse_config({{"preset", "unit"}});
    CHECK(unit.channel.kind == ChannelSpec::Kind::Unit);
}

TEST_CASE("flags override config file entries") {
    const auto merged = merge_entries(
        {{"equalizer", "lms"}, {"seed", "1"}}, {{"seed", "42"}});
    const ExperimentConfig cfg = parse_config(merged);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.equalizer == EqualizerKind::Lms);
}

TEST_CASE("config text round-trips to the identical resolved config") {
    ExperimentConfig cfg;
    cfg.channel.kind = ChannelSpec::Kind::Explicit;
    cfg.channel.alpha = 2.64;
    cfg.channel.mu = 0.71;
    cfg.channel_taps = 3;
    cfg.snr_grid_db = {0, 2.5, std::numeric_limits<double>::infinity()};
    cfg.equalizer = EqualizerKind::Rls;
    cfg.step_size = 0.017;
    cfg.forgetting = 0.995;
    cfg.master_seed = 1234567890123ull;
    cfg.decision_delay = 4;

    TempFile file("amueq_roundtrip.cfg");
    {
        std::ofstream out(file.path);
        out << to_config_text(cfg);
    }
    const ExperimentConfig parsed = parse_config(read_config_file(file.path));
    CHECK(parsed == cfg);
}

TEST_CASE("read_config_file: comments, blanks, malformed lines") {
    TempFile file("amueq_parse.cfg");
    {
        std::ofstream out(file.path);
        out << "# comment line\n\n equalizer = rls  # trailing comment\n"
            << "seed=7\n";
    }
    const auto entries = read_config_file(file.path);
    CHECK(entries.at("equalizer") == "rls");
    CHECK(entries.at("seed") == "7");

    {
        std::ofstream out(file.path);
        out << "equalizer rls\n";
    }
    CHECK_THROWS_AS(read_config_file(file.path), std::invalid_argument);
    CHECK_THROWS_AS(read_config_file("/nonexistent/amueq.cfg"), std::runtime_error);
}

TEST_CASE("format_csv: header, field order, trivial cases") {
    CHECK(format_csv({}) == "x,y,ci_low,ci_high,n_errors,n_bits\n");
    CurvePoint p;
    p.x = 6.0;
    p.y = 1e-3;
    p.ci_low = 8.2e-4;
    p.ci_high = 1.22e-3;
    p.n_errors = 97;
    p.n_bits = 97000;
    const std::string text = format_csv({p});
    CHECK(text ==
          "x,y,ci_low,ci_high,n_errors,n_bits\n"
          "6,0.001,0.00082,0.00122,97,97000\n");
    CHECK(format_csv({p}) == text); // byte-deterministic
}

TEST_CASE("csv serialization carries 12 significant digits") {
    CurvePoint p;
    p.x = 1.0 / 3.0;
    p.y = 0.123456789012345;
    const std::string text = format_csv({p});
    CHECK(text.find("0.333333333333") != std::string::npos);
    CHECK(text.find("0.123456789012") != std::string::npos);
}

TEST_CASE("emit_csv writes bytes and surfaces path errors") {
    TempFile file("amueq_points.csv");
    CurvePoint p;
    p.x = 2;
    p.y = 0.25;
    p.ci_low = 0.2;
    p.ci_high = 0.3;
    p.n_errors = 25;
    p.n_bits = 100;
    emit_csv({p}, file.path);
    const std::string first = slurp(file.path);
    emit_csv({p}, file.path);
    CHECK(slurp(file.path) == first);

    CHECK_THROWS_WITH_AS(emit_csv({p}, "/nonexistent/dir/out.csv"),
                         "emit_csv: cannot open '/nonexistent/dir/out.csv'",
                         std::runtime_error);
}

TEST_CASE("a manifest's config echo reproduces its CSV exactly") {
    ExperimentConfig cfg;
    cfg.channel.kind = ChannelSpec::Kind::Preset;
    cfg.channel.preset = Preset::RxTx2;
    cfg.equalizer = EqualizerKind::Rls;
    cfg.snr_grid_db = {2.0, 6.0};
    cfg.num_streams = 30;
    cfg.training_length = 150;
    cfg.master_seed = 88;
    const std::string csv = format_csv(run_ber_experiment(cfg).points);

    RunManifest manifest;
    manifest.config = cfg;
    manifest.master_seed = cfg.master_seed;
    const RunManifest recovered = manifest_from_json_text(to_json_text(manifest));
    const std::string replayed =
        format_csv(run_ber_experiment(recovered.config).points);
    CHECK(replayed == csv);
}

TEST_CASE("manifest round-trips losslessly") {
    RunManifest manifest;
    manifest.tool_version = std::string(kToolVersion);
    manifest.command = "ber";
    manifest.master_seed = 42;
    manifest.started_utc = "2026-01-02T03:04:05Z";
    manifest.finished_utc = "2026-01-02T03:05:06Z";
    manifest.config.channel.kind = ChannelSpec::Kind::Preset;
    manifest.config.channel.preset = Preset::RxTx5;
    manifest.config.step_size = 0.04;
    manifest.config.master_seed = 42;
    RunManifest::Output output;
    output.path = "out.csv";
    output.points = 5;
    output.streams_used = {120, 340, 900, 2000, 10000};
    output.excluded_trials = {0, 0, 1, 0, 0};
    manifest.outputs.push_back(output);

    const RunManifest parsed = manifest_from_json_text(to_json_text(manifest));
    CHECK(parsed == manifest);

    TempFile file("amueq_manifest.json");
    write_manifest(manifest, file.path);
    CHECK(read_manifest(file.path) == manifest);
}
