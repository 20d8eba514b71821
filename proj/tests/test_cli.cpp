// Config parsing, output formatting and end-to-end command runs.

#include "qcs/cli/commands.hpp"
#include "qcs/cli/config.hpp"
#include "qcs/cli/output.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace qcs::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("qcs_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json metadata(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "metadata.json")); }

// Parsed CSV: header plus numeric rows (empty cells become NaN).
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv read_csv(const fs::path& p) {
    Csv out;
    std::istringstream in(slurp(p));
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) {
            out.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                row.push_back(c.empty() ? std::nan("") : std::stod(c));
            } catch (const std::exception&) {
                row.push_back(std::nan(""));
            }
        }
        out.rows.push_back(row);
    }
    return out;
}

RunConfig config_for(Command c, const fs::path& out) {
    RunConfig cfg;
    cfg.command = c;
    cfg.out_dir = out.string();
    return cfg;
}

int tool_exit(const std::string& args) {
    const int status = std::system((std::string(QCS_TOOL_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-20) == "-2.5e-20");
    CHECK(format_number(12345678.9) == "12345678.9");
}

TEST_CASE("csv tables") {
    CsvTable t({"a", "b", "c"});
    t.add_row({1.5, 2LL, std::string("x")});
    CHECK(t.text() == "a,b,c\n1.5,2,x\n");
    CHECK(t.rows() == 1);
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("config text") {
    RunConfig c;
    apply_config_text(c, "# comment\n e_c = 2.5  \n\nshunt=4pi # trailing\nn_times = 64\n");
    CHECK(c.e_c == 2.5);
    CHECK(c.shunt == "4pi");
    CHECK(c.n_times == 64);
    CHECK_THROWS_AS(apply_config_text(c, "bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "e_c = abc\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(c, "n_times = 2.5\n"), ConfigError);
    try {
        apply_config_text(c, "e_c = 1\njust words\n");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(apply_config_file(c, "/nonexistent/qcs.cfg"), std::runtime_error);
}

TEST_CASE("per-command defaults and validation") {
    RunConfig c;
    c.command = Command::evolve;
    auto r = resolve(c);
    CHECK(*r.e_l == doctest::Approx(1.0 / (4 * std::numbers::pi * std::numbers::pi)));
    CHECK(*r.e_4pi == 0.0);
    CHECK(*r.phi_max_pi == 8.0);
    CHECK(*r.intervals == 2048);

    c.shunt = "4pi";
    r = resolve(c);
    CHECK(*r.e_4pi == 0.5);
    CHECK(*r.e_l == 0.0);

    c.command = Command::fluxonium_modes;
    c.shunt = "ind";
    r = resolve(c);
    CHECK(*r.phi_max_pi == 16.0);
    CHECK(*r.intervals == 4096);

    c.command = Command::bands;
    r = resolve(c);
    CHECK(*r.e_l == 0.0);

    RunConfig bad;
    bad.command = Command::evolve;
    bad.e_l = 0.1;
    bad.e_4pi = 0.5;
    CHECK_THROWS_AS(resolve(bad), ConfigError);
    bad = RunConfig{};
    bad.shunt = "ring";
    CHECK_THROWS_AS(resolve(bad), ConfigError);
    bad = RunConfig{};
    bad.e_c = -1.0;
    CHECK_THROWS_AS(resolve(bad), ConfigError);
    bad = RunConfig{};
    bad.n_k = 201;
    CHECK_THROWS_AS(resolve(bad), ConfigError);

    const auto echo = config_echo(resolve(RunConfig{}));
    CHECK(echo.begin().key() == "schema_version");
    CHECK(echo["schema_version"] == schema_version);
    CHECK(echo["command"] == "bands");
}

TEST_CASE("bands command") {
    const auto dir = scratch("bands");
    CHECK(run(config_for(Command::bands, dir)) == exit_ok);
    const auto meta = metadata(dir);
    CHECK(meta["schema_version"] == schema_version);
    CHECK(meta["band_ratio"].get<double>() == doctest::Approx(0.9).epsilon(0.02 / 0.9));
    for (const char* f : {"bands.csv", "config.json", "inset_kappa_0_band_0.csv", "inset_kappa_half_band_1.csv"}) {
        CHECK(fs::exists(dir / f));
    }
    const auto csv = read_csv(dir / "bands.csv");
    CHECK(csv.header == std::vector<std::string>{"kappa", "band", "energy"});
    CHECK(csv.rows.size() == 4 * 101);

    const auto again = scratch("bands_again");
    CHECK(run(config_for(Command::bands, again)) == exit_ok);
    CHECK(slurp(dir / "bands.csv") == slurp(again / "bands.csv"));

    SUBCASE("free rotor") {
        const auto rotor = scratch("bands_rotor");
        auto cfg = config_for(Command::bands, rotor);
        cfg.e_j = 0.0;
        CHECK(run(cfg) == exit_ok);
        for (const auto& row : read_csv(rotor / "bands.csv").rows) {
            if (row[1] == 0.0) CHECK(row[2] == doctest::Approx(row[0] * row[0]).epsilon(1e-10));
        }
        CHECK(metadata(rotor)["band_ratio"].is_null());
    }
}

TEST_CASE("evolve command") {
    SUBCASE("4pi") {
        const auto dir = scratch("evolve_4pi");
        auto cfg = config_for(Command::evolve, dir);
        cfg.shunt = "4pi";
        CHECK(run(cfg) == exit_ok);
        const auto meta = metadata(dir);
        CHECK(meta["t_2pi"].get<double>() == doctest::Approx(7.04).epsilon(0.01));
        CHECK(meta["max_residual"].get<double>() < 0.01);
        const auto trace = read_csv(dir / "trace.csv");
        CHECK(trace.header == std::vector<std::string>{"t", "p_center", "p_edge", "residual", "theta"});
        CHECK(trace.rows.front()[0] == 0.0);
        CHECK(trace.rows.front()[1] == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(fs::exists(dir / "snapshot_1_2.csv"));
    }
    SUBCASE("inductive") {
        const auto dir = scratch("evolve_ind");
        CHECK(run(config_for(Command::evolve, dir)) == exit_ok);
        const auto meta = metadata(dir);
        CHECK(meta["t_2pi"].get<double>() == doctest::Approx(6.8).epsilon(0.02));
        CHECK(meta["t_2pi_lowest_gap"].get<double>() > 0.0);
        const auto snap = read_csv(dir / "snapshot_0.csv");
        CHECK(snap.header == std::vector<std::string>{"k", "phi", "re", "im", "density"});
        CHECK(snap.rows.size() == 200 * 256);
    }
}

TEST_CASE("fluxonium-modes command") {
    const auto dir = scratch("flux");
    auto cfg = config_for(Command::fluxonium_modes, dir);
    cfg.n_modes = 60;
    cfg.gallery_modes = 2;
    CHECK(run(cfg) == exit_ok);
    CHECK(metadata(dir)["capture"].get<double>() > 1 - 1e-5);
    const auto weights = read_csv(dir / "mode_weights.csv");
    for (const auto& row : weights.rows) {
        if (static_cast<int>(row[0]) % 2 == 1) CHECK(std::sqrt(row[3]) < 1e-6);
    }
    CHECK(fs::exists(dir / "mode_1.csv"));
    CHECK_FALSE(fs::exists(dir / "mode_2.csv"));

    SUBCASE("harmonic limit") {
        const auto ho = scratch("flux_ho");
        auto c = config_for(Command::fluxonium_modes, ho);
        c.e_j = 0.0;
        c.n_modes = 40;
        c.gallery_modes = 0;
        c.capture_threshold = 0.5;
        CHECK(run(c) == exit_ok);
        const double w = 2.0 * std::sqrt(1.0 / (4 * std::numbers::pi * std::numbers::pi));
        for (const auto& row : read_csv(ho / "energies.csv").rows) {
            if (!std::isnan(row[2])) CHECK(row[2] == doctest::Approx(w).epsilon(2e-3));
        }
    }
}

TEST_CASE("protocol command") {
    const auto dir = scratch("protocol");
    CHECK(run(config_for(Command::protocol, dir)) == exit_ok);
    const auto z = read_csv(dir / "z_splitting.csv");
    REQUIRE(z.rows.size() == 4);
    for (std::size_t i = 0; i + 1 < z.rows.size(); ++i) CHECK(z.rows[i][3] < z.rows[i + 1][3]);
    CHECK(z.rows.back()[3] == doctest::Approx(0.25));
    const auto gates = read_csv(dir / "x_gates.csv");
    REQUIRE(gates.rows.size() == 4);
    CHECK(gates.rows[2][7] < 0.02);
    CHECK(gates.rows[3][7] < 0.02);
}

TEST_CASE("exit codes") {
    auto cfg = config_for(Command::bands, scratch("exit"));
    cfg.e_c = -1.0;
    CHECK(run(cfg) == exit_usage);

    auto io = config_for(Command::bands, fs::path("/dev/null/qcs"));
    CHECK(run(io) == exit_failure);

    auto strict = config_for(Command::fluxonium_modes, scratch("strict"));
    strict.n_modes = 40;
    strict.gallery_modes = 0;
    strict.capture_threshold = 1.0;  // a finite mode set never captures everything
    CHECK(run(strict) == exit_threshold_unmet);

    CHECK(tool_exit("--help") == 0);
    CHECK(tool_exit("") == exit_usage);
    CHECK(tool_exit("bands --no-such-flag 1") == exit_usage);
    CHECK(tool_exit("bands --ec -1 --out " + scratch("tool_bad").string()) == exit_usage);
    CHECK(tool_exit("bands --out " + scratch("tool_cfg").string() + " --config /nonexistent.cfg") == exit_failure);
    const auto ok = scratch("tool_ok");
    CHECK(tool_exit("bands --ej 0.5 --n-kappa 11 --out " + ok.string()) == exit_ok);
    const auto echo = nlohmann::json::parse(slurp(ok / "config.json"));
    CHECK(echo["e_j"] == 0.5);
    CHECK(echo["n_kappa"] == 11);
}
