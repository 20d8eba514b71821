// config.cpp: Config parsing, per-command defaults and validation

#include "qcs/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qcs::cli {

namespace {

constexpr double inductive_default_e_l = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
constexpr double fourpi_default_e_4pi = 0.5;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(text) +
                          "'");
    }
    return v;
}

int parse_int(std::string_view key, std::string_view text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(text) +
                          "'");
    }
    return v;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

std::string command_name(Command c) {
    switch (c) {
        case Command::bands: return "bands";
        case Command::fluxonium_modes: return "fluxonium-modes";
        case Command::evolve: return "evolve";
        case Command::protocol: return "protocol";
    }
    return "bands";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::bands, Command::fluxonium_modes, Command::evolve, Command::protocol}) {
        if (command_name(c) == name) return c;
    }
    throw ConfigError("unknown command '" + std::string(name) + "'");
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "e_c",       "e_j",        "e_l",           "e_4pi",         "n_x",
        "delta",     "n_kappa",    "n_bands",       "charge_cutoff", "n_modes",
        "phi_max_pi", "intervals", "n_k",           "gallery_modes", "shunt",
        "fourpi_cutoff", "n_times", "time_span",    "capture_threshold"};
    return keys;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "e_c") c.e_c = parse_double(key, value);
    else if (key == "e_j") c.e_j = parse_double(key, value);
    else if (key == "e_l") c.e_l = parse_double(key, value);
    else if (key == "e_4pi") c.e_4pi = parse_double(key, value);
    else if (key == "n_x") c.n_x = parse_double(key, value);
    else if (key == "delta") c.delta = parse_double(key, value);
    else if (key == "n_kappa") c.n_kappa = parse_int(key, value);
    else if (key == "n_bands") c.n_bands = parse_int(key, value);
    else if (key == "charge_cutoff") c.charge_cutoff = parse_int(key, value);
    else if (key == "n_modes") c.n_modes = parse_int(key, value);
    else if (key == "phi_max_pi") c.phi_max_pi = parse_double(key, value);
    else if (key == "intervals") c.intervals = parse_int(key, value);
    else if (key == "n_k") c.n_k = parse_int(key, value);
    else if (key == "gallery_modes") c.gallery_modes = parse_int(key, value);
    else if (key == "shunt") c.shunt = std::string(value);
    else if (key == "fourpi_cutoff") c.fourpi_cutoff = parse_int(key, value);
    else if (key == "n_times") c.n_times = parse_int(key, value);
    else if (key == "time_span") c.time_span = parse_double(key, value);
    else if (key == "capture_threshold") c.capture_threshold = parse_double(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& config, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        try {
            apply_setting(config, key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(config, buffer.str());
}

RunConfig resolve(RunConfig c) {
    const bool inductive_modes =
        c.command == Command::fluxonium_modes || (c.command == Command::evolve && c.shunt == "ind");
    require(c.shunt == "ind" || c.shunt == "4pi", "shunt must be 'ind' or '4pi'");

    if (c.command == Command::evolve && c.shunt == "4pi") {
        if (!c.e_4pi) c.e_4pi = fourpi_default_e_4pi;
        if (!c.e_l) c.e_l = 0.0;
    } else if (c.command == Command::protocol) {
        // Each shunt in the protocol table runs with its own element only.
        if (!c.e_l) c.e_l = inductive_default_e_l;
        if (!c.e_4pi) c.e_4pi = fourpi_default_e_4pi;
    } else if (inductive_modes) {
        if (!c.e_l) c.e_l = inductive_default_e_l;
        if (!c.e_4pi) c.e_4pi = 0.0;
    } else {
        if (!c.e_l) c.e_l = 0.0;
        if (!c.e_4pi) c.e_4pi = 0.0;
    }
    // Spacing work needs the wider window; dynamics converge in +-8 pi.
    if (!c.phi_max_pi) c.phi_max_pi = c.command == Command::fluxonium_modes ? 16.0 : 8.0;
    if (!c.intervals) c.intervals = static_cast<int>(std::lround(256.0 * *c.phi_max_pi));

    try {
        circuit_params(c).validate();
        if (c.command == Command::evolve) circuit_params(c).validate_single_shunt();
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    if (c.command == Command::fluxonium_modes ||
        (c.command == Command::evolve && c.shunt == "ind")) {
        require(*c.e_l > 0.0, "e_l must be positive for inductive runs");
    }
    if (c.command == Command::protocol) {
        require(*c.e_l > 0.0 && *c.e_4pi > 0.0, "protocol needs e_l > 0 and e_4pi > 0");
    }
    require(c.n_kappa >= 2, "n_kappa must be >= 2");
    require(c.n_bands >= 1 && c.n_bands <= c.charge_cutoff, "n_bands must be in [1, charge_cutoff]");
    require(c.charge_cutoff >= 10, "charge_cutoff must be >= 10");
    require(c.n_modes >= 1, "n_modes must be >= 1");
    const double whole = std::round(*c.phi_max_pi);
    require(*c.phi_max_pi > 0.0 && std::abs(*c.phi_max_pi - whole) < 1e-12,
            "phi_max_pi must be a positive integer");
    require(*c.intervals >= 512, "intervals must be >= 512");
    require(c.n_k >= 16 && c.n_k % 2 == 0, "n_k must be even and >= 16");
    require(c.gallery_modes >= 0 && c.gallery_modes <= c.n_modes,
            "gallery_modes must be in [0, n_modes]");
    require(c.fourpi_cutoff >= 20, "fourpi_cutoff must be >= 20");
    require(c.n_times >= 2, "n_times must be >= 2");
    require(c.time_span > 0.0, "time_span must be positive");
    require(c.capture_threshold > 0.0 && c.capture_threshold <= 1.0,
            "capture_threshold must be in (0, 1]");
    return c;
}

CircuitParams circuit_params(const RunConfig& c) {
    CircuitParams p;
    p.e_c = c.e_c;
    p.e_j = c.e_j;
    p.e_l = c.e_l.value_or(0.0);
    p.e_4pi = c.e_4pi.value_or(0.0);
    p.n_x = c.n_x;
    p.delta = c.delta;
    return p;
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = schema_version;
    j["command"] = command_name(c.command);
    j["units"] = "E_J = 1, hbar = 1";
    j["e_c"] = c.e_c;
    j["e_j"] = c.e_j;
    j["e_l"] = c.e_l.value_or(0.0);
    j["e_4pi"] = c.e_4pi.value_or(0.0);
    j["n_x"] = c.n_x;
    j["delta"] = c.delta;
    j["n_kappa"] = c.n_kappa;
    j["n_bands"] = c.n_bands;
    j["charge_cutoff"] = c.charge_cutoff;
    j["n_modes"] = c.n_modes;
    j["phi_max_pi"] = c.phi_max_pi.value_or(0.0);
    j["intervals"] = c.intervals.value_or(0);
    j["n_k"] = c.n_k;
    j["gallery_modes"] = c.gallery_modes;
    j["shunt"] = c.shunt;
    j["fourpi_cutoff"] = c.fourpi_cutoff;
    j["n_times"] = c.n_times;
    j["time_span"] = c.time_span;
    j["capture_threshold"] = c.capture_threshold;
    return j;
}

}  // namespace qcs::cli
