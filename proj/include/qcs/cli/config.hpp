// config.hpp: Run configuration for the qcs command-line tool
//
// Config files are flat "key = value" text; '#' starts a comment. Units:
// E_J = 1, hbar = 1, so energies are in E_J and times in 1/E_J. Keys left
// unset fall back to per-command defaults when the config is resolved.

#pragma once

#include "qcs/params.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcs::cli {

inline constexpr int schema_version = 1;

enum class Command { bands, fluxonium_modes, evolve, protocol };

std::string command_name(Command c);
Command parse_command(std::string_view name);

// Bad keys, values or combinations; maps to the usage exit code.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Command command{Command::bands};

    double e_c{1.0};
    double e_j{1.0};
    std::optional<double> e_l;    // command default when unset
    std::optional<double> e_4pi;
    double n_x{0.0};
    double delta{0.2};

    int n_kappa{101};
    int n_bands{4};
    int charge_cutoff{40};

    int n_modes{100};
    std::optional<double> phi_max_pi;  // window half-width in units of pi
    std::optional<int> intervals;
    int n_k{200};
    int gallery_modes{7};

    std::string shunt{"ind"};  // ind | 4pi
    int fourpi_cutoff{80};
    int n_times{512};
    double time_span{1.1};     // in units of t_2pi
    double capture_threshold{1.0 - 1e-5};

    std::string out_dir{"."};
};

// All keys accepted in config files and as --key overrides.
const std::vector<std::string>& config_keys();

// Sets one field from text. Throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

// Parses "key = value" lines into config. Throws ConfigError with the line
// number on malformed input.
void apply_config_text(RunConfig& config, std::string_view text);
// Throws std::runtime_error when the file cannot be read.
void apply_config_file(RunConfig& config, const std::string& path);

// Fills per-command defaults and validates every field; throws ConfigError.
RunConfig resolve(RunConfig config);

// Physical parameters of a resolved config.
CircuitParams circuit_params(const RunConfig& resolved);

// Fully resolved echo, including schema_version.
nlohmann::ordered_json config_echo(const RunConfig& resolved);

}  // namespace qcs::cli
