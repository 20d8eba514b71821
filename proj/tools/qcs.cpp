// qcs: quasicharge simulator command-line tool
//
//   qcs <bands|fluxonium-modes|evolve|protocol> [--config PATH] [--out DIR]
//       [--e-c X] [--e-j X] ... (one override per config key)

#include "qcs/cli/commands.hpp"
#include "qcs/cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

namespace {

std::string flag_for(const std::string& key) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    return flag;
}

// Short aliases for the physical fields.
const std::map<std::string, std::string> aliases{
    {"e_c", "--ec"}, {"e_j", "--ej"}, {"e_l", "--el"}, {"e_4pi", "--e4pi"}, {"n_x", "--nx"}};

struct Invocation {
    std::string config_path;
    std::string out_dir{"."};
    std::map<std::string, std::string> overrides;
};

void add_common(CLI::App& sub, Invocation& inv) {
    sub.add_option("--config", inv.config_path, "flat key = value config file");
    sub.add_option("--out", inv.out_dir, "output directory")->capture_default_str();
    for (const auto& key : qcs::cli::config_keys()) {
        std::string names = flag_for(key);
        if (const auto it = aliases.find(key); it != aliases.end()) names += "," + it->second;
        sub.add_option_function<std::string>(
            names, [&inv, key](const std::string& v) { inv.overrides[key] = v; },
            "override config key " + key);
    }
}

std::string summary(qcs::cli::Command c) {
    using qcs::cli::Command;
    switch (c) {
        case Command::bands: return "Bloch bands E_b(kappa) and lowest-band wavefunctions";
        case Command::fluxonium_modes: return "inductively shunted eigenmodes, spacings and Zak tables";
        case Command::evolve: return "transient-shunt evolution (--shunt ind|4pi)";
        case Command::protocol: return "X-gate hold scans for both shunts and the Z-splitting sweep";
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qcs::cli;

    CLI::App app{"Quasicharge / Bloch-band simulator (units: E_J = 1, hbar = 1)"};
    app.require_subcommand(1);
    Invocation inv;
    for (auto c : {Command::bands, Command::fluxonium_modes, Command::evolve, Command::protocol}) {
        add_common(*app.add_subcommand(command_name(c), summary(c)), inv);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    RunConfig config;
    try {
        config.command = parse_command(app.get_subcommands().front()->get_name());
        if (!inv.config_path.empty()) apply_config_file(config, inv.config_path);
        for (const auto& [key, value] : inv.overrides) apply_setting(config, key, value);
    } catch (const ConfigError& e) {
        std::cerr << "qcs: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "qcs: " << e.what() << '\n';
        return exit_failure;
    }
    config.out_dir = inv.out_dir;
    return run(config);
}
