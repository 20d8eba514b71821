// commands.cpp: bands, fluxonium-modes, evolve and protocol drivers

#include "qcs/cli/commands.hpp"

#include "qcs/bloch_bands.hpp"
#include "qcs/cli/output.hpp"
#include "qcs/evolution.hpp"
#include "qcs/fluxonium.hpp"
#include "qcs/fourpi.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace qcs::cli {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double band_convergence_tol = 1e-8;

// JSON scalars carry the same 12 significant digits as the CSVs.
double rounded(double v) { return std::stod(format_number(v)); }

EvolutionSettings evolution_settings(const RunConfig& c) {
    EvolutionSettings s;
    s.n_modes = c.n_modes;
    s.phi_max = *c.phi_max_pi * pi;
    s.intervals = *c.intervals;
    s.n_k = c.n_k;
    s.charge_cutoff = c.charge_cutoff;
    s.fourpi_cutoff = c.fourpi_cutoff;
    s.capture_threshold = c.capture_threshold;
    s.n_times = c.n_times;
    s.time_span = c.time_span;
    return s;
}

CsvTable zak_table(const ZakField& f) {
    CsvTable t({"k", "phi", "re", "im", "density"});
    for (int i = 0; i < f.grid.n_k(); ++i) {
        for (int j = 0; j < f.grid.n_phi(); ++j) {
            const complex v = f.at(i, j);
            t.add_row({f.grid.k(i), f.grid.phi(j), v.real(), v.imag(), std::norm(v)});
        }
    }
    return t;
}

CsvTable phase_table(const std::vector<double>& phi, const std::vector<complex>& values) {
    CsvTable t({"phi", "re", "im", "density"});
    for (std::size_t i = 0; i < phi.size(); ++i) {
        t.add_row({phi[i], values[i].real(), values[i].imag(), std::norm(values[i])});
    }
    return t;
}

nlohmann::ordered_json header(const RunConfig& c) {
    nlohmann::ordered_json m;
    m["schema_version"] = schema_version;
    m["command"] = command_name(c.command);
    return m;
}

void finish(OutputDir& out, const RunConfig& c, CommandResult& r) {
    out.write_json("config.json", config_echo(c));
    r.metadata["thresholds_met"] = r.thresholds_met;
    auto files = out.written();
    files.push_back("metadata.json");
    r.metadata["files"] = files;
    out.write_json("metadata.json", r.metadata);
    r.files = out.written();
}

struct SnapshotTime {
    const char* label;
    double fraction;
};
constexpr SnapshotTime snapshot_times[] = {
    {"0", 0.0}, {"1_4", 0.25}, {"1_2", 0.5}, {"3_4", 0.75}, {"1", 1.0}};

}  // namespace

CommandResult run_bands(const RunConfig& c) {
    const CircuitParams params = circuit_params(c);
    OutputDir out(c.out_dir);
    CommandResult r;
    r.metadata = header(c);

    const auto kappas = kappa_grid(c.n_kappa);
    const auto bands = solve_band_structure(params, kappas, c.n_bands, c.charge_cutoff);
    const auto reference = solve_band_structure(params, kappas, c.n_bands, 2 * c.charge_cutoff);
    const double convergence = (bands.energies - reference.energies).cwiseAbs().maxCoeff();

    CsvTable table({"kappa", "band", "energy"});
    for (int b = 0; b < c.n_bands; ++b) {
        for (std::size_t i = 0; i < kappas.size(); ++i) {
            table.add_row({kappas[i], static_cast<long long>(b),
                           bands.energies(static_cast<Eigen::Index>(i), b)});
        }
    }
    out.write_csv("bands.csv", table);

    const auto phis = fourpi_phi_grid();
    for (double kappa : {0.0, 0.5}) {
        for (int b = 0; b < std::min(2, c.n_bands); ++b) {
            const auto f = bloch_wavefunction(params, kappa, b, phis, c.charge_cutoff);
            const std::string name = std::string("inset_kappa_") + (kappa == 0.0 ? "0" : "half") +
                                     "_band_" + std::to_string(b) + ".csv";
            out.write_csv(name, phase_table(phis, f.values));
        }
    }

    const auto centre = solve_band_structure(params, {0.0}, 2, c.charge_cutoff);
    if (params.e_j > 0.0) {
        r.metadata["band_ratio"] =
            rounded((centre.energies(0, 1) - centre.energies(0, 0)) /
                    std::sqrt(2.0 * params.e_c * params.e_j));
    } else {
        r.metadata["band_ratio"] = nullptr;
    }
    r.metadata["z_splitting"] = rounded(z_splitting(params, c.charge_cutoff));
    r.metadata["cutoff"] = c.charge_cutoff;
    r.metadata["cutoff_convergence"] = rounded(convergence);
    r.thresholds_met = convergence < band_convergence_tol;
    finish(out, c, r);
    return r;
}

CommandResult run_fluxonium_modes(const RunConfig& c) {
    const CircuitParams params = circuit_params(c);
    const auto settings = evolution_settings(c);
    OutputDir out(c.out_dir);
    CommandResult r;
    r.metadata = header(c);

    const InductiveRun run = prepare_inductive(params, settings);
    const ModeSet& modes = run.modes;

    CsvTable energies({"j", "energy", "spacing"});
    for (std::size_t j = 0; j < modes.size(); ++j) {
        Cell spacing = std::string{};
        if (j + 1 < modes.size()) spacing = modes.energies[j + 1] - modes.energies[j];
        energies.add_row({static_cast<long long>(j), modes.energies[j], spacing});
    }
    out.write_csv("energies.csv", energies);

    CsvTable weights({"j", "re", "im", "weight"});
    double max_odd = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const complex a = run.projection.amplitudes[j];
        weights.add_row({static_cast<long long>(j), a.real(), a.imag(), std::norm(a)});
        if (j % 2 == 1) max_odd = std::max(max_odd, std::abs(a));
    }
    out.write_csv("mode_weights.csv", weights);

    for (int j = 0; j < c.gallery_modes; ++j) {
        out.write_csv("mode_" + std::to_string(j) + ".csv",
                      zak_table(zak_mode(modes, static_cast<std::size_t>(j), run.grid)));
    }

    const auto& a = run.projection.amplitudes;
    r.metadata["harmonic_spacing"] = rounded(harmonic_spacing(params));
    r.metadata["e_j_over_pi"] = rounded(params.e_j / pi);
    r.metadata["ground_edge_ratio"] = rounded(modes.ground_edge_ratio);
    r.metadata["capture"] = rounded(run.projection.capture);
    r.metadata["deficit"] = rounded(run.projection.deficit);
    r.metadata["max_odd_amplitude"] = rounded(max_odd);
    if (a.size() > 2) r.metadata["weight_0_plus_2"] = rounded(std::norm(a[0]) + std::norm(a[2]));
    r.thresholds_met = modes.window_ok() && !run.projection.below_threshold;
    finish(out, c, r);
    return r;
}

CommandResult run_evolve(const RunConfig& c) {
    const CircuitParams params = circuit_params(c);
    const auto settings = evolution_settings(c);
    OutputDir out(c.out_dir);
    CommandResult r;
    r.metadata = header(c);

    EvolutionResult result;
    bool converged = true;
    if (c.shunt == "ind") {
        const InductiveRun run = prepare_inductive(params, settings);
        result = evolve_inductive(run, settings);
        for (const auto& s : snapshot_times) {
            out.write_csv(std::string("snapshot_") + s.label + ".csv",
                          zak_table(inductive_snapshot(run, s.fraction * result.t_2pi)));
        }
        converged = run.modes.window_ok() && !run.projection.below_threshold;
        r.metadata["ground_edge_ratio"] = rounded(run.modes.ground_edge_ratio);
    } else {
        result = evolve_fourpi(params, settings);
        const auto phis = fourpi_phi_grid();
        for (const auto& s : snapshot_times) {
            out.write_csv(std::string("snapshot_") + s.label + ".csv",
                          phase_table(phis, fourpi_snapshot(params, s.fraction * result.t_2pi,
                                                            phis, c.fourpi_cutoff)));
        }
        converged = result.capture >= c.capture_threshold;
    }

    CsvTable trace({"t", "p_center", "p_edge", "residual", "theta"});
    double max_residual = 0.0;
    double max_norm_error = 0.0;
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        trace.add_row({result.times[i], result.p_center[i], result.p_edge[i], result.residual[i],
                       result.relative_phase[i]});
        max_residual = std::max(max_residual, result.residual[i]);
        max_norm_error = std::max(max_norm_error, std::abs(result.norm[i] - result.norm[0]));
    }
    out.write_csv("trace.csv", trace);

    r.metadata["shunt"] = c.shunt;
    r.metadata["t_2pi"] = rounded(result.t_2pi);
    r.metadata["t_2pi_lowest_gap"] = rounded(result.t_2pi_lowest_gap);
    r.metadata["dominant_modes"] = {result.dominant_modes.first, result.dominant_modes.second};
    r.metadata["capture"] = rounded(result.capture);
    r.metadata["max_residual"] = rounded(max_residual);
    r.metadata["max_norm_drift"] = rounded(max_norm_error);
    r.thresholds_met = converged;
    finish(out, c, r);
    return r;
}

CommandResult run_protocol(const RunConfig& c) {
    const CircuitParams base = circuit_params(c);
    const auto settings = evolution_settings(c);
    OutputDir out(c.out_dir);
    CommandResult r;
    r.metadata = header(c);

    CircuitParams inductive = base;
    inductive.e_4pi = 0.0;
    CircuitParams fourpi = base;
    fourpi.e_l = 0.0;

    const InductiveRun run = prepare_inductive(inductive, settings);
    const SpectralProblem fourpi_modes = fourpi_problem(fourpi, c.fourpi_cutoff);
    double fourpi_capture = 0.0;
    for (const auto& a : fourpi_modes.amplitudes) fourpi_capture += std::norm(a);

    CsvTable gates({"shunt", "fraction", "t_hold", "p_center", "p_edge", "residual", "theta",
                    "balance"});
    const std::pair<const char*, const SpectralProblem*> shunts[] = {
        {"ind", &run.problem}, {"4pi", &fourpi_modes}};
    for (const auto& [name, problem] : shunts) {
        const double t_2pi = oscillation_period(*problem);
        const auto kind = std::string(name) == "ind" ? ShuntKind::inductive : ShuntKind::fourpi;
        const auto scan = hold_time_scan(*problem, kind, {0.25 * t_2pi, 0.75 * t_2pi});
        for (std::size_t i = 0; i < scan.rows.size(); ++i) {
            const auto& o = scan.rows[i].obs;
            gates.add_row({std::string(name), i == 0 ? 0.25 : 0.75, scan.rows[i].t_hold, o.p_center,
                           o.p_edge, o.residual, o.relative_phase,
                           std::abs(o.p_center - o.p_edge)});
        }
        const std::string key = std::string(name) == "ind" ? "ind" : "fourpi";
        r.metadata[key + "_t_2pi"] = rounded(t_2pi);
        r.metadata[key + "_balance_quarter"] = rounded(scan.balance_quarter);
        r.metadata[key + "_balance_three_quarter"] = rounded(scan.balance_three_quarter);
    }
    out.write_csv("x_gates.csv", gates);

    CsvTable z({"ej_over_ec", "e_c", "e_j", "z_splitting"});
    for (double ratio : {50.0, 10.0, 1.0, 0.0}) {
        CircuitParams p = base;
        p.e_l = 0.0;
        p.e_4pi = 0.0;
        p.e_j = ratio * base.e_c;
        z.add_row({ratio, p.e_c, p.e_j, z_splitting(p, c.charge_cutoff)});
    }
    out.write_csv("z_splitting.csv", z);

    r.metadata["ind_capture"] = rounded(run.projection.capture);
    r.metadata["fourpi_capture"] = rounded(fourpi_capture);
    r.thresholds_met = run.modes.window_ok() && !run.projection.below_threshold &&
                       fourpi_capture >= c.capture_threshold;
    finish(out, c, r);
    return r;
}

int run(const RunConfig& config) {
    RunConfig resolved;
    try {
        resolved = resolve(config);
    } catch (const ConfigError& e) {
        std::cerr << "qcs: " << e.what() << '\n';
        return exit_usage;
    }
    try {
        CommandResult r;
        switch (resolved.command) {
            case Command::bands: r = run_bands(resolved); break;
            case Command::fluxonium_modes: r = run_fluxonium_modes(resolved); break;
            case Command::evolve: r = run_evolve(resolved); break;
            case Command::protocol: r = run_protocol(resolved); break;
        }
        if (!r.thresholds_met) {
            std::cerr << "qcs: convergence thresholds not met (see metadata.json)\n";
            return exit_threshold_unmet;
        }
        return exit_ok;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qcs: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "qcs: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace qcs::cli
