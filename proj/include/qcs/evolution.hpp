// evolution.hpp: Transient-shunt dynamics by eigenmode decomposition
//
// While the shunt is closed, psi(t) = sum_j a_j exp(-i E_j t) psi_j. Every
// observable reduces to overlaps with two targets: the lowest-band state at
// the zone centre and at the zone edge.

#pragma once

#include "qcs/fluxonium.hpp"
#include "qcs/params.hpp"
#include "qcs/zak.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace qcs {

enum class ShuntKind { inductive, fourpi };

struct EvolutionSettings {
    int n_modes{100};
    double phi_max{default_phase_window};
    int intervals{default_phase_intervals};
    int n_k{ZakGrid::default_n_k};
    int charge_cutoff{40};
    int fourpi_cutoff{80};
    double capture_threshold{1.0 - 1e-5};
    int n_times{512};
    double time_span{1.1};  // in units of t_2pi
};

// Mode-space data shared by both shunts. Overlaps use <psi_j|target>.
struct SpectralProblem {
    std::vector<double> energies;
    std::vector<complex> amplitudes;
    std::vector<complex> center_overlaps;
    std::vector<complex> edge_overlaps;
    complex target_overlap{0.0, 0.0};  // <center|edge>
};

struct Projection {
    std::vector<complex> amplitudes;
    double capture{0.0};
    double deficit{0.0};
    bool below_threshold{false};
};

struct Observables {
    double p_center{0.0};
    double p_edge{0.0};
    double residual{0.0};        // 1 - |P psi|^2 onto span{center, edge}
    double relative_phase{0.0};  // arg<edge|psi> - arg<center|psi>, in (-pi, pi]
    double norm{0.0};            // retained-mode norm of psi(t)
};

struct EvolutionResult {
    std::vector<double> times;
    std::vector<double> energies;
    std::vector<complex> amplitudes;  // a_j at t = 0
    std::vector<double> p_center;
    std::vector<double> p_edge;
    std::vector<double> residual;
    std::vector<double> relative_phase;
    std::vector<double> norm;
    double t_2pi{0.0};              // from the two dominant modes
    double t_2pi_lowest_gap{0.0};   // 2 pi / (E_1 - E_0)
    std::pair<std::size_t, std::size_t> dominant_modes{0, 1};
    double capture{0.0};

    complex amplitude(std::size_t j, double t) const;
};

// delta_Delta(k, phi; center) F_{center,0}(phi), normalised on the grid.
ZakField initial_state(const CircuitParams& params, const ZakGrid& grid, double center,
                       int cutoff = 40);
ZakFunction initial_state_function(const CircuitParams& params, double center,
                                   int cutoff = 40);

// a_j = <psi_j|initial> by 2D quadrature on the initial state's grid.
Projection project(const ZakField& initial, const ModeSet& modes,
                   double capture_threshold = 1.0 - 1e-5);

// Periods from the spectrum: the two largest |a_j|^2 and the lowest gap.
std::pair<std::size_t, std::size_t> dominant_modes(const std::vector<complex>& amplitudes);
double oscillation_period(const SpectralProblem& problem);

Observables observe(const SpectralProblem& problem, double t);
EvolutionResult evolve(const SpectralProblem& problem, const std::vector<double>& times);

std::vector<double> uniform_times(double t_end, int n);

// Inductive shunt: fluxonium modes plus Delta-broadened initial/edge targets.
struct InductiveRun {
    ModeSet modes;
    ZakGrid grid;
    ZakField initial;
    ZakField edge_target;
    Projection projection;
    SpectralProblem problem;
};
InductiveRun prepare_inductive(const CircuitParams& params, const EvolutionSettings& settings = {});

// psi(t) on the Zak grid, rebuilt from the retained modes.
ZakField inductive_snapshot(const InductiveRun& run, double t);

EvolutionResult evolve_inductive(const InductiveRun& run, const EvolutionSettings& settings = {});

struct HoldRow {
    double t_hold{0.0};
    Observables obs;
};

struct HoldScan {
    ShuntKind shunt{ShuntKind::inductive};
    double t_2pi{0.0};
    std::vector<HoldRow> rows;
    double balance_quarter{0.0};        // |p_center - p_edge| at t_2pi / 4
    double balance_three_quarter{0.0};  // at 3 t_2pi / 4
};

// Mode-space problem for either shunt at the given parameters.
SpectralProblem shunt_problem(const CircuitParams& params, ShuntKind shunt,
                              const EvolutionSettings& settings = {});

// Observables at each hold time (absolute, in 1/E_J).
HoldScan hold_time_scan(const SpectralProblem& problem, ShuntKind shunt,
                        const std::vector<double>& hold_times);
HoldScan hold_time_scan(const CircuitParams& params, ShuntKind shunt,
                        const std::vector<double>& hold_times,
                        const EvolutionSettings& settings = {});

// Evolution under the unshunted transmon: each k row evolves with its own
// Bloch Hamiltonian, so the k-marginal is conserved.
ZakField evolve_unshunted(const ZakField& field, const CircuitParams& params, double t);

}  // namespace qcs
