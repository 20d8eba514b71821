// fourpi.hpp: Transmon shunted by a 4pi-periodic element
//
// Main solver: half-integer plane waves exp(i m phi~/2) on the extended cell
// phi~ in (-2pi, 2pi], where -E_J cos(phi~) couples |dm| = 2 and
// -E_4pi cos(phi~/2) couples |dm| = 1. Independent check: the two-block
// (periodic / antiperiodic) system on (-pi, pi], discretised with
// finite differences.

#pragma once

#include "qcs/bloch_bands.hpp"
#include "qcs/evolution.hpp"
#include "qcs/params.hpp"
#include "qcs/zak.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qcs {

inline constexpr int default_fourpi_cutoff = 80;
inline constexpr int default_fourpi_samples = 512;

// n samples on (-2 pi, 2 pi].
std::vector<double> fourpi_phi_grid(int n = default_fourpi_samples);

struct FourPiModeSet {
    double kappa_tilde{0.0};
    std::vector<double> energies;                 // ascending
    std::vector<int> half_charges;                // m, basis exp(i m phi~/2)
    std::vector<std::vector<complex>> coefficients;  // per band, unit 2-norm
    std::vector<double> phi_values;
    std::vector<std::vector<complex>> wavefunctions;  // unit norm on (-2pi, 2pi]
    CircuitParams params;
    int cutoff{0};

    complex evaluate(std::size_t band, double phi) const;
};

// Throws std::invalid_argument when cutoff < 20.
Eigen::MatrixXd fourpi_hamiltonian(const CircuitParams& params, double kappa_tilde, int cutoff);

FourPiModeSet solve_fourpi(const CircuitParams& params, double kappa_tilde, int n_bands,
                           int cutoff = default_fourpi_cutoff,
                           int n_samples = default_fourpi_samples);

// A lowest-cell Bloch function extended over (-2pi, 2pi] by its Bloch phase
// and renormalised there; expressed in the kappa~ = 0 half-integer basis.
struct EmbeddedState {
    double kappa{0.0};
    std::vector<int> half_charges;
    std::vector<complex> coefficients;
    std::vector<double> phi_values;
    std::vector<complex> values;

    complex operator()(double phi) const;
};

// Throws std::invalid_argument unless kappa is 0 or 1/2.
EmbeddedState embed_transmon_state(const BlochWavefunction& f,
                                   const std::vector<double>& phi_values = fourpi_phi_grid());

complex overlap(const EmbeddedState& a, const EmbeddedState& b);

// Initial state and both targets are the unbroadened lowest-band states.
SpectralProblem fourpi_problem(const CircuitParams& params, int cutoff = default_fourpi_cutoff);

EvolutionResult evolve_fourpi(const CircuitParams& params, const std::vector<double>& times,
                              int cutoff = default_fourpi_cutoff);
// Default time grid: n_times uniform samples over [0, span t_2pi].
EvolutionResult evolve_fourpi(const CircuitParams& params, const EvolutionSettings& settings = {});

// psi(t) on (-2pi, 2pi] at the given samples.
std::vector<complex> fourpi_snapshot(const CircuitParams& params, double t,
                                     const std::vector<double>& phi_values = fourpi_phi_grid(),
                                     int cutoff = default_fourpi_cutoff);

struct BlockOracleResult {
    std::vector<double> energies;
    std::vector<double> phi_values;               // n points on (-pi, pi]
    std::vector<std::vector<double>> f_center;    // periodic component
    std::vector<std::vector<double>> f_edge;      // antiperiodic component
};

// Needs n_x = 0. Eighth-order central differences, n points per block.
BlockOracleResult coupled_block_oracle(const CircuitParams& params, int n_points = 512,
                                       int n_eigs = 10);

}  // namespace qcs
