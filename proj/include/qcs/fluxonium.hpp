// fluxonium.hpp: Eigenmodes of the inductively shunted transmon
//
// H = E_C n^2 + E_L phi^2 - E_J cos(phi) on the non-compact phase axis,
// discretised with second-order central differences inside a hard-walled
// window [-phi_max, phi_max]. Modes are Zak-transformed on demand.

#pragma once

#include "qcs/linalg.hpp"
#include "qcs/params.hpp"
#include "qcs/zak.hpp"

#include <numbers>
#include <vector>

namespace qcs {

inline constexpr double default_phase_window = 8.0 * std::numbers::pi;
inline constexpr int default_phase_intervals = 2048;
inline constexpr int min_phase_intervals = 512;

// Window edges must hold the ground mode below this fraction of its peak.
inline constexpr double window_edge_threshold = 1e-6;

struct ModeSet {
    std::vector<double> energies;     // ascending
    std::vector<PhaseField> modes;    // unit norm, real, phase fixed
    CircuitParams params;
    double phi_max{0.0};
    int intervals{0};
    // max |psi_0| over the outermost pi of the window, relative to its peak
    double ground_edge_ratio{0.0};

    bool window_ok() const { return ground_edge_ratio < window_edge_threshold; }
    std::size_t size() const { return energies.size(); }
};

// Tridiagonal over the n - 1 interior points of a grid with n intervals.
// Throws std::invalid_argument unless e_l > 0, phi_max is a positive multiple
// of pi and n >= 512.
linalg::SymTridiagonal phase_grid_hamiltonian(const CircuitParams& params, double phi_max,
                                              int n);

ModeSet solve_modes(const CircuitParams& params, int n_modes,
                    double phi_max = default_phase_window, int n = default_phase_intervals);

// Zak-basis representation of mode j.
ZakField zak_mode(const ModeSet& modes, std::size_t j, const ZakGrid& grid);

// E_{j+1} - E_j; needs at least 40 modes.
std::vector<double> harmonic_spacing_profile(const ModeSet& modes);

// Asymptotic level spacing 2 sqrt(E_C E_L).
double harmonic_spacing(const CircuitParams& params);

// Zak phi-grid matching a phase grid of n intervals on [-phi_max, phi_max].
ZakGrid matching_zak_grid(double phi_max, int n, int n_k = ZakGrid::default_n_k);

}  // namespace qcs
