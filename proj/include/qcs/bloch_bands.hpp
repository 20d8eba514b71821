// bloch_bands.hpp: Bloch band structure of the unshunted transmon / CPB
//
// The Bloch equation for u_kappa is solved in the integer-charge plane-wave
// basis u = sum_m c_m exp(i m phi), m in [-M, M], where it is exactly
// tridiagonal:
//   H_mm = E_C (m - n_x - kappa)^2,   H_m,m+1 = -E_J / 2.

#pragma once

#include "qcs/linalg.hpp"
#include "qcs/params.hpp"
#include "qcs/zak.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qcs {

inline constexpr int default_charge_cutoff = 40;

struct BandStructure {
    std::vector<double> kappa_values;
    Eigen::MatrixXd energies;  // (kappa index, band)
    int n_bands{0};
    int cutoff{0};
    CircuitParams params;
};

// F(phi) = exp(-i kappa phi) sum_m c_m exp(i m phi) / sqrt(2 pi); unit norm on
// (-pi, pi], phase fixed so the largest sampled |F| is real and positive.
struct BlochWavefunction {
    double kappa{0.0};
    int band{0};
    std::vector<double> phi_values;
    std::vector<complex> values;
    std::vector<int> charges;           // m for each coefficient
    std::vector<complex> coefficients;  // c_m, unit 2-norm

    // Evaluates F anywhere on the non-compact axis (Bloch extension).
    complex operator()(double phi) const;
};

// Throws std::invalid_argument when cutoff < 10.
linalg::SymTridiagonal charge_basis_hamiltonian(const CircuitParams& params, double kappa,
                                                int cutoff);

// Throws std::invalid_argument when n_bands is out of range and
// std::runtime_error (naming the kappa index) if the eigensolver fails.
BandStructure solve_band_structure(const CircuitParams& params,
                                   const std::vector<double>& kappa_values, int n_bands,
                                   int cutoff = default_charge_cutoff);

BlochWavefunction bloch_wavefunction(const CircuitParams& params, double kappa, int band,
                                     const std::vector<double>& phi_values,
                                     int cutoff = default_charge_cutoff);

// Lowest-band dispersion E(1/2, 0) - E(0, 0): the Z-rotation rate between
// the two lowest-band computational states.
double z_splitting(const CircuitParams& params, int cutoff = default_charge_cutoff);

// n uniformly spaced kappa samples on (-1/2, 1/2].
std::vector<double> kappa_grid(int n);

}  // namespace qcs
