// bloch_bands.cpp: Plane-wave Bloch Hamiltonian and band solver

#include "qcs/bloch_bands.hpp"

#include "qcs/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

constexpr int min_cutoff = 10;

void require_cutoff(int cutoff) {
    if (cutoff < min_cutoff) {
        throw std::invalid_argument("charge cutoff must be >= " + std::to_string(min_cutoff));
    }
}

// Rotates the coefficient vector so that the largest sample is real positive.
void fix_phase(BlochWavefunction& f) {
    std::size_t best = 0;
    double peak = -1.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double a = std::abs(f.values[i]);
        // ties resolved toward the first sample
        if (a > peak * (1.0 + 1e-12)) {
            peak = a;
            best = i;
        }
    }
    if (peak <= 0.0) return;
    const complex rot = std::conj(f.values[best]) / peak;
    for (auto& v : f.values) v *= rot;
    for (auto& c : f.coefficients) c *= rot;
    f.values[best] = complex(std::abs(f.values[best]), 0.0);
}

}  // namespace

std::vector<double> kappa_grid(int n) {
    if (n < 1) throw std::invalid_argument("kappa_grid: need at least one sample");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = -0.5 + static_cast<double>(i + 1) / n;
    return out;
}

linalg::SymTridiagonal charge_basis_hamiltonian(const CircuitParams& params, double kappa,
                                                int cutoff) {
    require_cutoff(cutoff);
    const int dim = 2 * cutoff + 1;
    linalg::SymTridiagonal h{Eigen::VectorXd(dim), Eigen::VectorXd(dim - 1)};
    for (int i = 0; i < dim; ++i) {
        const double q = static_cast<double>(i - cutoff) - params.n_x - kappa;
        h.diag(i) = params.e_c * q * q;
    }
    h.off.setConstant(-0.5 * params.e_j);
    return h;
}

BandStructure solve_band_structure(const CircuitParams& params,
                                   const std::vector<double>& kappa_values, int n_bands,
                                   int cutoff) {
    params.validate();
    require_cutoff(cutoff);
    if (n_bands < 1 || n_bands > cutoff) {
        throw std::invalid_argument("solve_band_structure: n_bands must lie in [1, cutoff]");
    }

    BandStructure out;
    out.kappa_values = kappa_values;
    out.energies.resize(static_cast<Eigen::Index>(kappa_values.size()), n_bands);
    out.n_bands = n_bands;
    out.cutoff = cutoff;
    out.params = params;

    parallel_for(kappa_values.size(), [&](std::size_t i) {
        try {
            const auto h = charge_basis_hamiltonian(params, kappa_values[i], cutoff);
            const auto pairs = linalg::tridiagonal_lowest(h, n_bands, false);
            out.energies.row(static_cast<Eigen::Index>(i)) = pairs.values.transpose();
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("solve_band_structure: kappa index " + std::to_string(i) +
                                     ": " + e.what());
        }
    });
    return out;
}

complex BlochWavefunction::operator()(double phi) const {
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < charges.size(); ++i) {
        sum += coefficients[i] * std::polar(1.0, charges[i] * phi);
    }
    return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi), -kappa * phi) * sum;
}

BlochWavefunction bloch_wavefunction(const CircuitParams& params, double kappa, int band,
                                     const std::vector<double>& phi_values, int cutoff) {
    params.validate();
    require_cutoff(cutoff);
    if (band < 0 || band >= 2 * cutoff + 1) {
        throw std::invalid_argument("bloch_wavefunction: band index out of range");
    }
    const auto h = charge_basis_hamiltonian(params, kappa, cutoff);
    const auto pairs = linalg::tridiagonal_lowest(h, band + 1, true);

    BlochWavefunction f;
    f.kappa = kappa;
    f.band = band;
    f.phi_values = phi_values;
    const int dim = 2 * cutoff + 1;
    f.charges.resize(dim);
    f.coefficients.resize(dim);
    for (int i = 0; i < dim; ++i) {
        f.charges[i] = i - cutoff;
        f.coefficients[i] = pairs.vectors(i, band);
    }
    f.values.resize(phi_values.size());
    for (std::size_t i = 0; i < phi_values.size(); ++i) f.values[i] = f(phi_values[i]);
    fix_phase(f);
    return f;
}

double z_splitting(const CircuitParams& params, int cutoff) {
    const auto bands = solve_band_structure(params, {0.0, 0.5}, 1, cutoff);
    return bands.energies(1, 0) - bands.energies(0, 0);
}

}  // namespace qcs
