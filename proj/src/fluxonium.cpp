// fluxonium.cpp: Finite-difference fluxonium modes

#include "qcs/fluxonium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

constexpr double pi = std::numbers::pi;

void require_window(double phi_max, int n) {
    const double periods = phi_max / pi;
    if (!(phi_max > 0.0) || std::abs(periods - std::round(periods)) > 1e-9) {
        throw std::invalid_argument("phase window must be a positive multiple of pi");
    }
    if (n < min_phase_intervals) {
        throw std::invalid_argument("phase grid needs at least " +
                                    std::to_string(min_phase_intervals) + " intervals");
    }
}

// Makes the largest-magnitude sample positive.
void fix_sign(std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12)) best = i;
    }
    if (v[best] < 0.0) {
        for (auto& x : v) x = -x;
    }
}

// Near-degenerate clusters: project onto even/odd parity, re-orthonormalise.
void separate_parity(std::vector<std::vector<double>>& vecs, const std::vector<double>& energies,
                     double h) {
    const double tol = 1e-9;
    std::size_t start = 0;
    while (start < vecs.size()) {
        std::size_t end = start + 1;
        while (end < vecs.size() &&
               energies[end] - energies[end - 1] < tol * std::max(1.0, std::abs(energies[end]))) {
            ++end;
        }
        if (end - start > 1) {
            std::vector<std::vector<double>> candidates;
            for (std::size_t a = start; a < end; ++a) {
                std::vector<double> even(vecs[a].size()), odd(vecs[a].size());
                for (std::size_t i = 0; i < vecs[a].size(); ++i) {
                    const double mirror = vecs[a][vecs[a].size() - 1 - i];
                    even[i] = 0.5 * (vecs[a][i] + mirror);
                    odd[i] = 0.5 * (vecs[a][i] - mirror);
                }
                candidates.push_back(std::move(even));
                candidates.push_back(std::move(odd));
            }
            std::vector<std::vector<double>> basis;
            for (auto& c : candidates) {
                for (const auto& b : basis) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < c.size(); ++i) dot += b[i] * c[i] * h;
                    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= dot * b[i];
                }
                double n2 = 0.0;
                for (double x : c) n2 += x * x;
                if (n2 * h > 1e-6 && basis.size() < end - start) {
                    const double s = 1.0 / std::sqrt(n2 * h);
                    for (auto& x : c) x *= s;
                    basis.push_back(c);
                }
            }
            if (basis.size() == end - start) {
                for (std::size_t a = start; a < end; ++a) vecs[a] = basis[a - start];
            }
        }
        start = end;
    }
}

}  // namespace

double harmonic_spacing(const CircuitParams& params) {
    return 2.0 * std::sqrt(params.e_c * params.e_l);
}

linalg::SymTridiagonal phase_grid_hamiltonian(const CircuitParams& params, double phi_max,
                                              int n) {
    params.validate();
    if (!(params.e_l > 0.0)) {
        throw std::invalid_argument("phase_grid_hamiltonian: e_l must be > 0");
    }
    require_window(phi_max, n);
    const double h = 2.0 * phi_max / n;
    const int dim = n - 1;
    linalg::SymTridiagonal m{Eigen::VectorXd(dim), Eigen::VectorXd(dim - 1)};
    const double kinetic = params.e_c / (h * h);
    for (int i = 0; i < dim; ++i) {
        const double phi = -phi_max + (i + 1) * h;
        m.diag(i) = 2.0 * kinetic + params.e_l * phi * phi - params.e_j * std::cos(phi);
    }
    m.off.setConstant(-kinetic);
    return m;
}

ModeSet solve_modes(const CircuitParams& params, int n_modes, double phi_max, int n) {
    const auto h_mat = phase_grid_hamiltonian(params, phi_max, n);
    if (n_modes < 1 || n_modes > n / 4) {
        throw std::invalid_argument("solve_modes: n_modes must lie in [1, n/4]");
    }
    const auto pairs = linalg::tridiagonal_lowest(h_mat, n_modes, true);
    const double h = 2.0 * phi_max / n;

    ModeSet out;
    out.params = params;
    out.phi_max = phi_max;
    out.intervals = n;
    out.energies.assign(pairs.values.data(), pairs.values.data() + n_modes);

    // full grid including the two hard-wall samples, L2-normalised
    std::vector<std::vector<double>> vecs(n_modes, std::vector<double>(n + 1, 0.0));
    const double scale = 1.0 / std::sqrt(h);
    for (int j = 0; j < n_modes; ++j) {
        for (int i = 0; i < n - 1; ++i) vecs[j][i + 1] = pairs.vectors(i, j) * scale;
    }
    separate_parity(vecs, out.energies, h);
    out.modes.reserve(n_modes);
    for (auto& v : vecs) {
        fix_sign(v);
        out.modes.emplace_back(phi_max, std::vector<complex>(v.begin(), v.end()));
    }

    // ground-mode amplitude in the outermost pi of the window
    const auto& g = vecs.front();
    const int strip = static_cast<int>(std::round(pi / h));
    double peak = 0.0, edge = 0.0;
    for (int i = 0; i <= n; ++i) {
        peak = std::max(peak, std::abs(g[i]));
        if (i <= strip || i >= n - strip) edge = std::max(edge, std::abs(g[i]));
    }
    out.ground_edge_ratio = peak > 0.0 ? edge / peak : 0.0;
    return out;
}

ZakField zak_mode(const ModeSet& modes, std::size_t j, const ZakGrid& grid) {
    if (j >= modes.size()) throw std::out_of_range("zak_mode: mode index out of range");
    return zak_from_phase(modes.modes[j], grid);
}

std::vector<double> harmonic_spacing_profile(const ModeSet& modes) {
    if (modes.size() < 40) {
        throw std::invalid_argument("harmonic_spacing_profile: need at least 40 modes");
    }
    std::vector<double> out(modes.size() - 1);
    for (std::size_t j = 0; j + 1 < modes.size(); ++j) {
        out[j] = modes.energies[j + 1] - modes.energies[j];
    }
    return out;
}

ZakGrid matching_zak_grid(double phi_max, int n, int n_k) {
    require_window(phi_max, n);
    const double periods = phi_max / pi;  // number of 2 pi periods in the window
    const double per_two_pi = n / periods;
    const int n_phi = static_cast<int>(std::lround(per_two_pi));
    if (std::abs(per_two_pi - n_phi) > 1e-9) {
        throw std::invalid_argument("matching_zak_grid: intervals per 2 pi must be an integer");
    }
    return ZakGrid(n_k, n_phi);
}

}  // namespace qcs
