// fourpi.cpp: 4pi-periodic shunt: extended-cell solver, block oracle, dynamics

#include "qcs/fourpi.hpp"

#include "qcs/linalg.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int min_fourpi_cutoff = 20;

void require_cutoff(int cutoff) {
    if (cutoff < min_fourpi_cutoff) {
        throw std::invalid_argument("fourpi cutoff must be >= " +
                                    std::to_string(min_fourpi_cutoff));
    }
}

complex half_charge_sum(const std::vector<int>& m, const std::vector<complex>& c, double kappa_tilde,
                        double phi) {
    complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < m.size(); ++i) sum += c[i] * std::polar(1.0, 0.5 * m[i] * phi);
    return std::polar(1.0 / std::sqrt(4.0 * pi), -kappa_tilde * phi) * sum;
}

// Transmon lowest-band cutoff that fits inside the half-integer basis.
int embedded_cutoff(int fourpi_cutoff) { return std::max(10, fourpi_cutoff / 2 - 1); }

// Coefficients of an embedded state on the basis [-cutoff, cutoff]; the
// discarded weight must be negligible.
std::vector<complex> on_basis(const EmbeddedState& s, int cutoff) {
    std::vector<complex> out(2 * cutoff + 1, complex{0.0, 0.0});
    double dropped = 0.0;
    for (std::size_t i = 0; i < s.half_charges.size(); ++i) {
        const int m = s.half_charges[i];
        if (m < -cutoff || m > cutoff) {
            dropped += std::norm(s.coefficients[i]);
            continue;
        }
        out[m + cutoff] = s.coefficients[i];
    }
    if (dropped > 1e-14) {
        throw std::runtime_error("fourpi: embedded state exceeds the half-charge cutoff");
    }
    return out;
}

}  // namespace

std::vector<double> fourpi_phi_grid(int n) {
    if (n < 16) throw std::invalid_argument("fourpi_phi_grid: need at least 16 samples");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = -2.0 * pi + (i + 1) * 4.0 * pi / n;
    return out;
}

Eigen::MatrixXd fourpi_hamiltonian(const CircuitParams& params, double kappa_tilde, int cutoff) {
    require_cutoff(cutoff);
    const int dim = 2 * cutoff + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double q = 0.5 * (i - cutoff) - params.n_x - kappa_tilde;
        h(i, i) = params.e_c * q * q;
        if (i + 1 < dim) h(i, i + 1) = h(i + 1, i) = -0.5 * params.e_4pi;
        if (i + 2 < dim) h(i, i + 2) = h(i + 2, i) = -0.5 * params.e_j;
    }
    return h;
}

complex FourPiModeSet::evaluate(std::size_t band, double phi) const {
    return half_charge_sum(half_charges, coefficients.at(band), kappa_tilde, phi);
}

FourPiModeSet solve_fourpi(const CircuitParams& params, double kappa_tilde, int n_bands,
                           int cutoff, int n_samples) {
    params.validate();
    require_cutoff(cutoff);
    if (n_bands < 1 || n_bands > 2 * cutoff + 1) {
        throw std::invalid_argument("solve_fourpi: n_bands out of range");
    }
    const auto pairs =
        linalg::symmetric_lowest(fourpi_hamiltonian(params, kappa_tilde, cutoff), n_bands, true);

    FourPiModeSet out;
    out.kappa_tilde = kappa_tilde;
    out.params = params;
    out.cutoff = cutoff;
    out.phi_values = fourpi_phi_grid(n_samples);
    out.energies.assign(pairs.values.data(), pairs.values.data() + n_bands);
    for (int m = -cutoff; m <= cutoff; ++m) out.half_charges.push_back(m);

    out.coefficients.resize(n_bands);
    out.wavefunctions.resize(n_bands);
    for (int b = 0; b < n_bands; ++b) {
        auto& c = out.coefficients[b];
        c.resize(2 * cutoff + 1);
        for (int i = 0; i < 2 * cutoff + 1; ++i) c[i] = pairs.vectors(i, b);

        auto& f = out.wavefunctions[b];
        f.resize(out.phi_values.size());
        std::size_t best = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] = out.evaluate(b, out.phi_values[i]);
            if (std::abs(f[i]) > std::abs(f[best]) * (1.0 + 1e-12)) best = i;
        }
        const complex rot = std::conj(f[best]) / std::abs(f[best]);
        for (auto& v : f) v *= rot;
        for (auto& v : c) v *= rot;
        f[best] = complex(std::abs(f[best]), 0.0);
    }
    return out;
}

complex EmbeddedState::operator()(double phi) const {
    return half_charge_sum(half_charges, coefficients, 0.0, phi);
}

EmbeddedState embed_transmon_state(const BlochWavefunction& f,
                                   const std::vector<double>& phi_values) {
    if (f.kappa != 0.0 && f.kappa != 0.5) {
        throw std::invalid_argument("embed_transmon_state: kappa must be 0 or 1/2");
    }
    // exp(-i kappa phi) exp(i m phi) = exp(i (2m - 2 kappa) phi / 2)
    const int shift = f.kappa == 0.5 ? 1 : 0;
    EmbeddedState s;
    s.kappa = f.kappa;
    s.half_charges.reserve(f.charges.size());
    for (int m : f.charges) s.half_charges.push_back(2 * m - shift);
    s.coefficients = f.coefficients;
    double n2 = 0.0;
    for (const auto& c : s.coefficients) n2 += std::norm(c);
    for (auto& c : s.coefficients) c /= std::sqrt(n2);

    s.phi_values = phi_values;
    s.values.resize(phi_values.size());
    for (std::size_t i = 0; i < phi_values.size(); ++i) s.values[i] = s(phi_values[i]);
    return s;
}

complex overlap(const EmbeddedState& a, const EmbeddedState& b) {
    std::map<int, complex> lookup;
    for (std::size_t i = 0; i < b.half_charges.size(); ++i) {
        lookup[b.half_charges[i]] = b.coefficients[i];
    }
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.half_charges.size(); ++i) {
        const auto it = lookup.find(a.half_charges[i]);
        if (it != lookup.end()) s += std::conj(a.coefficients[i]) * it->second;
    }
    return s;
}

SpectralProblem fourpi_problem(const CircuitParams& params, int cutoff) {
    params.validate_single_shunt();
    require_cutoff(cutoff);
    const int dim = 2 * cutoff + 1;
    const auto modes = solve_fourpi(params, 0.0, dim, cutoff, 64);

    const int tcut = embedded_cutoff(cutoff);
    const auto center = embed_transmon_state(bloch_wavefunction(params, 0.0, 0, ZakGrid{}.phi_values(), tcut));
    const auto edge = embed_transmon_state(bloch_wavefunction(params, 0.5, 0, ZakGrid{}.phi_values(), tcut));
    const auto vc = on_basis(center, cutoff);
    const auto ve = on_basis(edge, cutoff);

    SpectralProblem p;
    p.energies = modes.energies;
    p.amplitudes.resize(dim);
    p.edge_overlaps.resize(dim);
    for (int b = 0; b < dim; ++b) {
        complex ac{0.0, 0.0}, ae{0.0, 0.0};
        for (int i = 0; i < dim; ++i) {
            ac += std::conj(modes.coefficients[b][i]) * vc[i];
            ae += std::conj(modes.coefficients[b][i]) * ve[i];
        }
        p.amplitudes[b] = ac;
        p.edge_overlaps[b] = ae;
    }
    p.center_overlaps = p.amplitudes;
    p.target_overlap = overlap(center, edge);
    return p;
}

EvolutionResult evolve_fourpi(const CircuitParams& params, const std::vector<double>& times,
                              int cutoff) {
    return evolve(fourpi_problem(params, cutoff), times);
}

EvolutionResult evolve_fourpi(const CircuitParams& params, const EvolutionSettings& settings) {
    const auto problem = fourpi_problem(params, settings.fourpi_cutoff);
    const double t_2pi = oscillation_period(problem);
    return evolve(problem, uniform_times(settings.time_span * t_2pi, settings.n_times));
}

std::vector<complex> fourpi_snapshot(const CircuitParams& params, double t,
                                     const std::vector<double>& phi_values, int cutoff) {
    const auto problem = fourpi_problem(params, cutoff);
    const int dim = 2 * cutoff + 1;
    const auto modes = solve_fourpi(params, 0.0, dim, cutoff, 64);
    std::vector<complex> c(dim, complex{0.0, 0.0});
    for (int b = 0; b < dim; ++b) {
        const complex a = problem.amplitudes[b] * std::polar(1.0, -problem.energies[b] * t);
        for (int i = 0; i < dim; ++i) c[i] += a * modes.coefficients[b][i];
    }
    std::vector<complex> out(phi_values.size());
    for (std::size_t i = 0; i < phi_values.size(); ++i) {
        out[i] = half_charge_sum(modes.half_charges, c, 0.0, phi_values[i]);
    }
    return out;
}

BlockOracleResult coupled_block_oracle(const CircuitParams& params, int n_points, int n_eigs) {
    params.validate();
    if (params.n_x != 0.0) {
        throw std::invalid_argument("coupled_block_oracle: requires n_x = 0");
    }
    if (n_points < 32 || n_eigs < 1 || n_eigs > 2 * n_points) {
        throw std::invalid_argument("coupled_block_oracle: bad sizes");
    }
    // eighth-order central second derivative
    constexpr std::array<double, 5> stencil{-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0,
                                            -1.0 / 560.0};
    const int n = n_points;
    const double h = 2.0 * pi / n;
    const double kinetic = params.e_c / (h * h);

    BlockOracleResult out;
    out.phi_values.resize(n);
    for (int i = 0; i < n; ++i) out.phi_values[i] = -pi + (i + 1) * h;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int block = 0; block < 2; ++block) {
        const double wrap_sign = block == 0 ? 1.0 : -1.0;  // periodic / antiperiodic
        const int off = block * n;
        for (int i = 0; i < n; ++i) {
            m(off + i, off + i) += -kinetic * stencil[0] - params.e_j * std::cos(out.phi_values[i]);
            for (int d = 1; d < 5; ++d) {
                for (int dir : {-1, 1}) {
                    int j = i + dir * d;
                    double s = 1.0;
                    if (j < 0) { j += n; s = wrap_sign; }
                    if (j >= n) { j -= n; s = wrap_sign; }
                    m(off + i, off + j) += -kinetic * stencil[d] * s;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const double c = -params.e_4pi * std::cos(0.5 * out.phi_values[i]);
        m(i, n + i) = c;
        m(n + i, i) = c;
    }

    const auto pairs = linalg::symmetric_lowest(m, n_eigs, true);
    out.energies.assign(pairs.values.data(), pairs.values.data() + n_eigs);
    const double scale = 1.0 / std::sqrt(h);
    out.f_center.resize(n_eigs);
    out.f_edge.resize(n_eigs);
    for (int e = 0; e < n_eigs; ++e) {
        out.f_center[e].resize(n);
        out.f_edge[e].resize(n);
        for (int i = 0; i < n; ++i) {
            out.f_center[e][i] = pairs.vectors(i, e) * scale;
            out.f_edge[e][i] = pairs.vectors(n + i, e) * scale;
        }
    }
    return out;
}

}  // namespace qcs
