// evolution.cpp: Mode-decomposition dynamics for transient shunts

#include "qcs/evolution.hpp"

#include "qcs/bloch_bands.hpp"
#include "qcs/fourpi.hpp"
#include "qcs/linalg.hpp"
#include "qcs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcs {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * pi);
    return a <= -pi ? a + 2.0 * pi : a;
}

}  // namespace

complex EvolutionResult::amplitude(std::size_t j, double t) const {
    return amplitudes.at(j) * std::polar(1.0, -energies.at(j) * t);
}

ZakFunction initial_state_function(const CircuitParams& params, double center, int cutoff) {
    if (center != 0.0 && center != 0.5) {
        throw std::invalid_argument("initial_state: center must be 0 or 1/2");
    }
    params.validate();
    // global phase fixed on the default Zak phi samples, whatever grid is used later
    const auto bloch = bloch_wavefunction(params, center, 0, ZakGrid{}.phi_values(), cutoff);
    const double norm = delta_normalization(params.delta);
    const double delta = params.delta;
    return [bloch, norm, delta, center](double k, double phi) {
        const double kp = wrap_quasicharge(k - center);
        const double profile =
            std::exp(-(kp / delta) * (kp / delta)) - std::exp(-0.25 / (delta * delta));
        return norm * profile * std::polar(1.0, -kp * phi) * bloch(phi);
    };
}

ZakField initial_state(const CircuitParams& params, const ZakGrid& grid, double center,
                       int cutoff) {
    auto f = initial_state_function(params, center, cutoff);
    ZakField out = sample(grid, f, Twist{});
    normalize(out);
    return out;
}

Projection project(const ZakField& initial, const ModeSet& modes, double capture_threshold) {
    Projection out;
    out.amplitudes.resize(modes.size());
    parallel_for(modes.size(), [&](std::size_t j) {
        const ZakField mode = zak_mode(modes, j, initial.grid);
        out.amplitudes[j] = inner_product(mode, initial);
    });
    for (const auto& a : out.amplitudes) out.capture += std::norm(a);
    out.deficit = std::max(0.0, norm_squared(initial) - out.capture);
    out.below_threshold = out.capture < capture_threshold;
    return out;
}

std::pair<std::size_t, std::size_t> dominant_modes(const std::vector<complex>& amplitudes) {
    if (amplitudes.size() < 2) {
        throw std::invalid_argument("dominant_modes: need at least two modes");
    }
    std::vector<std::size_t> order(amplitudes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::norm(amplitudes[a]) > std::norm(amplitudes[b]);
    });
    return std::minmax(order[0], order[1]);
}

double oscillation_period(const SpectralProblem& problem) {
    const auto [a, b] = dominant_modes(problem.amplitudes);
    return 2.0 * pi / std::abs(problem.energies[b] - problem.energies[a]);
}

Observables observe(const SpectralProblem& problem, double t) {
    complex vc{0.0, 0.0}, ve{0.0, 0.0};
    double norm = 0.0;
    for (std::size_t j = 0; j < problem.energies.size(); ++j) {
        const complex a = problem.amplitudes[j] * std::polar(1.0, -problem.energies[j] * t);
        vc += std::conj(problem.center_overlaps[j]) * a;
        ve += std::conj(problem.edge_overlaps[j]) * a;
        norm += std::norm(a);
    }
    const complex g = problem.target_overlap;
    const double gram_det = 1.0 - std::norm(g);
    const double in_span =
        (std::norm(vc) + std::norm(ve) - 2.0 * std::real(std::conj(vc) * g * ve)) / gram_det;

    Observables o;
    o.p_center = std::norm(vc);
    o.p_edge = std::norm(ve);
    o.residual = 1.0 - in_span;
    o.relative_phase = wrap_angle(std::arg(ve) - std::arg(vc));
    o.norm = std::sqrt(norm);
    return o;
}

std::vector<double> uniform_times(double t_end, int n) {
    if (n < 2) throw std::invalid_argument("uniform_times: need at least two samples");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = t_end * static_cast<double>(i) / (n - 1);
    return out;
}

EvolutionResult evolve(const SpectralProblem& problem, const std::vector<double>& times) {
    const std::size_t n = problem.energies.size();
    if (problem.amplitudes.size() != n || problem.center_overlaps.size() != n ||
        problem.edge_overlaps.size() != n) {
        throw std::invalid_argument("evolve: inconsistent mode data");
    }
    EvolutionResult r;
    r.times = times;
    r.energies = problem.energies;
    r.amplitudes = problem.amplitudes;
    r.dominant_modes = dominant_modes(problem.amplitudes);
    r.t_2pi = oscillation_period(problem);
    r.t_2pi_lowest_gap = 2.0 * pi / (problem.energies[1] - problem.energies[0]);
    for (const auto& a : problem.amplitudes) r.capture += std::norm(a);

    r.p_center.resize(times.size());
    r.p_edge.resize(times.size());
    r.residual.resize(times.size());
    r.relative_phase.resize(times.size());
    r.norm.resize(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
        const Observables o = observe(problem, times[i]);
        r.p_center[i] = o.p_center;
        r.p_edge[i] = o.p_edge;
        r.residual[i] = o.residual;
        r.relative_phase[i] = o.relative_phase;
        r.norm[i] = o.norm;
    });
    return r;
}

// ------------------------------- inductive ----------------------------------

InductiveRun prepare_inductive(const CircuitParams& params, const EvolutionSettings& settings) {
    params.validate_single_shunt();
    if (!(params.e_l > 0.0)) {
        throw std::invalid_argument("prepare_inductive: e_l must be > 0");
    }
    const ZakGrid grid = matching_zak_grid(settings.phi_max, settings.intervals, settings.n_k);
    ModeSet modes = solve_modes(params, settings.n_modes, settings.phi_max, settings.intervals);
    ZakField initial = initial_state(params, grid, 0.0, settings.charge_cutoff);
    ZakField edge = initial_state(params, grid, 0.5, settings.charge_cutoff);
    Projection projection = project(initial, modes, settings.capture_threshold);

    SpectralProblem problem;
    problem.energies = modes.energies;
    problem.amplitudes = projection.amplitudes;
    problem.center_overlaps = projection.amplitudes;
    problem.edge_overlaps = project(edge, modes, 0.0).amplitudes;
    problem.target_overlap = inner_product(initial, edge);

    return InductiveRun{std::move(modes), grid,         std::move(initial),
                        std::move(edge),  std::move(projection), std::move(problem)};
}

ZakField inductive_snapshot(const InductiveRun& run, double t) {
    const auto& modes = run.modes;
    const std::size_t n = modes.modes.front().n();
    std::vector<complex> combined(n, complex{0.0, 0.0});
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const complex c = run.problem.amplitudes[j] * std::polar(1.0, -modes.energies[j] * t);
        const auto& v = modes.modes[j].values();
        for (std::size_t i = 0; i < n; ++i) combined[i] += c * v[i];
    }
    return zak_from_phase(PhaseField(modes.phi_max, std::move(combined)), run.grid);
}

EvolutionResult evolve_inductive(const InductiveRun& run, const EvolutionSettings& settings) {
    const double t_2pi = oscillation_period(run.problem);
    return evolve(run.problem, uniform_times(settings.time_span * t_2pi, settings.n_times));
}

// ------------------------------- hold scans ---------------------------------

SpectralProblem shunt_problem(const CircuitParams& params, ShuntKind shunt,
                              const EvolutionSettings& settings) {
    if (shunt == ShuntKind::inductive) return prepare_inductive(params, settings).problem;
    return fourpi_problem(params, settings.fourpi_cutoff);
}

HoldScan hold_time_scan(const SpectralProblem& problem, ShuntKind shunt,
                        const std::vector<double>& hold_times) {
    HoldScan scan;
    scan.shunt = shunt;
    scan.t_2pi = oscillation_period(problem);
    scan.rows.resize(hold_times.size());
    for (std::size_t i = 0; i < hold_times.size(); ++i) {
        if (hold_times[i] < 0.0) throw std::invalid_argument("hold_time_scan: negative hold time");
        scan.rows[i] = HoldRow{hold_times[i], observe(problem, hold_times[i])};
    }
    const auto q1 = observe(problem, 0.25 * scan.t_2pi);
    const auto q3 = observe(problem, 0.75 * scan.t_2pi);
    scan.balance_quarter = std::abs(q1.p_center - q1.p_edge);
    scan.balance_three_quarter = std::abs(q3.p_center - q3.p_edge);
    return scan;
}

HoldScan hold_time_scan(const CircuitParams& params, ShuntKind shunt,
                        const std::vector<double>& hold_times,
                        const EvolutionSettings& settings) {
    return hold_time_scan(shunt_problem(params, shunt, settings), shunt, hold_times);
}

// ------------------------------- unshunted ----------------------------------

ZakField evolve_unshunted(const ZakField& field, const CircuitParams& params, double t) {
    params.validate();
    const ZakGrid& grid = field.grid;
    const int n = grid.n_phi();
    std::vector<int> mode(n);
    for (int m = 0; m < n; ++m) mode[m] = m - n / 2;
    std::vector<complex> basis(static_cast<std::size_t>(n) * n);
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j) basis[m * n + j] = std::polar(1.0, mode[m] * grid.phi(j));
    }

    ZakField out(grid, field.twist);
    parallel_for(static_cast<std::size_t>(grid.n_k()), [&](std::size_t row) {
        const int i = static_cast<int>(row);
        // the periodic part u = exp(i q phi) psi carries the Bloch wavenumber q
        const double q = grid.k(i) - field.twist.kappa_shift;
        Eigen::VectorXcd c(n);
        for (int m = 0; m < n; ++m) {
            complex s{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                s += std::conj(basis[m * n + j]) * std::polar(1.0, q * grid.phi(j)) * field.at(i, j);
            }
            c(m) = s / static_cast<double>(n);
        }
        linalg::SymTridiagonal h{Eigen::VectorXd(n), Eigen::VectorXd(n - 1)};
        for (int m = 0; m < n; ++m) {
            const double charge = mode[m] - params.n_x - q;
            h.diag(m) = params.e_c * charge * charge;
        }
        h.off.setConstant(-0.5 * params.e_j);
        const auto eig = linalg::tridiagonal_lowest(h, n, true);
        Eigen::VectorXcd proj = eig.vectors.transpose().cast<complex>() * c;
        for (int b = 0; b < n; ++b) proj(b) *= std::polar(1.0, -eig.values(b) * t);
        const Eigen::VectorXcd evolved = eig.vectors.cast<complex>() * proj;
        for (int j = 0; j < n; ++j) {
            complex s{0.0, 0.0};
            for (int m = 0; m < n; ++m) s += evolved(m) * basis[m * n + j];
            out.at(i, j) = std::polar(1.0, -q * grid.phi(j)) * s;
        }
    });
    return out;
}

}  // namespace qcs
