// zak.cpp: Zak-basis grids, broadened deltas, transforms and operators

#include "qcs/zak.hpp"

#include "qcs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

void require_same_grid(const ZakField& a, const ZakField& b, const char* who) {
    if (!(a.grid == b.grid)) {
        throw std::invalid_argument(std::string(who) + ": fields live on different grids");
    }
}

}  // namespace

double wrap_quasicharge(double k) {
    return k - std::ceil(k - 0.5);
}

// --------------------------------- grid ------------------------------------

ZakGrid::ZakGrid(int n_k, int n_phi) : n_k_(n_k), n_phi_(n_phi) {
    if (n_k < min_samples || n_phi < min_samples) {
        throw std::invalid_argument("ZakGrid: n_k and n_phi must be >= " +
                                    std::to_string(min_samples));
    }
}

double ZakGrid::dk() const { return 1.0 / n_k_; }
double ZakGrid::dphi() const { return two_pi / n_phi_; }
double ZakGrid::k(int i) const { return -0.5 + (i + 1) * dk(); }
double ZakGrid::phi(int j) const { return -pi + (j + 1) * dphi(); }

std::vector<double> ZakGrid::k_values() const {
    std::vector<double> out(n_k_);
    for (int i = 0; i < n_k_; ++i) out[i] = k(i);
    return out;
}

std::vector<double> ZakGrid::phi_values() const {
    std::vector<double> out(n_phi_);
    for (int j = 0; j < n_phi_; ++j) out[j] = phi(j);
    return out;
}

int ZakGrid::k_index(double k) const {
    const double pos = (wrap_quasicharge(k) + 0.5) * n_k_ - 1.0;
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-9) return -1;
    return static_cast<int>(r);
}

complex Twist::factor(double k) const {
    return std::polar(1.0, two_pi * (k - kappa_shift));
}

ZakField::ZakField(ZakGrid g, Twist t) : grid(g), twist(t), values(g.size()) {}

ZakField sample(const ZakGrid& grid, const ZakFunction& f, Twist twist) {
    ZakField out(grid, twist);
    parallel_for(static_cast<std::size_t>(grid.n_k()), [&](std::size_t i) {
        const double k = grid.k(static_cast<int>(i));
        for (int j = 0; j < grid.n_phi(); ++j) out.at(static_cast<int>(i), j) = f(k, grid.phi(j));
    });
    return out;
}

BoundaryDefect boundary_defect(const ZakGrid& grid, const ZakFunction& f, Twist twist) {
    double scale = 0.0;
    double k_seam = 0.0;
    double phi_seam = 0.0;
    // closed grid: include k = -1/2 and phi = -pi
    for (int i = -1; i < grid.n_k(); ++i) {
        const double k = i < 0 ? -0.5 : grid.k(i);
        for (int j = -1; j < grid.n_phi(); ++j) {
            const double phi = j < 0 ? -pi : grid.phi(j);
            scale = std::max(scale, std::abs(f(k, phi)));
        }
    }
    for (int j = -1; j < grid.n_phi(); ++j) {
        const double phi = j < 0 ? -pi : grid.phi(j);
        k_seam = std::max(k_seam, std::abs(f(-0.5, phi) - f(0.5, phi)));
    }
    for (int i = -1; i < grid.n_k(); ++i) {
        const double k = i < 0 ? -0.5 : grid.k(i);
        phi_seam = std::max(phi_seam, std::abs(f(k, -pi) - twist.factor(k) * f(k, pi)));
    }
    if (scale == 0.0) return {};
    return {k_seam / scale, phi_seam / scale};
}

// ------------------------------ phase fields --------------------------------

PhaseField::PhaseField(double phi_max, std::vector<complex> values)
    : phi_max_(phi_max), values_(std::move(values)) {
    const double periods = phi_max / pi;
    if (!(phi_max > 0.0) || std::abs(periods - std::round(periods)) > 1e-9) {
        throw std::invalid_argument("PhaseField: phi_max must be a positive multiple of pi");
    }
    if (values_.size() < 3) {
        throw std::invalid_argument("PhaseField: need at least 3 samples");
    }
}

double PhaseField::spacing() const {
    return 2.0 * phi_max_ / static_cast<double>(values_.size() - 1);
}

double PhaseField::phi(std::size_t i) const {
    return -phi_max_ + static_cast<double>(i) * spacing();
}

double PhaseField::norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double w = (i == 0 || i + 1 == values_.size()) ? 0.5 : 1.0;
        s += w * std::norm(values_[i]);
    }
    return s * spacing();
}

double PhaseField::edge_ratio() const {
    double peak = 0.0;
    for (const auto& v : values_) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    return std::max(std::abs(values_.front()), std::abs(values_.back())) / peak;
}

// ---------------------------- broadened delta --------------------------------

double delta_normalization(double delta) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("delta_broadened: delta must lie in (0, 1/2)");
    }
    // int_{-1/2}^{1/2} (exp(-k^2/D^2) - c)^2 dk in closed form
    const double c = std::exp(-0.25 / (delta * delta));
    const double sqrt_pi = std::sqrt(pi);
    const double g2 = delta * sqrt_pi / std::sqrt(2.0) * std::erf(1.0 / (std::sqrt(2.0) * delta));
    const double g1 = delta * sqrt_pi * std::erf(0.5 / delta);
    const double integral = g2 - 2.0 * c * g1 + c * c;
    return 1.0 / std::sqrt(integral);
}

namespace {

void require_center(double center) {
    if (center != 0.0 && center != 0.5) {
        throw std::invalid_argument("delta_broadened: center must be 0 or 1/2");
    }
}

complex delta_value(double k, double phi, double delta, double center, double norm) {
    const double kp = wrap_quasicharge(k - center);
    const double profile = std::exp(-(kp / delta) * (kp / delta)) - std::exp(-0.25 / (delta * delta));
    return norm * profile * std::polar(1.0, -kp * phi);
}

}  // namespace

complex delta_broadened_at(double k, double phi, double delta, double center) {
    require_center(center);
    return delta_value(k, phi, delta, center, delta_normalization(delta));
}

ZakField delta_broadened(const ZakGrid& grid, double delta, double center) {
    require_center(center);
    const double norm = delta_normalization(delta);
    return sample(
        grid, [&](double k, double phi) { return delta_value(k, phi, delta, center, norm); },
        Twist{center});
}

// ------------------------------- transforms ---------------------------------

ZakTransform::ZakTransform(const PhaseField& field) : field_(field) {}

long ZakTransform::lattice_index(double phi) const {
    const double pos = (phi - field_.phi_min()) / field_.spacing();
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-6) {
        throw std::invalid_argument("ZakTransform: phi is not on the phase sample lattice");
    }
    if (r < 0.0 || r > static_cast<double>(field_.n() - 1)) return -1;
    return static_cast<long>(r);
}

complex ZakTransform::operator()(double k, double phi) const {
    const long reach = static_cast<long>(std::ceil(field_.phi_max() / two_pi)) + 1;
    complex sum{0.0, 0.0};
    for (long j = -reach; j <= reach; ++j) {
        const long idx = lattice_index(phi - two_pi * static_cast<double>(j));
        if (idx < 0) continue;
        sum += std::polar(1.0, -two_pi * static_cast<double>(j) * k) * field_.values()[idx];
    }
    return sum;
}

ZakField ZakTransform::on(const ZakGrid& grid) const {
    const long reach = static_cast<long>(std::ceil(field_.phi_max() / two_pi)) + 1;
    const long n_shift = 2 * reach + 1;

    // lattice index of phi_j - 2 pi j' for every column and shift
    std::vector<long> index(static_cast<std::size_t>(grid.n_phi() * n_shift));
    for (int c = 0; c < grid.n_phi(); ++c) {
        for (long s = 0; s < n_shift; ++s) {
            const double j = static_cast<double>(s - reach);
            index[c * n_shift + s] = lattice_index(grid.phi(c) - two_pi * j);
        }
    }

    ZakField out(grid, Twist{});
    const auto& v = field_.values();
    for (int r = 0; r < grid.n_k(); ++r) {
        std::vector<complex> phase(n_shift);
        for (long s = 0; s < n_shift; ++s) {
            phase[s] = std::polar(1.0, -two_pi * static_cast<double>(s - reach) * grid.k(r));
        }
        for (int c = 0; c < grid.n_phi(); ++c) {
            complex sum{0.0, 0.0};
            for (long s = 0; s < n_shift; ++s) {
                const long idx = index[c * n_shift + s];
                if (idx >= 0) sum += phase[s] * v[idx];
            }
            out.at(r, c) = sum;
        }
    }
    return out;
}

ZakField zak_from_phase(const PhaseField& field, const ZakGrid& grid) {
    const double total = field.norm_squared();
    if (total > 0.0) {
        const double edge = std::norm(field.values().front()) + std::norm(field.values().back());
        const double lost = two_pi * edge / total;
        if (lost > 1e-8) {
            throw std::invalid_argument("zak_from_phase: window too small, estimated lost norm " +
                                        std::to_string(lost));
        }
    }
    return ZakTransform(field).on(grid);
}

// ------------------------------- quadrature ---------------------------------

complex inner_product(const ZakField& a, const ZakField& b) {
    require_same_grid(a, b, "inner_product");
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::conj(a.values[i]) * b.values[i];
    return s * (a.grid.dk() * a.grid.dphi());
}

double norm_squared(const ZakField& a) {
    double s = 0.0;
    for (const auto& v : a.values) s += std::norm(v);
    return s * a.grid.dk() * a.grid.dphi();
}

void normalize(ZakField& a) {
    const double n = std::sqrt(norm_squared(a));
    if (n == 0.0) throw std::domain_error("normalize: zero field");
    for (auto& v : a.values) v /= n;
}

std::vector<double> k_marginal(const ZakField& a) {
    std::vector<double> out(a.grid.n_k(), 0.0);
    for (int i = 0; i < a.grid.n_k(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.grid.n_phi(); ++j) s += std::norm(a.at(i, j));
        out[i] = s * a.grid.dphi();
    }
    return out;
}

// ------------------------------- operators ----------------------------------

ZakField apply_charge(const ZakField& a) {
    const int n = a.grid.n_phi();
    // DFT over the periodic part u = exp(i (k - s) phi) psi
    std::vector<complex> basis(static_cast<std::size_t>(n) * n);
    std::vector<int> mode(n);
    for (int m = 0; m < n; ++m) mode[m] = m < n / 2 ? m : m - n;
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j) basis[m * n + j] = std::polar(1.0, mode[m] * a.grid.phi(j));
    }

    ZakField out(a.grid, a.twist);
    parallel_for(static_cast<std::size_t>(a.grid.n_k()), [&](std::size_t row) {
        const int i = static_cast<int>(row);
        const double q = a.grid.k(i) - a.twist.kappa_shift;
        std::vector<complex> u(n), coeff(n);
        for (int j = 0; j < n; ++j) u[j] = std::polar(1.0, q * a.grid.phi(j)) * a.at(i, j);
        for (int m = 0; m < n; ++m) {
            complex s{0.0, 0.0};
            for (int j = 0; j < n; ++j) s += std::conj(basis[m * n + j]) * u[j];
            coeff[m] = s / static_cast<double>(n);
        }
        for (int j = 0; j < n; ++j) {
            complex du{0.0, 0.0};
            for (int m = 0; m < n; ++m) {
                if (2 * mode[m] == -n) continue;  // Nyquist term has no derivative
                du += static_cast<double>(mode[m]) * coeff[m] * basis[m * n + j];
            }
            out.at(i, j) = std::polar(1.0, -q * a.grid.phi(j)) * (du - q * u[j]);
        }
    });
    return out;
}

ZakField apply_cos_phi(const ZakField& a) {
    ZakField out(a.grid, a.twist);
    for (int i = 0; i < a.grid.n_k(); ++i) {
        for (int j = 0; j < a.grid.n_phi(); ++j) out.at(i, j) = std::cos(a.grid.phi(j)) * a.at(i, j);
    }
    return out;
}

ZakField apply_cos_half_phi(const ZakField& a) {
    if (a.grid.n_k() % 2 != 0) {
        throw std::invalid_argument("apply_cos_half_phi: n_k must be even");
    }
    const int half = a.grid.n_k() / 2;
    ZakField out(a.grid, a.twist);
    for (int i = 0; i < a.grid.n_k(); ++i) {
        const int src = (i + half) % a.grid.n_k();
        for (int j = 0; j < a.grid.n_phi(); ++j) {
            out.at(i, j) = std::cos(0.5 * a.grid.phi(j)) * a.at(src, j);
        }
    }
    return out;
}

}  // namespace qcs
