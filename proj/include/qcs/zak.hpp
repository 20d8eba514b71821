// zak.hpp: Zak-basis grids, fields, transforms and quadrature
//
// A Zak-basis wavefunction psi(k, phi) lives on the torus k in (-1/2, 1/2],
// phi in (-pi, pi] and obeys
//   psi(-1/2, phi) = psi(1/2, phi)
//   psi(k, -pi)    = exp(2 pi i (k - s)) psi(k, pi)
// where s is the twist shift (0 for physical states). Samples are stored on
// the half-open grid; the open endpoints are implied by these identities, so
// uniform weights reproduce the closed-grid trapezoid rule exactly.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace qcs {

using complex = std::complex<double>;

// Maps k into (-1/2, 1/2].
double wrap_quasicharge(double k);

class ZakGrid {
public:
    static constexpr int default_n_k = 200;
    static constexpr int default_n_phi = 256;
    static constexpr int min_samples = 16;

    // n_k and n_phi count distinct samples (intervals of the closed grid).
    explicit ZakGrid(int n_k = default_n_k, int n_phi = default_n_phi);

    int n_k() const { return n_k_; }
    int n_phi() const { return n_phi_; }
    std::size_t size() const { return static_cast<std::size_t>(n_k_) * n_phi_; }

    double dk() const;
    double dphi() const;
    double k(int i) const;    // i in [0, n_k): -1/2 + (i + 1) dk
    double phi(int j) const;  // j in [0, n_phi): -pi + (j + 1) dphi
    std::vector<double> k_values() const;
    std::vector<double> phi_values() const;

    // Row index of the sample equal to k, or -1 when k is not on the grid.
    int k_index(double k) const;

    bool operator==(const ZakGrid&) const = default;

private:
    int n_k_;
    int n_phi_;
};

struct Twist {
    double kappa_shift{0.0};

    complex factor(double k) const;  // exp(2 pi i (k - kappa_shift))
    bool operator==(const Twist&) const = default;
};

struct ZakField {
    ZakGrid grid;
    Twist twist;
    std::vector<complex> values;  // row-major: index i * n_phi + j

    ZakField(ZakGrid g, Twist t);
    complex& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n_phi() + j]; }
    const complex& at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * grid.n_phi() + j];
    }
};

using ZakFunction = std::function<complex(double k, double phi)>;

ZakField sample(const ZakGrid& grid, const ZakFunction& f, Twist twist = {});

// Largest seam mismatch of f on the closed grid, relative to max |f|.
struct BoundaryDefect {
    double k_seam{0.0};
    double phi_seam{0.0};
    double max() const { return k_seam > phi_seam ? k_seam : phi_seam; }
};
BoundaryDefect boundary_defect(const ZakGrid& grid, const ZakFunction& f, Twist twist = {});

// Samples of a wavefunction on the non-compact phase axis, restricted to the
// symmetric window [-phi_max, phi_max] (both endpoints sampled).
class PhaseField {
public:
    // phi_max must be a positive integer multiple of pi; at least 3 samples.
    PhaseField(double phi_max, std::vector<complex> values);

    double phi_min() const { return -phi_max_; }
    double phi_max() const { return phi_max_; }
    std::size_t n() const { return values_.size(); }
    double spacing() const;
    double phi(std::size_t i) const;
    const std::vector<complex>& values() const { return values_; }

    double norm_squared() const;  // trapezoid rule
    // max |psi| at the two window edges divided by max |psi|
    double edge_ratio() const;

private:
    double phi_max_;
    std::vector<complex> values_;
};

// Normalisation N of the broadened delta so that int |delta|^2 dk = 1.
double delta_normalization(double delta);

// N exp(-i k' phi) (exp(-(k'/delta)^2) - exp(-(1/(2 delta))^2)),
// k' = wrap(k - center), center in {0, 1/2}.
complex delta_broadened_at(double k, double phi, double delta, double center);
ZakField delta_broadened(const ZakGrid& grid, double delta, double center);

// psi_zak(k, phi) = sum_j exp(-2 pi i j k) psi(phi - 2 pi j). Evaluation
// points must fall on the phase field's sample lattice.
class ZakTransform {
public:
    explicit ZakTransform(const PhaseField& field);

    complex operator()(double k, double phi) const;
    ZakField on(const ZakGrid& grid) const;

private:
    PhaseField field_;
    long lattice_index(double phi) const;  // -1 outside the window
};

// Throws std::invalid_argument when the grids are incommensurate or when the
// window edges carry more than 1e-8 of the norm.
ZakField zak_from_phase(const PhaseField& field, const ZakGrid& grid);

complex inner_product(const ZakField& a, const ZakField& b);
double norm_squared(const ZakField& a);
void normalize(ZakField& a);

// int |psi|^2 dphi for every k row.
std::vector<double> k_marginal(const ZakField& a);

// Local operator representations.
ZakField apply_charge(const ZakField& a);         // -i d/dphi (spectral)
ZakField apply_cos_phi(const ZakField& a);        // cos(phi) psi
ZakField apply_cos_half_phi(const ZakField& a);   // cos(phi/2) psi(k + 1/2, phi)

}  // namespace qcs
