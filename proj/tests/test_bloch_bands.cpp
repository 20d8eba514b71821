// Bloch bands of the unshunted transmon.

#include "oracles.hpp"
#include "qcs/bloch_bands.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace qcs;
using oracle::pi;

namespace {
// Lowest-band width at E_C = E_J = 1 (charge cutoff 60, Eigen dense solver).
constexpr double w0_regression = 0.0308200959578;
}

TEST_CASE("charge-basis Hamiltonian entries") {
    const CircuitParams p;
    const auto h = charge_basis_hamiltonian(p, 0.0, 10);
    REQUIRE(h.size() == 21);
    const double expected[] = {4, 1, 0, 1, 4};
    for (int i = 0; i < 5; ++i) CHECK(h.diag(8 + i) == doctest::Approx(expected[i]));
    for (int i = 0; i < 20; ++i) CHECK(h.off(i) == doctest::Approx(-0.5));
    CHECK_THROWS_AS(charge_basis_hamiltonian(p, 0.0, 9), std::invalid_argument);
}

TEST_CASE("free rotor") {
    CircuitParams p;
    p.e_j = 0.0;
    p.e_c = 1.7;
    p.n_x = 0.2;
    const double kappa = 0.13;
    const auto bands = solve_band_structure(p, {kappa}, 6, 20);
    std::vector<double> exact;
    for (int m = -20; m <= 20; ++m) exact.push_back(p.e_c * std::pow(m - p.n_x - kappa, 2));
    std::sort(exact.begin(), exact.end());
    for (int b = 0; b < 6; ++b) CHECK(bands.energies(0, b) == doctest::Approx(exact[b]).epsilon(1e-14));

    p.n_x = 0.0;
    const auto grid = kappa_grid(101);
    const auto lowest = solve_band_structure(p, grid, 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(lowest.energies(static_cast<Eigen::Index>(i), 0) - p.e_c * grid[i] * grid[i]) < 1e-12);
    }
}

TEST_CASE("cutoff convergence") {
    CircuitParams p;
    const auto m20 = solve_band_structure(p, {0.0}, 1, 20);
    const auto m40 = solve_band_structure(p, {0.0}, 1, 40);
    CHECK(std::abs(m20.energies(0, 0) - m40.energies(0, 0)) < 1e-10);

    for (double ratio : {0.02, 1.0, 50.0}) {
        p.e_c = ratio;
        const auto grid = kappa_grid(11);
        const auto a = solve_band_structure(p, grid, 4, 30);
        const auto b = solve_band_structure(p, grid, 4, 60);
        CHECK((a.energies - b.energies).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("band structure against an independent dense solve") {
    const CircuitParams p;
    for (double kappa : {0.0, 0.21, 0.5}) {
        const auto lib = solve_band_structure(p, {kappa}, 5);
        const auto ref = oracle::bloch_energies(p, kappa, 60);
        for (int b = 0; b < 5; ++b) CHECK(lib.energies(0, b) == doctest::Approx(ref(b)).epsilon(1e-12));
    }
    const auto e0 = oracle::bloch_energies(p, 0.0, 60);
    const auto eh = oracle::bloch_energies(p, 0.5, 60);
    CHECK(eh(0) - e0(0) == doctest::Approx(w0_regression).epsilon(1e-9));
}

TEST_CASE("band ratio at E_C = E_J") {
    const CircuitParams p;
    const auto bands = solve_band_structure(p, {0.0}, 2);
    const double ratio = (bands.energies(0, 1) - bands.energies(0, 0)) / std::sqrt(2.0);
    CHECK(ratio == doctest::Approx(0.9).epsilon(0.02 / 0.9));
}

TEST_CASE("band structure invariants") {
    CircuitParams p;
    const auto grid = kappa_grid(41);
    const auto bands = solve_band_structure(p, grid, 5);
    for (Eigen::Index i = 0; i < bands.energies.rows(); ++i) {
        for (int b = 0; b + 1 < 5; ++b) CHECK(bands.energies(i, b) <= bands.energies(i, b + 1));
    }
    for (double kappa : {0.05, 0.17, 0.33, 0.49}) {
        const auto pair = solve_band_structure(p, {kappa, -kappa}, 4);
        CHECK((pair.energies.row(0) - pair.energies.row(1)).cwiseAbs().maxCoeff() < 1e-8);
    }

    SUBCASE("offset-charge gauge") {
        CircuitParams shifted = p;
        shifted.n_x = 0.3;
        for (double kappa : {-0.4, -0.1, 0.0, 0.25, 0.45}) {
            const auto a = solve_band_structure(shifted, {kappa}, 4);
            const auto b = solve_band_structure(p, {wrap_quasicharge(kappa + shifted.n_x)}, 4);
            CHECK((a.energies - b.energies).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
    CHECK_THROWS_AS(solve_band_structure(p, grid, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_band_structure(p, grid, 41, 40), std::invalid_argument);
}

TEST_CASE("Bloch wavefunctions") {
    const CircuitParams p;
    const auto phis = ZakGrid{}.phi_values();
    const double dphi = 2 * pi / phis.size();

    for (double kappa : {0.0, 0.2, 0.5}) {
        for (int band : {0, 1}) {
            const auto f = bloch_wavefunction(p, kappa, band, phis);
            CHECK(std::abs(f(-pi) - std::polar(1.0, 2 * pi * kappa) * f(pi)) < 1e-8);
            double n2 = 0.0;
            for (const auto& v : f.values) n2 += std::norm(v) * dphi;
            CHECK(n2 == doctest::Approx(1.0).epsilon(1e-10));
            const auto peak = std::max_element(f.values.begin(), f.values.end(),
                                               [](auto a, auto b) { return std::abs(a) < std::abs(b); });
            CHECK(peak->imag() == doctest::Approx(0.0));
            CHECK(peak->real() > 0.0);
        }
    }

    SUBCASE("zone-edge state flips sign over 2 pi") {
        const auto f = bloch_wavefunction(p, 0.5, 0, phis);
        for (double x : {-1.9 * pi, -0.7, 0.0, 0.4 * pi}) CHECK(std::abs(f(x + 2 * pi) + f(x)) < 1e-12);
        const auto g = bloch_wavefunction(p, 0.0, 0, phis);
        for (double x : {-1.9 * pi, 0.4 * pi}) CHECK(std::abs(g(x + 2 * pi) - g(x)) < 1e-12);
    }
    SUBCASE("orthogonality at fixed kappa") {
        const auto a = bloch_wavefunction(p, 0.0, 0, phis);
        const auto b = bloch_wavefunction(p, 0.0, 1, phis);
        complex s{0.0, 0.0};
        for (std::size_t i = 0; i < phis.size(); ++i) s += std::conj(a.values[i]) * b.values[i] * dphi;
        CHECK(std::abs(s) < 1e-8);
    }
    SUBCASE("deep transmon ground state is a narrow peak at 0") {
        CircuitParams deep;
        deep.e_j = 50.0;
        const auto f = bloch_wavefunction(deep, 0.0, 0, phis);
        const auto peak = std::max_element(f.values.begin(), f.values.end(),
                                           [](auto a, auto b) { return std::abs(a) < std::abs(b); });
        CHECK(phis[static_cast<std::size_t>(peak - f.values.begin())] == doctest::Approx(0.0).epsilon(1e-12));
        double m2 = 0.0;
        for (std::size_t i = 0; i < phis.size(); ++i) m2 += phis[i] * phis[i] * std::norm(f.values[i]) * dphi;
        // harmonic estimate <phi^2> = sqrt(E_C / (2 E_J))
        CHECK(m2 == doctest::Approx(std::sqrt(1.0 / 100.0)).epsilon(0.05));
    }
    CHECK_THROWS_AS(bloch_wavefunction(p, 0.0, 81, phis), std::invalid_argument);
}

TEST_CASE("Z splitting") {
    CircuitParams p;
    CHECK(z_splitting(p) == doctest::Approx(w0_regression).epsilon(1e-9));
    p.e_j = 0.0;
    p.e_c = 2.0;
    CHECK(z_splitting(p) == doctest::Approx(0.5).epsilon(1e-14));
    p.e_c = 1.0;
    p.e_j = 50.0;
    CHECK(std::abs(z_splitting(p)) < 1e-3);

    // flattening as E_J / E_C grows
    double previous = -1.0;
    for (double ratio : {50.0, 10.0, 1.0, 0.0}) {
        p.e_j = ratio;
        const double z = z_splitting(p);
        CHECK(z > previous);
        previous = z;
    }
}
