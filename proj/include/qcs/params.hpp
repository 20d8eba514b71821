// params.hpp: Circuit parameters in units of E_J and SI conversion

#pragma once

#include <optional>

namespace qcs {

namespace constants {
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);
}  // namespace constants

// Dimensionless circuit energies. Every energy is measured in units of E_J
// (hbar = 1, times in 1/E_J); e_j is kept as a field so sweeps can vary it.
struct CircuitParams {
    double e_c{1.0};
    double e_j{1.0};
    double e_l{0.0};
    double e_4pi{0.0};
    double n_x{0.0};
    double delta{0.2};  // quasicharge broadening, in (0, 1/2)

    // Throws std::domain_error on e_c <= 0, negative energies, non-finite
    // fields or delta outside (0, 1/2).
    void validate() const;

    // Evolution runs shunt with at most one element.
    void validate_single_shunt() const;
};

struct SiCircuit {
    double capacitance_junction{};  // F
    double capacitance_gate{};      // F
    std::optional<double> inductance;  // H; absent means open circuit
    double gate_voltage{};          // V
    double josephson_energy{};      // J, the unit the result is expressed in
};

// E_C = 2e^2/(C + C_x), E_L = Phi_0^2/(8 pi^2 L), n_x = C_x V_x/(2e), then
// divided by the supplied E_J.
CircuitParams params_from_si(const SiCircuit& circuit);

}  // namespace qcs
