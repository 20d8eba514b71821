// params.cpp: CircuitParams validation and SI conversion

#include "qcs/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcs {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::domain_error(std::string("CircuitParams: ") + name + " is not finite");
    }
}

}  // namespace

void CircuitParams::validate() const {
    require_finite(e_c, "e_c");
    require_finite(e_j, "e_j");
    require_finite(e_l, "e_l");
    require_finite(e_4pi, "e_4pi");
    require_finite(n_x, "n_x");
    require_finite(delta, "delta");
    if (e_c <= 0.0) throw std::domain_error("CircuitParams: e_c must be > 0");
    if (e_j < 0.0) throw std::domain_error("CircuitParams: e_j must be >= 0");
    if (e_l < 0.0) throw std::domain_error("CircuitParams: e_l must be >= 0");
    if (e_4pi < 0.0) throw std::domain_error("CircuitParams: e_4pi must be >= 0");
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("CircuitParams: delta must lie in (0, 1/2)");
    }
}

void CircuitParams::validate_single_shunt() const {
    validate();
    if (e_l > 0.0 && e_4pi > 0.0) {
        throw std::domain_error("CircuitParams: e_l and e_4pi cannot both be nonzero in one run");
    }
}

CircuitParams params_from_si(const SiCircuit& c) {
    using constants::elementary_charge;
    using constants::flux_quantum;
    if (!(c.capacitance_junction > 0.0)) {
        throw std::domain_error("params_from_si: junction capacitance must be > 0");
    }
    if (!(c.capacitance_gate > 0.0)) {
        throw std::domain_error("params_from_si: gate capacitance must be > 0");
    }
    if (c.inductance && !(*c.inductance > 0.0)) {
        throw std::domain_error("params_from_si: inductance must be > 0");
    }
    if (!(c.josephson_energy > 0.0)) {
        throw std::domain_error("params_from_si: josephson energy unit must be > 0");
    }

    const double e2 = elementary_charge * elementary_charge;
    const double e_c = 2.0 * e2 / (c.capacitance_junction + c.capacitance_gate);
    double e_l = 0.0;
    if (c.inductance && std::isfinite(*c.inductance)) {
        const double pi = std::numbers::pi;
        e_l = flux_quantum * flux_quantum / (8.0 * pi * pi * *c.inductance);
    }

    CircuitParams p;
    p.e_c = e_c / c.josephson_energy;
    p.e_j = 1.0;
    p.e_l = e_l / c.josephson_energy;
    p.n_x = c.capacitance_gate * c.gate_voltage / (2.0 * elementary_charge);
    p.validate();
    return p;
}

}  // namespace qcs
