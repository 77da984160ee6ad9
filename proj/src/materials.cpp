#include "emortal/materials.hpp"

#include <cmath>
#include <stdexcept>

namespace emortal {

double MaterialParams::beta() const {
    return effective_charge * electron_charge * resistivity / atomic_volume;
}

double MaterialParams::kappa() const {
    const double kT = boltzmann * temperature;
    const double ea_joule = activation_energy_ev * electron_charge;
    const double diffusivity = diffusion_prefactor * std::exp(-ea_joule / kT);
    return diffusivity * bulk_modulus * atomic_volume / kT;
}

void MaterialParams::validate() const {
    std::string errors;
    auto require_positive = [&errors](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            errors += errors.empty() ? "" : "; ";
            errors += std::string(name) + " must be strictly positive and finite";
        }
    };
    auto require_non_negative = [&errors](double value, const char* name) {
        if (!(value >= 0.0) || !std::isfinite(value)) {
            errors += errors.empty() ? "" : "; ";
            errors += std::string(name) + " must be non-negative and finite";
        }
    };
    require_positive(resistivity, "resistivity");
    require_positive(atomic_volume, "atomic_volume");
    require_non_negative(effective_charge, "effective_charge");
    require_positive(electron_charge, "electron_charge");
    require_positive(bulk_modulus, "bulk_modulus");
    require_positive(boltzmann, "boltzmann");
    require_positive(temperature, "temperature");
    require_positive(diffusion_prefactor, "diffusion_prefactor");
    require_non_negative(activation_energy_ev, "activation_energy_ev");
    require_positive(critical_stress, "critical_stress");
    if (!std::isfinite(thermal_stress)) {
        errors += errors.empty() ? "" : "; ";
        errors += "thermal_stress must be finite";
    }
    if (errors.empty()) {
        if (!std::isfinite(beta()) || beta() < 0.0) {
            errors = "derived beta is not finite and non-negative";
        } else if (!std::isfinite(kappa()) || !(kappa() > 0.0)) {
            errors = "derived kappa is not finite and positive";
        }
    }
    if (!errors.empty()) {
        throw std::invalid_argument("invalid material parameters: " + errors);
    }
}

MaterialParams default_cu() { return MaterialParams{}; }

}  // namespace emortal
