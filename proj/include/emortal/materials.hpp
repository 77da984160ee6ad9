#pragma once

#include <string>

namespace emortal {

/// Physical constants of the interconnect metal system, SI units throughout.
/// Activation energy is carried in eV and converted internally; the elementary
/// charge and Boltzmann constant default to CODATA values but stay overridable
/// so third-party numbers can be reproduced exactly.
struct MaterialParams {
    double resistivity = 2.25e-8;           // Ohm*m
    double atomic_volume = 1.18e-29;        // m^3
    double effective_charge = 1.0;          // dimensionless Z*
    double electron_charge = 1.602176634e-19;  // C
    double bulk_modulus = 28e9;             // Pa
    double boltzmann = 1.380649e-23;        // J/K
    double temperature = 378.0;             // K
    double diffusion_prefactor = 1.3e-9;    // m^2/s
    double activation_energy_ev = 0.8;      // eV
    double critical_stress = 41e6;          // Pa
    double thermal_stress = 0.0;            // Pa, any sign

    /// Electron-wind coefficient Z*·e·rho/Omega (Pa·m per A/m^2·m, i.e. stress
    /// per unit jl product).
    double beta() const;

    /// Effective stress diffusivity D0·exp(-Ea/kT)·B·Omega/(kT) in m^2/s.
    double kappa() const;

    /// Tensile stress threshold after the thermal offset: critical - thermal.
    double stress_threshold() const { return critical_stress - thermal_stress; }

    /// Throws std::invalid_argument naming every violated constraint.
    /// effective_charge and activation_energy_ev may be zero; everything else
    /// physical must be strictly positive; thermal_stress may have any sign.
    void validate() const;
};

/// Cu dual-damascene parameter set used by the built-in defaults.
MaterialParams default_cu();

}  // namespace emortal
