#pragma once

// Internal unit system: lengths in nm, energies (and potentials) in eV,
// densities in nm^-3. Conversions to laboratory units happen at the edges.

namespace qdev::units {

inline constexpr double hbar_Js = 1.054571817e-34;
inline constexpr double hbar_eVs = 6.582119569e-16;
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double boltzmann_JK = 1.380649e-23;

// Device parameters in the reference simulations quote these rounded values.
inline constexpr double electron_mass_kg = 9.1e-31;
inline constexpr double vacuum_permittivity = 8.85e-12;

inline constexpr double nm3_to_cm3 = 1e21;     // 1 nm^-3 = 1e21 cm^-3
inline constexpr double per_nm2_to_per_cm2 = 1e14;

/// hbar^2 / (2 m*) in eV nm^2 for m* = mass_ratio * m0.
constexpr double kinetic_prefactor(double mass_ratio) {
    return hbar_Js * hbar_Js / (2.0 * mass_ratio * electron_mass_kg) / elementary_charge * 1e18;
}

/// k_B T in eV.
constexpr double thermal_energy(double temperature_K) { return boltzmann_JK * temperature_K / elementary_charge; }

/// q_e^2 / eps in eV nm for eps = permittivity_ratio * eps0.
constexpr double coulomb_coupling(double permittivity_ratio) {
    return elementary_charge / (permittivity_ratio * vacuum_permittivity) * 1e9;
}

/// Converts q_e / (2 pi hbar) * [nm^-2 eV] into A cm^-2.
inline constexpr double current_scale_A_per_cm2 =
    elementary_charge / (2.0 * 3.14159265358979323846 * hbar_eVs) * per_nm2_to_per_cm2;

}  // namespace qdev::units
