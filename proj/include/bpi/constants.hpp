#pragma once

#include <numbers>

namespace bpi {

// CODATA 2018 values, SI units.
namespace constants {

inline constexpr double elementary_charge = 1.602176634e-19;     // C
inline constexpr double electron_mass = 9.1093837015e-31;        // kg
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double speed_of_light = 299792458.0;            // m/s
inline constexpr double classical_electron_radius = 2.8179403262e-15;  // m

// Ion masses are expressed in electron masses using the round 1836 ratio,
// not isotope masses.
inline constexpr double proton_electron_mass_ratio = 1836.0;
inline constexpr double hydrogen_mass = proton_electron_mass_ratio * electron_mass;
inline constexpr double helium4_mass = 4.0 * proton_electron_mass_ratio * electron_mass;

inline constexpr double pi = std::numbers::pi;

}  // namespace constants

/// r_e = e^2 / (4 pi eps0 m_e c^2), evaluated from the stored constants.
double derived_classical_electron_radius();

double ev_to_joule(double energy_ev);
double joule_to_ev(double energy_j);

/// Velocity convention used to turn an energy into a speed.
enum class SpeedConvention {
  kinetic,      // sqrt(2E/m)
  square_root,  // sqrt(E/m)
};

/// Speed associated with an energy in eV. Throws InvalidArgument for
/// negative energy or non-positive mass.
double thermal_speed(double energy_ev, double mass_kg, SpeedConvention convention);

double wavelength_to_omega(double wavelength_m);
double omega_to_wavelength(double omega);

}  // namespace bpi
