#include "bpi/constants.hpp"

#include <cmath>
#include <string>

#include "bpi/error.hpp"

namespace bpi {

using namespace constants;

double derived_classical_electron_radius() {
  return elementary_charge * elementary_charge /
         (4.0 * pi * vacuum_permittivity * electron_mass * speed_of_light * speed_of_light);
}

double ev_to_joule(double energy_ev) { return energy_ev * elementary_charge; }

double joule_to_ev(double energy_j) { return energy_j / elementary_charge; }

double thermal_speed(double energy_ev, double mass_kg, SpeedConvention convention) {
  if (!(energy_ev >= 0.0)) {
    throw InvalidArgument("energy must be non-negative, got " + std::to_string(energy_ev) + " eV");
  }
  if (!(mass_kg > 0.0)) {
    throw InvalidArgument("mass must be positive");
  }
  const double e = ev_to_joule(energy_ev);
  const double factor = convention == SpeedConvention::kinetic ? 2.0 : 1.0;
  return std::sqrt(factor * e / mass_kg);
}

double wavelength_to_omega(double wavelength_m) {
  if (!(wavelength_m > 0.0)) {
    throw InvalidArgument("wavelength must be positive");
  }
  return 2.0 * pi * speed_of_light / wavelength_m;
}

double omega_to_wavelength(double omega) {
  if (!(omega > 0.0)) {
    throw InvalidArgument("angular frequency must be positive");
  }
  return 2.0 * pi * speed_of_light / omega;
}

}  // namespace bpi
