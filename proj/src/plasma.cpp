#include "bpi/plasma.hpp"

#include <cmath>
#include <sstream>

#include "bpi/constants.hpp"
#include "bpi/error.hpp"

namespace bpi {

using namespace constants;

void Species::validate() const {
  std::ostringstream msg;
  if (charge_number == 0) {
    msg << "species '" << name << "': charge number must be non-zero";
  } else if (!(mass_kg > 0.0) || !std::isfinite(mass_kg)) {
    msg << "species '" << name << "': mass must be positive";
  } else if (!(density_m3 >= 0.0) || !std::isfinite(density_m3)) {
    msg << "species '" << name << "': density must be non-negative";
  } else if (!(t_perp_j >= 0.0) || !std::isfinite(t_perp_j)) {
    msg << "species '" << name << "': perpendicular temperature must be non-negative";
  } else if (!(std::abs(v_parallel_m_s) < speed_of_light / 10.0)) {
    msg << "species '" << name << "': |v_parallel| must be below c/10 (non-relativistic)";
  } else {
    return;
  }
  throw InvalidArgument(msg.str());
}

Species make_species(std::string name, int charge_number, double mass_kg, double density_m3,
                     double t_perp_ev, double v_parallel_m_s) {
  if (!(t_perp_ev >= 0.0)) {
    throw InvalidArgument("species '" + name + "': perpendicular temperature must be non-negative");
  }
  Species s{std::move(name), charge_number, mass_kg, density_m3, ev_to_joule(t_perp_ev), v_parallel_m_s};
  s.validate();
  return s;
}

Species electron(double density_m3, double t_perp_ev, double v_parallel_m_s) {
  return make_species("electron", -1, electron_mass, density_m3, t_perp_ev, v_parallel_m_s);
}

Species hydrogen_ion(double density_m3, double t_perp_ev, double v_parallel_m_s) {
  return make_species("hydrogen", 1, hydrogen_mass, density_m3, t_perp_ev, v_parallel_m_s);
}

Species helium4_ion(double density_m3, double t_perp_ev, double v_parallel_m_s) {
  return make_species("helium4", 2, helium4_mass, density_m3, t_perp_ev, v_parallel_m_s);
}

Species species_preset(const std::string& preset, double density_m3, double t_perp_ev,
                       double v_parallel_m_s) {
  if (preset == "electron") return electron(density_m3, t_perp_ev, v_parallel_m_s);
  if (preset == "hydrogen") return hydrogen_ion(density_m3, t_perp_ev, v_parallel_m_s);
  if (preset == "helium4") return helium4_ion(density_m3, t_perp_ev, v_parallel_m_s);
  throw InvalidArgument("unknown species preset '" + preset + "' (expected electron, hydrogen, helium4)");
}

PlasmaState::PlasmaState(std::vector<Species> species, double b0_tesla)
    : species_(std::move(species)), b0_(b0_tesla) {
  if (!std::isfinite(b0_)) {
    throw InvalidArgument("B0 must be finite");
  }
  for (const auto& s : species_) {
    s.validate();
  }
}

PlasmaState PlasmaState::scaled(double density_scale, double field_scale) const {
  if (!(density_scale >= 0.0)) {
    throw InvalidArgument("density scale must be non-negative");
  }
  PlasmaState out = *this;
  for (auto& s : out.species_) {
    s.density_m3 *= density_scale;
  }
  out.b0_ *= field_scale;
  return out;
}

double PlasmaState::quasi_neutrality_residual() const {
  double net = 0.0;
  double total = 0.0;
  for (const auto& s : species_) {
    net += s.charge_number * s.density_m3;
    total += std::abs(s.charge_number) * s.density_m3;
  }
  return total > 0.0 ? std::abs(net) / total : 0.0;
}

bool PlasmaState::quasi_neutral(double relative_tolerance) const {
  return quasi_neutrality_residual() <= relative_tolerance;
}

double plasma_frequency(const Species& s) {
  const double q = s.charge_number * elementary_charge;
  return std::sqrt(q * q * s.density_m3 / (vacuum_permittivity * s.mass_kg));
}

double gyro_frequency(const Species& s, double b0_tesla) {
  return s.charge_number * elementary_charge * b0_tesla / s.mass_kg;
}

}  // namespace bpi
