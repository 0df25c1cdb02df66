#include "bpi/reference_checks.hpp"

#include <cmath>

#include "bpi/biphoton.hpp"
#include "bpi/constants.hpp"
#include "bpi/dispersion.hpp"

namespace bpi {

namespace {

ReferenceCheck relative(std::string name, double computed, double expected, double tol) {
  const double span = std::abs(expected) * tol;
  ReferenceCheck c{std::move(name), computed, expected, expected - span, expected + span, false};
  c.passed = computed >= c.lower && computed <= c.upper;
  return c;
}

ReferenceCheck absolute(std::string name, double computed, double expected, double tol) {
  ReferenceCheck c{std::move(name), computed, expected, expected - tol, expected + tol, false};
  c.passed = computed >= c.lower && computed <= c.upper;
  return c;
}

ReferenceCheck bounded(std::string name, double computed, double lower, double upper) {
  ReferenceCheck c{std::move(name), computed, 0.5 * (lower + upper), lower, upper, false};
  c.passed = computed >= lower && computed <= upper;
  return c;
}

double lag_for_line_density(const ProbeWave& wave, double density, double length) {
  const PlasmaState p({electron(density)}, 0.0);
  return phase_shift(p, wave, ChordProfile::uniform(length)).delta_tau_p_magnitude;
}

}  // namespace

std::vector<ReferenceCheck> reference_checks() {
  const auto wave = ProbeWave::from_wavelength(1e-6);
  const double ne = 1e20;
  std::vector<ReferenceCheck> out;

  const auto cold = refractive_index(PlasmaState({electron(ne)}, 0.0), wave);
  const double plasma = cold.species[0].plasma;
  out.push_back(relative("plasma term, 1e20 m^-3 at 1 um", plasma, 4.5e-8, 0.02));
  out.push_back(relative("cutoff density at 1 um [m^-3]", cutoff_density(wave), 1.1e27, 0.02));
  out.push_back(relative("time lag, 1 m chord [fs]", lag_for_line_density(wave, ne, 1.0) * 1e15, 0.15, 0.02));
  out.push_back(relative("time lag, nL = 1e22 m^-2 [fs]", lag_for_line_density(wave, 1e24, 1e-2) * 1e15, 15.0, 0.02));
  out.push_back(relative("time lag, nL = 1e23 m^-2 [fs]", lag_for_line_density(wave, 1e26, 1e-3) * 1e15, 150.0, 0.02));

  const auto ratios = ratio_report(wave, 1.0, 0.03, 100.0, 100.0);
  out.push_back(relative("gyro1 / plasma at 1 T", ratios.at("gyro").direct, 9.3e-5, 0.02));
  out.push_back(relative("thermal / plasma at 100 eV", ratios.at("thermal").direct, 2.0e-4, 0.03));
  out.push_back(relative("hydrogen ratio, sqrt(m_e/m_H)", ratios.at("hydrogen").shorthand, 2.3e-2, 0.03));
  out.push_back(relative("hydrogen ratio, full index", ratios.at("hydrogen").direct, 5.4e-4, 0.03));
  out.push_back(relative("helium ratio, Z sqrt(f m_e/m_He)", ratios.at("helium").shorthand, 4.0e-3, 0.03));
  out.push_back(relative("flow velocity ratio k v/omega (100 eV)", ratios.at("flow_velocity").shorthand, 1.4e-2, 0.03));
  out.push_back(relative("flow / plasma (100 eV, 1 T)", ratios.at("flow").shorthand, 1.3e-6, 0.03));

  const auto cfg = make_interferometer(0.45, 10e-15, 0.5e-6);
  out.push_back(absolute("visibility at R = 0.45", cfg.visibility(), 0.9802, 1e-4));
  out.push_back(absolute("dip minimum at R = 0.45", rc_steady(cfg.with_delay(3e-15), 3e-15), 0.0198, 1e-4));
  out.push_back(relative("dip 1/e half-width [fs]", dip_half_width(cfg) * 1e15, 1.59, 0.01));

  const auto shot = sensitivity_limit({wave.omega, 1.0, 100.0, shot_noise_alpha, 0.5});
  out.push_back(absolute("shot-noise phase limit, eta N = 100 [rad]", shot.phi_min, 0.05, 1e-15));
  const auto heis = sensitivity_limit({wave.omega, 1.0, 100.0, heisenberg_alpha, 0.5});
  out.push_back(absolute("Heisenberg phase limit, eta N = 100 [rad]", heis.phi_min, 5e-3, 1e-15));
  const double k0_pump = implied_k0(cfg.omega_pump * 10e-15, 1.0, 100.0, shot_noise_alpha);
  out.push_back(absolute("implied k0, pump frequency, 10 fs", k0_pump, 377.0, 1.0));
  out.push_back(bounded("implied k0 over the k0 = 1/2 limit", k0_pump / 0.5, 350.0, 900.0));
  return out;
}

}  // namespace bpi
