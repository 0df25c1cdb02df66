#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <random>

#include "bpi/constants.hpp"
#include "bpi/error.hpp"
#include "bpi/plasma.hpp"

using namespace bpi;

TEST_CASE("classical electron radius is consistent with the other constants") {
  CHECK(derived_classical_electron_radius() ==
        rel(constants::classical_electron_radius).epsilon(1e-9));
}

TEST_CASE("plasma frequency") {
  // Frozen from an independent 30-digit evaluation of sqrt(e^2 n / (eps0 m)).
  CHECK(plasma_frequency(electron(1e20)) == rel(5.64146023118e11).epsilon(1e-10));
  CHECK(plasma_frequency(hydrogen_ion(1e20)) == rel(1.31660406776e10).epsilon(1e-10));
  CHECK(plasma_frequency(electron(0.0)) == 0.0);
  CHECK(plasma_frequency(helium4_ion(0.0)) == 0.0);
}

TEST_CASE("gyro frequency is signed by charge and field") {
  CHECK(gyro_frequency(electron(1e20), 1.0) == rel(-1.75882001077e11).epsilon(1e-10));
  CHECK(gyro_frequency(hydrogen_ion(1e20), 1.0) == rel(9.57962968830e7).epsilon(1e-10));
  CHECK(gyro_frequency(electron(1e20), 0.0) == 0.0);
  CHECK(gyro_frequency(helium4_ion(1.0), -2.0) < 0.0);
}

TEST_CASE("energy conversions and speed conventions") {
  CHECK(thermal_speed(100.0, constants::electron_mass, SpeedConvention::kinetic) ==
        rel(5.93096958477e6).epsilon(1e-10));
  CHECK(thermal_speed(100.0, constants::electron_mass, SpeedConvention::square_root) ==
        rel(4.19382881240e6).epsilon(1e-10));
  CHECK(thermal_speed(0.0, constants::electron_mass, SpeedConvention::kinetic) == 0.0);
  CHECK_THROWS_AS(thermal_speed(-1.0, constants::electron_mass, SpeedConvention::kinetic), InvalidArgument);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_e(-3.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double ev = std::pow(10.0, log_e(rng));
    CHECK(joule_to_ev(ev_to_joule(ev)) == rel(ev).epsilon(1e-12));
  }
}

TEST_CASE("species presets use the 1836 mass convention") {
  CHECK(hydrogen_ion(1.0).mass_kg == rel(1836.0 * constants::electron_mass));
  CHECK(helium4_ion(1.0).mass_kg == rel(7344.0 * constants::electron_mass));
  CHECK(helium4_ion(1.0).charge_number == 2);
  CHECK(electron(1.0, 100.0).t_perp_j == rel(100.0 * constants::elementary_charge));
  CHECK_THROWS_AS(species_preset("deuteron", 1.0), InvalidArgument);
}

TEST_CASE("species validation") {
  CHECK_THROWS_AS(make_species("x", 0, constants::electron_mass, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_species("x", -1, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_species("x", -1, constants::electron_mass, -1.0), InvalidArgument);
  CHECK_THROWS_AS(make_species("x", -1, constants::electron_mass, 1.0, -5.0), InvalidArgument);
  CHECK_THROWS_AS(make_species("x", -1, constants::electron_mass, 1.0, 0.0, constants::speed_of_light / 9.0),
                  InvalidArgument);
  CHECK_NOTHROW(make_species("x", -1, constants::electron_mass, 1.0, 0.0, -constants::speed_of_light / 11.0));
}

TEST_CASE("quasi-neutrality is advisory") {
  const PlasmaState balanced({electron(1e20), hydrogen_ion(1e20)}, 1.0);
  CHECK(balanced.quasi_neutral());
  const PlasmaState with_helium({electron(1e20), hydrogen_ion(1e20), helium4_ion(3e18)}, 1.0);
  CHECK_FALSE(with_helium.quasi_neutral());
  CHECK(with_helium.quasi_neutrality_residual() > 0.0);
  CHECK(PlasmaState().quasi_neutrality_residual() == 0.0);
}

TEST_CASE("frequencies scale with their defining parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double n = 1e18 * u(rng);
    const double k = u(rng);
    const double b = u(rng) - 5.0;
    const auto s = hydrogen_ion(n);
    CHECK(plasma_frequency(hydrogen_ion(k * n)) == rel(std::sqrt(k) * plasma_frequency(s)).epsilon(1e-13));
    CHECK(gyro_frequency(s, k * b) == rel(k * gyro_frequency(s, b)).epsilon(1e-13));
  }
}

TEST_CASE("scaled plasma state") {
  const PlasmaState p({electron(1e20)}, 2.0);
  const auto s = p.scaled(0.5, 0.25);
  CHECK(s.species()[0].density_m3 == rel(5e19));
  CHECK(s.b0() == rel(0.5));
  CHECK_THROWS_AS(p.scaled(-1.0), InvalidArgument);
}
