#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <random>

#include "bpi/constants.hpp"
#include "bpi/dispersion.hpp"
#include "bpi/error.hpp"

using namespace bpi;

namespace {

const ProbeWave one_micron = ProbeWave::from_wavelength(1e-6);

ProbeWave with_pol(ProbeWave w, Polarization p) {
  w.polarization = p;
  return w;
}

}  // namespace

TEST_CASE("asymptotic dispersion function series") {
  CHECK(z0_series(10.0, 3).real() == rel(-0.101).epsilon(1e-14));
  CHECK(z_fried_conte_series(10.0, 3).real() == rel(-0.1005).epsilon(1e-14));
  CHECK(z0_series(5.0, 1).real() == rel(-0.2));
  CHECK(z_fried_conte_series(5.0, 1).real() == rel(-0.2));
  CHECK(std::abs(z0_series(1e12, 3)) < 1e-11);
  CHECK(std::abs(z_fried_conte_series(INFINITY, 3)) == 0.0);
  CHECK(z0_series({0.0, 4.0}, 3).imag() == rel(0.25 - 1.0 / 64.0));
  CHECK_THROWS_AS(z0_series(0.5, 3), InvalidArgument);
  CHECK_THROWS_AS(z0_series(1.0, 3), InvalidArgument);
  CHECK_THROWS_AS(z_fried_conte_series(3.0, 2), InvalidArgument);
}

TEST_CASE("cold electron plasma term at 1 um") {
  const auto br = refractive_index(PlasmaState({electron(1e20)}, 0.0), one_micron);
  REQUIRE(br.species.size() == 1);
  CHECK(br.species[0].plasma == rel(4.5e-8).epsilon(0.02));
  CHECK(br.species[0].plasma == rel(4.48489132254e-8).epsilon(1e-10));
  CHECK(br.species[0].gyro1 == 0.0);
  CHECK(br.species[0].gyro2 == 0.0);
  CHECK(br.species[0].flow == 0.0);
  CHECK(br.species[0].thermal == 0.0);
  CHECK(br.index == 1.0 - br.species[0].plasma);
}

TEST_CASE("vacuum gives unit index") {
  const auto br = refractive_index(PlasmaState({}, 1.0), one_micron);
  CHECK(br.index == 1.0);
  CHECK(br.deviation == 0.0);
  CHECK(br.species.empty());
}

TEST_CASE("gyro and thermal ratios at 1 T, 100 eV") {
  const auto r = refractive_index(PlasmaState({electron(1e20)}, 1.0), one_micron);
  const auto l = refractive_index(PlasmaState({electron(1e20)}, 1.0), with_pol(one_micron, Polarization::left));
  const double ratio = r.species[0].gyro1 / r.species[0].plasma;
  CHECK(std::abs(ratio) == rel(9.3e-5).epsilon(0.02));
  CHECK(std::abs(ratio) == rel(9.33728955661e-5).epsilon(1e-10));
  CHECK(l.species[0].gyro1 == rel(-r.species[0].gyro1));

  const auto t = refractive_index(PlasmaState({electron(1e20, 100.0)}, 0.0), one_micron);
  const double thermal = t.species[0].thermal / t.species[0].plasma;
  CHECK(thermal == rel(2.0e-4).epsilon(0.03));
  // Independent SI oracle: T k^2 / (m w^2) with k = w/c is T / (m c^2).
  CHECK(thermal == rel(1.95695118357e-4).epsilon(1e-9));
}

TEST_CASE("cutoff density") {
  CHECK(cutoff_density(one_micron) == rel(1.1e27).epsilon(0.02));
  CHECK(cutoff_density(ProbeWave::from_wavelength(2e-6)) == rel(0.25 * cutoff_density(one_micron)));
  CHECK(cutoff_density(ProbeWave::from_wavelength(10.6e-6)) == rel(9.9221628353e24).epsilon(1e-9));
}

TEST_CASE("evanescent probe raises a cutoff error carrying the cutoff density") {
  const PlasmaState dense({electron(2e27)}, 0.0);
  try {
    refractive_index(dense, one_micron);
    FAIL("expected a cutoff error");
  } catch (const CutoffError& e) {
    CHECK(e.cutoff_density() == rel(cutoff_density(one_micron)));
  }
}

TEST_CASE("large-argument regime warning") {
  const auto warm = refractive_index(PlasmaState({electron(1e20, 100.0)}, 0.0), one_micron);
  CHECK(warm.warnings.empty());
  // zeta = c / sqrt(2T/m) drops below 3 near 28 keV.
  const auto hot = refractive_index(PlasmaState({electron(1e20, 1e5)}, 0.0), one_micron);
  CHECK(hot.warnings.size() == 1);
}

TEST_CASE("term bookkeeping, R/L antisymmetry and field reversal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double b0 = 10.0 * (u(rng) - 0.5);
    const PlasmaState p({electron(1e21 * u(rng), 1e3 * u(rng), 1e6 * (u(rng) - 0.5)),
                         hydrogen_ion(1e21 * u(rng), 1e3 * u(rng), 1e5 * (u(rng) - 0.5)),
                         helium4_ion(1e19 * u(rng), 1e3 * u(rng), 0.0)},
                        b0);
    const auto r = refractive_index(p, one_micron);
    const auto l = refractive_index(p, with_pol(one_micron, Polarization::left));
    const PlasmaState flipped(p.species(), -b0);
    const auto rf = refractive_index(flipped, one_micron);

    double sum = 0.0;
    for (const auto& t : r.species) sum += t.sum();
    CHECK(r.index == 1.0 - sum);

    for (std::size_t s = 0; s < r.species.size(); ++s) {
      CHECK(l.species[s].gyro1 == -r.species[s].gyro1);
      CHECK(l.species[s].flow == -r.species[s].flow);
      CHECK(l.species[s].plasma == r.species[s].plasma);
      CHECK(l.species[s].gyro2 == r.species[s].gyro2);
      CHECK(l.species[s].thermal == r.species[s].thermal);
      CHECK(rf.species[s].gyro1 == rel(l.species[s].gyro1).epsilon(1e-14));
      CHECK(rf.species[s].flow == rel(l.species[s].flow).epsilon(1e-14));
    }
  }
}

TEST_CASE("cold unmagnetized limit matches 1 - wpe^2/2w^2") {
  for (double n : {1e16, 1e19, 1e22, 1e25}) {
    const auto br = refractive_index(PlasmaState({electron(n)}, 0.0), one_micron);
    const double wpe = plasma_frequency(electron(n));
    CHECK(br.index == rel(1.0 - wpe * wpe / (2.0 * one_micron.omega * one_micron.omega)).epsilon(1e-15));
  }
}

TEST_CASE("electron term ordering at 1 T for 50 eV to 1 keV") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> temp(50.0, 1000.0), flow(0.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    const double v = thermal_speed(flow(rng), constants::electron_mass, SpeedConvention::square_root);
    const auto br = refractive_index(PlasmaState({electron(1e20, temp(rng), v)}, 1.0), one_micron);
    const auto& t = br.species[0];
    CHECK(t.plasma > t.thermal);
    CHECK(t.thermal > std::abs(t.gyro1));
    CHECK(std::abs(t.gyro1) > std::abs(t.flow));
  }
}

TEST_CASE("chord phase shift magnitudes") {
  const PlasmaState p({electron(1e20)}, 0.0);
  const auto r = phase_shift(p, one_micron, ChordProfile::uniform(1.0));
  CHECK(r.delta_tau_p < 0.0);
  CHECK(r.delta_tau_p_magnitude * 1e15 == rel(0.15).epsilon(0.02));
  CHECK(r.phi_p == rel(one_micron.omega * r.tau_p).epsilon(1e-12));
  CHECK(r.equivalent_length == rel(constants::speed_of_light * r.delta_tau_p_magnitude));

  const auto lo = phase_shift(PlasmaState({electron(1e24)}, 0.0), one_micron, ChordProfile::uniform(1e-2));
  const auto hi = phase_shift(PlasmaState({electron(1e26)}, 0.0), one_micron, ChordProfile::uniform(1e-3));
  CHECK(lo.delta_tau_p_magnitude * 1e15 == rel(15.0).epsilon(0.02));
  CHECK(hi.delta_tau_p_magnitude * 1e15 == rel(150.0).epsilon(0.02));

  const auto zero = phase_shift(p, one_micron, ChordProfile::uniform(0.0));
  CHECK(zero.phi_p == 0.0);
  CHECK(zero.tau_p == 0.0);
  CHECK(zero.delta_tau_p == 0.0);
  CHECK(zero.equivalent_length == 0.0);
}

TEST_CASE("uniform chord equals length times the pointwise result") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const PlasmaState p({electron(1e22 * u(rng), 500.0 * u(rng)), hydrogen_ion(1e22 * u(rng))}, 5.0 * u(rng));
    const double length = 0.01 + u(rng);
    const auto r = phase_shift(p, one_micron, ChordProfile::uniform(length));
    const double pointwise = refractive_index(p, one_micron).deviation;
    CHECK(-r.delta_tau_p * constants::speed_of_light == rel(length * pointwise).epsilon(1e-10));
  }
}

TEST_CASE("gaussian chord converges and matches the analytic integral") {
  const PlasmaState p({electron(1e20)}, 0.0);
  const auto chord = ChordProfile::gaussian(1.0, 0.5, 0.1);
  CHECK(phase_shift_richardson_change(p, one_micron, chord) < 1e-9);
  const auto r = phase_shift(p, one_micron, chord);
  const double point = refractive_index(p, one_micron).deviation;
  // int_0^1 exp(-(x-0.5)^2 / (2 0.1^2)) dx = 0.1 sqrt(2 pi) erf(5 / sqrt(2)).
  const double analytic = point * 0.1 * std::sqrt(2.0 * constants::pi) * std::erf(5.0 / std::sqrt(2.0));
  CHECK(-r.delta_tau_p * constants::speed_of_light == rel(analytic).epsilon(1e-9));
}

TEST_CASE("table chord and field scaling") {
  const PlasmaState p({electron(1e20)}, 1.0);
  const auto tri = ChordProfile::table(1.0, {{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}}, 201);
  const auto r = phase_shift(p, one_micron, tri);
  const double point = refractive_index(PlasmaState({electron(1e20)}, 1.0), one_micron).deviation;
  CHECK(-r.delta_tau_p * constants::speed_of_light == rel(0.5 * point).epsilon(1e-6));

  auto scaled = tri;
  scaled.scale_field(true);
  const auto rs = phase_shift(p, one_micron, scaled);
  CHECK(rs.delta_tau_p != r.delta_tau_p);

  CHECK_THROWS_AS(ChordProfile::table(1.0, {{0.0, -1.0}}), InvalidArgument);
  CHECK_THROWS_AS(ChordProfile::table(1.0, {{0.5, 1.0}, {0.2, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(ChordProfile::uniform(1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(ChordProfile::uniform(1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(ChordProfile::gaussian(1.0, 0.5, 0.0), InvalidArgument);
}

TEST_CASE("cutoff on the chord names the offending position") {
  const PlasmaState p({electron(0.6 * cutoff_density(one_micron))}, 0.0);
  const auto peaked = ChordProfile::table(1.0, {{0.0, 0.5}, {0.5, 2.0}, {1.0, 0.5}}, 101);
  try {
    phase_shift(p, one_micron, peaked);
    FAIL("expected a cutoff error");
  } catch (const CutoffError& e) {
    CHECK(e.position() > 0.0);
    CHECK(e.position() < 0.5);
    CHECK(std::string(e.what()).find("chord position") != std::string::npos);
  }
}

TEST_CASE("ratio report carries shorthand and full-index values") {
  const auto report = ratio_report(one_micron, 1.0, 0.03, 100.0, 100.0);
  const auto& h = report.at("hydrogen");
  CHECK(h.shorthand == rel(2.3e-2).epsilon(0.03));
  CHECK(h.direct == rel(5.4e-4).epsilon(0.03));
  CHECK(h.direct == rel(1.0 / 1836.0).epsilon(1e-12));
  CHECK_FALSE(h.agrees);

  const auto& he = report.at("helium");
  CHECK(he.shorthand == rel(4.0e-3).epsilon(0.03));
  CHECK(he.direct == rel(4.0 * 0.03 / 7344.0).epsilon(1e-12));
  CHECK_FALSE(he.agrees);

  CHECK(report.at("flow_velocity").shorthand == rel(1.4e-2).epsilon(0.03));
  CHECK(report.at("flow").shorthand == rel(1.3e-6).epsilon(0.03));
  CHECK(report.at("flow").agrees);
  CHECK_FALSE(report.at("flow_kinetic").agrees);
  CHECK(report.at("gyro").agrees);
  CHECK(report.at("thermal").agrees);
  CHECK_THROWS_AS(report.at("nope"), InvalidArgument);
}
