#include <doctest.h>

#include <string>

#include "config.hpp"

using bpi_cli::ConfigError;
using bpi_cli::parse_config;
using nlohmann::json;

namespace {

std::string error_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults") {
  const auto cfg = parse_config(json::object());
  CHECK(cfg.probe.wavelength_m == 1e-6);
  CHECK(cfg.interferometer.reflectance == 0.45);
  CHECK(!cfg.plasma.present);
  CHECK(cfg.mc.seed == 1);
  CHECK(cfg.outputs.format == "csv");
}

TEST_CASE("units are applied from key suffixes") {
  const auto cfg = parse_config(json::parse(R"({
    "probe": {"wavelength_um": 10.6, "polarization": "L", "path_mode": "D_antisym"},
    "interferometer": {"tau0_fs": 20, "pump_wavelength_um": 0.4, "delta_tau_p_fs": -1.5,
                       "grid": {"start_fs": -5, "stop_fs": 5, "points": 11}},
    "mc": {"accumulation_ns": 2, "window_fs": 40, "events_index": 3},
    "linear_growth": {"b": 0.1, "t_fs": 100}
  })"));
  CHECK(cfg.probe.wavelength_m == doctest::Approx(10.6e-6));
  CHECK(cfg.probe.polarization == BPI_POL_L);
  CHECK(cfg.probe.path_mode == BPI_PATH_D_ANTISYM);
  CHECK(*cfg.interferometer.tau0_s == doctest::Approx(20e-15));
  CHECK(*cfg.interferometer.pump_wavelength_m == doctest::Approx(0.4e-6));
  CHECK(*cfg.interferometer.delta_tau_p_s == doctest::Approx(-1.5e-15));
  CHECK(cfg.interferometer.grid.points == 11);
  CHECK(cfg.mc.accumulation_s == doctest::Approx(2e-9));
  CHECK(cfg.mc.window_s == doctest::Approx(40e-15));
  CHECK(cfg.mc.events_index == 3);
  CHECK(cfg.linear_growth.t_s == doctest::Approx(100e-15));
}

TEST_CASE("species entries") {
  const auto cfg = parse_config(json::parse(R"({"plasma": {"b0_tesla": 2, "species": [
    {"preset": "electron", "density_m3": 1e20, "t_perp_ev": 50},
    {"name": "D+", "charge_number": 1, "mass_kg": 3.34e-27, "density_m3": 1e20}
  ]}})"));
  REQUIRE(cfg.plasma.species.size() == 2);
  CHECK(cfg.plasma.species[0].preset == "electron");
  CHECK(cfg.plasma.species[1].name == "D+");
  CHECK(cfg.plasma.b0_tesla == 2.0);
}

TEST_CASE("strict schema errors name the field") {
  CHECK(error_of(json::parse(R"({"colour": 1})")) == "colour: unknown key");
  CHECK(error_of(json::parse(R"({"probe": {"wavelength_nm": 1}})")) == "probe.wavelength_nm: unknown key");
  CHECK(error_of(json::parse(R"({"interferometer": {"reflectance": "half"}})")) ==
        "interferometer.reflectance: expected a number");
  CHECK(error_of(json::parse(R"({"interferometer": {"reflectance": 1.2}})")).find("interferometer.reflectance") == 0);
  CHECK(error_of(json::parse(R"({"interferometer": {"tau0_fs": 10, "bandwidth_rad_s": 1e14}})")) != "");
  CHECK(error_of(json::parse(R"({"interferometer": {"grid": {"points": 3, "step_fs": 1}}})")) ==
        "interferometer.grid.step_fs: unknown key");
  CHECK(error_of(json::parse(R"({"plasma": {"species": [{"preset": "electron", "density": 1}]}})")) ==
        "plasma.species[0].density: unknown key");
  CHECK(error_of(json::parse(R"({"plasma": {"species": [{"preset": "muon"}]}})")).find("plasma.species[0].preset") ==
        0);
  CHECK(error_of(json::parse(R"({"plasma": {"species": [{"density_m3": 1}]}})")).find("plasma.species[0]") == 0);
  CHECK(error_of(json::parse(R"({"probe": {"polarization": "X"}})")).find("probe.polarization") == 0);
  CHECK(error_of(json::parse(R"({"chord": {"quadrature_points": 10}})")).find("chord.quadrature_points") == 0);
  CHECK(error_of(json::parse(R"({"mc": {"pairs_per_point": -5}})")).find("mc.pairs_per_point") == 0);
  CHECK(error_of(json::parse(R"({"mc": {"seed": 1.5}})")) == "mc.seed: expected an integer");
  CHECK(error_of(json::parse(R"({"sensitivity": {"alpha": -0.7}})")).find("sensitivity.alpha") == 0);
  CHECK(error_of(json::parse(R"({"scaling": {"pairs_list": []}})")).find("scaling.pairs_list") == 0);
  CHECK(error_of(json::parse(R"({"linear_growth": {"b": 2.5}})")).find("linear_growth.b") == 0);
  CHECK(error_of(json::parse(R"({"outputs": {"format": "xml"}})")).find("outputs.format") == 0);
  CHECK(error_of(json::parse(R"([1, 2])")) == "<root>: expected an object");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(bpi_cli::load_config("/nonexistent/config.json"), ConfigError);
}
