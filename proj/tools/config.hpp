#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bpi/bpi.h"

namespace bpi_cli {

/// Invalid configuration; the message starts with the dotted key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpeciesConfig {
  std::string preset;  // empty for a fully specified species
  std::string name;
  int charge_number = 0;
  double mass_kg = 0.0;
  double density_m3 = 0.0;
  double t_perp_ev = 0.0;
  double v_parallel_m_s = 0.0;
};

struct PlasmaConfig {
  bool present = false;
  double b0_tesla = 0.0;
  std::vector<SpeciesConfig> species;
};

struct ProbeConfig {
  double wavelength_m = 1e-6;
  bpi_polarization polarization = BPI_POL_R;
  bpi_path_mode path_mode = BPI_PATH_S_R;
};

struct ChordConfig {
  std::string profile = "uniform";  // uniform | gaussian | table
  double length_m = 1.0;
  double center_m = 0.5;
  double width_m = 0.1;
  std::vector<double> positions_m;
  std::vector<double> scales;
  int quadrature_points = 201;
  bool scale_field = false;
};

struct GridConfig {
  double start_s = -10e-15;
  double stop_s = 10e-15;
  std::size_t points = 201;
};

struct InterferometerSection {
  double reflectance = 0.45;
  std::optional<double> tau0_s;
  std::optional<double> bandwidth_rad_s;
  std::optional<double> pump_wavelength_m;  // defaults to half the probe wavelength
  double phi0_rad = 0.0;
  double normalization = 1.0;
  double filter1_bandwidth_rad_s = 0.0;
  double filter2_bandwidth_rad_s = 0.0;
  std::optional<double> delta_tau_p_s;  // otherwise derived from the plasma chord
  GridConfig grid;
};

struct RatioConfig {
  bool present = false;
  double helium_fraction = 0.03;
  double flow_energy_ev = 100.0;
  double t_perp_ev = 100.0;
};

struct LinearGrowthConfig {
  double a0 = 0.0;
  double b = 0.0;
  double tau_p_s = 0.0;
  double tau_p_prime_s = 0.0;
  double omega_b_rad_s = 0.0;
  double b_prefactor = 1.0;
  double t_s = 0.0;
};

struct McConfig {
  std::uint64_t pairs_per_point = 10000;
  std::uint64_t seed = 1;
  double accumulation_s = 1e-9;
  double window_s = 0.0;
  double accidental_rate_hz = 0.0;
  unsigned workers = 0;
  std::int64_t events_index = -1;
};

struct FitConfig {
  bool fix_bandwidth = false;
  int max_iterations = 200;
  double step_tolerance = 1e-10;
};

struct ScalingConfig {
  std::vector<std::uint64_t> pairs_list{1000, 10000, 100000, 1000000};
  std::uint64_t trials = 50;
};

struct SensitivityConfig {
  double eta = 1.0;
  double photons = 100.0;
  double alpha = -0.5;
  double k0 = 0.5;
  double tau_p_s = 10e-15;
};

struct OutputsConfig {
  std::string path;
  std::string format = "csv";
};

struct RunConfig {
  std::string scenario = "default";
  PlasmaConfig plasma;
  ProbeConfig probe;
  ChordConfig chord;
  InterferometerSection interferometer;
  RatioConfig ratio;
  LinearGrowthConfig linear_growth;
  McConfig mc;
  FitConfig fit;
  ScalingConfig scaling;
  SensitivityConfig sensitivity;
  OutputsConfig outputs;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError naming the offending key.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace bpi_cli
