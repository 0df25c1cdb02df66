#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bpi/biphoton.hpp"
#include "bpi/coincidence.hpp"
#include "bpi/dispersion.hpp"

namespace bpi {

struct DipFitOptions {
  bool fix_bandwidth = false;
  double fixed_bandwidth = 0.0;  // rad/s, used when fix_bandwidth
  int max_iterations = 200;
  double step_tolerance = 1e-10;
  double gradient_tolerance = 1e-6;
};

/// Parameter order: C, V, center, bandwidth.
struct DipFit {
  static constexpr std::array<const char*, 4> parameter_names{"C", "V", "delta_tau_p", "bandwidth"};

  std::array<double, 4> estimate{};
  std::array<double, 4> standard_error{};
  std::array<double, 16> covariance{};  // row-major
  double residual_norm = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> warnings;

  double normalization() const { return estimate[0]; }
  double visibility() const { return estimate[1]; }
  double center() const { return estimate[2]; }
  double bandwidth() const { return estimate[3]; }
};

/// Damped Gauss-Newton fit of C [1 - V exp(-dw^2 (x - x0)^2)].
/// An empty weight span means unit weights with the covariance scaled by
/// the residual variance; explicit weights are taken as inverse variances.
DipFit fit_dip(std::span<const double> delays, std::span<const double> rates,
               std::span<const double> weights, const DipFitOptions& options = {});

DipFit fit_dip(const DipCurve& curve, const DipFitOptions& options = {});

/// Poisson-weighted fit on raw counts, weights 1 / max(counted, 1).
DipFit fit_dip(std::span<const CoincidencePoint> counts, const DipFitOptions& options = {});

struct ScalingRow {
  std::size_t pairs_per_point = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double std_dev = 0.0;        // of the fitted dip center, s
  double bias = 0.0;           // mean(estimate) - truth, s
  double mean_standard_error = 0.0;
  double bias_standard_error = 0.0;  // std_dev / sqrt(trials)
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  double slope = 0.0;  // d log(std) / d log(N)
  double slope_error = 0.0;
};

struct ScalingOptions {
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  CoincidenceWindow window{1e-9, 0.0};
  unsigned workers = 0;
  DipFitOptions fit;
};

ScalingStudy precision_scaling(const InterferometerConfig& cfg, double delta_tau_p,
                               std::span<const double> grid, std::span<const std::size_t> pairs_list,
                               const ScalingOptions& options);

/// Electron density from a plasma-induced delay, assuming the electron
/// plasma term dominates the index. Throws CutoffError above cutoff.
double delay_to_density(double delay_s, const ProbeWave& wave, double length_m);
double density_to_delay(double density_m3, const ProbeWave& wave, double length_m);

inline constexpr const char* density_inversion_assumption =
    "cold electron plasma term dominant; ions, field, flow and temperature neglected";

}  // namespace bpi
