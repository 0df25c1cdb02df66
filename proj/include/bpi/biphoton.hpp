#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bpi/dispersion.hpp"
#include "bpi/plasma.hpp"

namespace bpi {

/// Band-pass filter in front of a detector. A bandwidth of zero means unity
/// transmission; otherwise the amplitude passband is exp(-nu^2 / (2 sigma^2)).
struct Filter {
  double bandwidth = 0.0;  // rad/s
  bool unity() const { return bandwidth == 0.0; }
};

struct InterferometerConfig {
  double omega_pump = 0.0;      // rad/s
  double bandwidth = 0.0;       // biphoton spectral width, rad/s
  double reflectance = 0.5;     // R; T = 1 - R
  double delta_tau = 0.0;       // scan delay, s
  double phi0 = 0.0;            // compensator phase in path b, rad
  double normalization = 1.0;   // C
  Filter filter1;
  Filter filter2;

  double transmittance() const { return 1.0 - reflectance; }
  /// 2RT / (R^2 + T^2)
  double visibility() const;
  /// Spectral width after both filters.
  double effective_bandwidth() const;
  /// delta_tau plus the compensator delay phi0 / (w_p / 2).
  double effective_delay() const;
  InterferometerConfig with_delay(double delay) const;
  void validate() const;
};

double visibility(double reflectance);

/// Builds a config from a coherence time tau0 (bandwidth = 2 pi / tau0) and
/// a degenerate pump at half the probe wavelength.
InterferometerConfig make_interferometer(double reflectance, double tau0_s, double pump_wavelength_m);

struct DelayPair {
  double tau_p = 0.0;
  double tau_p_prime = 0.0;
  double difference() const { return tau_p - tau_p_prime; }
};

/// Delays growing linearly in time: tau_p(t) = (a0 + b/2) t + tau_p, etc.
struct LinearGrowthModel {
  double a0 = 0.0;
  double b = 0.0;
  double tau_p = 0.0;
  double tau_p_prime = 0.0;
  double omega_b = 0.0;
  double b_prefactor = 1.0;

  double difference() const { return tau_p - tau_p_prime; }
  /// B = b_prefactor * exp(-pi w_b^2 b^2 / (4 dw^2 (1 - a0)^2))
  double attenuation(double bandwidth) const;
  void validate() const;
};

/// g(x) = exp(-dw^2 x^2 / 2).
double gaussian_kernel(double x, double bandwidth);

/// Steady-plasma joint detection density as a function of tau = t2 - t1.
double g2_steady(double tau, const InterferometerConfig& cfg, const DelayPair& delays);

/// Linear-growth joint detection density at mean time t and separation tau.
double g2_linear_growth(double t, double tau, const InterferometerConfig& cfg,
                        const LinearGrowthModel& lg);

struct CoincidenceWindow {
  double accumulation = 0.0;  // S0, s
  double width = 0.0;         // Delta S_c, full width of the top-hat, s
};

struct QuadratureOptions {
  double relative_tolerance = 1e-8;
  /// Inner (tau) interval is split into panels no wider than this; 0 disables.
  double panel_width = 0.0;
  unsigned max_depth = 30;
};

using G2Function = std::function<double(double t, double tau)>;

/// (1/S0) int_{-S0/2}^{S0/2} dt int_{-dSc/2}^{dSc/2} dtau G2(t, tau),
/// integrated over mean detection time t and separation tau.
/// Throws NumericalError if the requested tolerance is not reached.
double rc_windowed(const G2Function& g2, const CoincidenceWindow& window,
                   const QuadratureOptions& options = {});

double rc_windowed_steady(const InterferometerConfig& cfg, const DelayPair& delays,
                          const CoincidenceWindow& window, double relative_tolerance = 1e-8);
double rc_windowed_linear_growth(const InterferometerConfig& cfg, const LinearGrowthModel& lg,
                                 const CoincidenceWindow& window, double relative_tolerance = 1e-8);

/// (R^2 + T^2) sqrt(pi) / dw: the C for which the closed form equals the
/// wide-window integral of g2_steady.
double steady_normalization(const InterferometerConfig& cfg);

/// C [1 - V exp(-dw^2 (delta_tau - dtau_p)^2)].
double rc_steady(const InterferometerConfig& cfg, double delta_tau_p);

double rc_linear_growth(const InterferometerConfig& cfg, const LinearGrowthModel& lg, double t);

/// Dip center of the linear-growth closed form at time t, (b t + dtau_p) / (1 - b/2).
double linear_growth_dip_center(const LinearGrowthModel& lg, double t);

struct DipSample {
  double delay = 0.0;
  double rate = 0.0;
};

struct DipCurve {
  std::vector<DipSample> samples;
  double normalization = 1.0;
  double visibility = 0.0;
  double dip_center = 0.0;
  double width_param = 0.0;
};

DipCurve scan_steady(const InterferometerConfig& cfg, double delta_tau_p, std::span<const double> grid);
DipCurve scan_linear_growth(const InterferometerConfig& cfg, const LinearGrowthModel& lg, double t,
                            std::span<const double> grid);

/// Evenly spaced grid including both end points.
std::vector<double> linear_grid(double start, double stop, std::size_t points);

/// Distance from the minimum to where the steady dip depth falls to 1/e.
double dip_half_width(const InterferometerConfig& cfg);

enum class PathMode {
  single_right,
  single_left,
  double_symmetric_right,
  double_symmetric_left,
  double_antisymmetric,
};

const char* to_string(PathMode mode);
PathMode path_mode_from_string(const std::string& name);

/// Plasma-induced phases (relative to vacuum) accumulated in the two paths.
struct PathPhases {
  double phase_a = 0.0;
  double phase_b = 0.0;
  double differential = 0.0;  // phase_a - phase_b
  double delay_difference = 0.0;  // differential / omega
};

/// Path a always crosses the plasma. Single modes send path b through a
/// non-dispersive reference; double modes send both through the chord.
PathPhases path_config_phase(PathMode mode, const PlasmaState& plasma, double omega,
                             const ChordProfile& chord);

struct SensitivityQuery {
  double omega = 0.0;
  double eta = 1.0;
  double photons = 1.0;
  double alpha = -0.5;
  double k0 = 0.5;
};

struct SensitivityLimit {
  double phi_min = 0.0;
  double tau_min = 0.0;
  double length_min = 0.0;
};

SensitivityLimit sensitivity_limit(const SensitivityQuery& q);
double implied_k0(double phi, double eta, double photons, double alpha);

inline constexpr double shot_noise_alpha = -0.5;
inline constexpr double heisenberg_alpha = -1.0;

}  // namespace bpi
