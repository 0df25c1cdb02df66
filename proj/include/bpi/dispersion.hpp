#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bpi/plasma.hpp"

namespace bpi {

enum class Polarization { right, left };

const char* to_string(Polarization p);

/// Probe photon propagating along B0.
struct ProbeWave {
  double omega = 0.0;  // rad/s
  Polarization polarization = Polarization::right;

  static ProbeWave from_wavelength(double wavelength_m, Polarization p = Polarization::right);
  double wavelength() const;
  /// omega / c; used as k_parallel in the thermal and flow corrections.
  double vacuum_wavenumber() const;
  void validate() const;
};

/// Contributions of one species to 1 - n. Signs already include the
/// -/+ R/L convention, so the deviation is the plain sum.
struct SpeciesTerms {
  std::string name;
  double plasma = 0.0;   // w_ps^2 / 2w^2
  double gyro1 = 0.0;    // -/+ plasma * Omega/w
  double gyro2 = 0.0;    // plasma * Omega^2/w^2
  double flow = 0.0;     // -/+ plasma * Omega k v / w^2
  double thermal = 0.0;  // plasma * T k^2 / (m w^2)

  double sum() const { return plasma + gyro1 + gyro2 + flow + thermal; }
};

struct TermBreakdown {
  std::vector<SpeciesTerms> species;
  double deviation = 0.0;  // 1 - n
  double index = 1.0;      // n
  std::vector<std::string> warnings;
};

/// Truncated large-argument series Z0 = -1/z - 1/z^3 (order 3) or -1/z (order 1).
/// Throws InvalidArgument for |zeta| <= 1 or an unsupported order.
std::complex<double> z0_series(std::complex<double> zeta, int order);

/// Fried-Conte series Z = -1/z - 1/(2 z^3) (order 3) or -1/z (order 1).
std::complex<double> z_fried_conte_series(std::complex<double> zeta, int order);

/// Warm magnetized index for parallel propagation, kept to O(w^-4).
/// Throws CutoffError when w <= w_ps for any species.
TermBreakdown refractive_index(const PlasmaState& plasma, const ProbeWave& wave);

/// eps0 m_e w^2 / e^2.
double cutoff_density(double omega);
inline double cutoff_density(const ProbeWave& wave) { return cutoff_density(wave.omega); }

/// Density (and optionally field) scale along a straight chord of length L.
class ChordProfile {
 public:
  enum class Shape { uniform, gaussian, table };

  static ChordProfile uniform(double length_m, int quadrature_points = 201);
  static ChordProfile gaussian(double length_m, double center_m, double width_m,
                               int quadrature_points = 201);
  /// Piecewise-linear scale through (position, scale) nodes; clamps outside.
  static ChordProfile table(double length_m, std::vector<std::pair<double, double>> nodes,
                            int quadrature_points = 201);

  ChordProfile& scale_field(bool on) {
    scale_field_ = on;
    return *this;
  }
  ChordProfile with_points(int quadrature_points) const;

  double length() const noexcept { return length_; }
  int quadrature_points() const noexcept { return points_; }
  bool scales_field() const noexcept { return scale_field_; }
  Shape shape() const noexcept { return shape_; }
  double scale_at(double position_m) const;

 private:
  ChordProfile(Shape shape, double length_m, int points);
  void validate() const;

  Shape shape_ = Shape::uniform;
  double length_ = 0.0;
  int points_ = 201;
  double center_ = 0.0;
  double width_ = 0.0;
  std::vector<std::pair<double, double>> nodes_;
  bool scale_field_ = false;
};

struct PhaseResult {
  double phi_p = 0.0;                  // (w/c) int n dl, rad
  double tau_p = 0.0;                  // phi_p / w, s
  double delta_tau_p = 0.0;            // int (n - 1) dl / c, s (negative in plasma)
  double delta_tau_p_magnitude = 0.0;  // |delta_tau_p|
  double equivalent_length = 0.0;      // c |delta_tau_p|, m
  double excess_phase = 0.0;           // w * delta_tau_p, rad
};

/// Composite-Simpson line integral of the index along the chord.
/// A cutoff anywhere on the chord throws CutoffError carrying that position.
PhaseResult phase_shift(const PlasmaState& plasma, const ProbeWave& wave, const ChordProfile& chord);

/// Relative change in delta_tau_p between quadrature_points and 2*quadrature_points-1.
double phase_shift_richardson_change(const PlasmaState& plasma, const ProbeWave& wave,
                                     const ChordProfile& chord);

/// Small-term magnitude estimates relative to the electron plasma term. Each
/// entry carries the textbook shorthand expression and the ratio obtained
/// by evaluating the full index expression.
struct RatioEntry {
  std::string name;
  std::string expression;
  double shorthand = 0.0;
  double direct = 0.0;
  bool agrees = false;  // |shorthand/direct - 1| < 2%
};

struct RatioReport {
  std::vector<RatioEntry> entries;
  const RatioEntry& at(const std::string& name) const;
};

RatioReport ratio_report(const ProbeWave& wave, double b0_tesla, double helium_fraction,
                         double flow_energy_ev, double t_perp_ev);

}  // namespace bpi
