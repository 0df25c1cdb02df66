#pragma once

#include <string>
#include <vector>

namespace bpi {

/// One charged-particle population. Internal units are SI; temperature is
/// stored in joules.
struct Species {
  std::string name;
  int charge_number = -1;
  double mass_kg = 0.0;
  double density_m3 = 0.0;
  double t_perp_j = 0.0;
  double v_parallel_m_s = 0.0;

  /// Throws InvalidArgument if any field is out of range.
  void validate() const;
};

Species make_species(std::string name, int charge_number, double mass_kg, double density_m3,
                     double t_perp_ev = 0.0, double v_parallel_m_s = 0.0);

Species electron(double density_m3, double t_perp_ev = 0.0, double v_parallel_m_s = 0.0);
Species hydrogen_ion(double density_m3, double t_perp_ev = 0.0, double v_parallel_m_s = 0.0);
Species helium4_ion(double density_m3, double t_perp_ev = 0.0, double v_parallel_m_s = 0.0);

/// Looks up "electron", "hydrogen" or "helium4".
Species species_preset(const std::string& preset, double density_m3, double t_perp_ev = 0.0,
                       double v_parallel_m_s = 0.0);

/// Species populations plus a uniform axial magnetic field along z.
class PlasmaState {
 public:
  PlasmaState() = default;
  explicit PlasmaState(std::vector<Species> species, double b0_tesla = 0.0);

  const std::vector<Species>& species() const noexcept { return species_; }
  double b0() const noexcept { return b0_; }
  bool empty() const noexcept { return species_.empty(); }

  /// Copy with every density multiplied by density_scale and B0 by field_scale.
  PlasmaState scaled(double density_scale, double field_scale = 1.0) const;

  /// |sum Z n| / sum |Z| n, zero for an empty or zero-density state.
  double quasi_neutrality_residual() const;
  bool quasi_neutral(double relative_tolerance = 1e-6) const;

 private:
  std::vector<Species> species_;
  double b0_ = 0.0;
};

/// sqrt(Z^2 e^2 n / (eps0 m)), rad/s.
double plasma_frequency(const Species& s);

/// Signed Z e B0 / m, rad/s.
double gyro_frequency(const Species& s, double b0_tesla);

}  // namespace bpi
