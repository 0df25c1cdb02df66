#include "bpi/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bpi/constants.hpp"
#include "bpi/error.hpp"

namespace bpi {

using namespace constants;

const char* to_string(Polarization p) { return p == Polarization::right ? "R" : "L"; }

ProbeWave ProbeWave::from_wavelength(double wavelength_m, Polarization p) {
  return ProbeWave{wavelength_to_omega(wavelength_m), p};
}

double ProbeWave::wavelength() const { return omega_to_wavelength(omega); }

double ProbeWave::vacuum_wavenumber() const { return omega / speed_of_light; }

void ProbeWave::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidArgument("probe angular frequency must be positive and finite");
  }
}

namespace {

std::complex<double> checked_inverse(std::complex<double> zeta, int order) {
  if (order != 1 && order != 3) {
    throw InvalidArgument("series order must be 1 or 3, got " + std::to_string(order));
  }
  if (!(std::abs(zeta) > 1.0)) {
    throw InvalidArgument("asymptotic series requires |zeta| > 1");
  }
  return 1.0 / zeta;
}

}  // namespace

std::complex<double> z0_series(std::complex<double> zeta, int order) {
  if (std::isinf(std::abs(zeta))) return {0.0, 0.0};
  const auto inv = checked_inverse(zeta, order);
  return order == 1 ? -inv : -inv - inv * inv * inv;
}

std::complex<double> z_fried_conte_series(std::complex<double> zeta, int order) {
  if (std::isinf(std::abs(zeta))) return {0.0, 0.0};
  const auto inv = checked_inverse(zeta, order);
  return order == 1 ? -inv : -inv - 0.5 * inv * inv * inv;
}

double cutoff_density(double omega) {
  if (!(omega > 0.0)) {
    throw InvalidArgument("angular frequency must be positive");
  }
  return vacuum_permittivity * electron_mass * omega * omega / (elementary_charge * elementary_charge);
}

TermBreakdown refractive_index(const PlasmaState& plasma, const ProbeWave& wave) {
  wave.validate();
  const double w = wave.omega;
  const double k = wave.vacuum_wavenumber();
  // -/+ for R/L on the odd-order terms.
  const double odd_sign = wave.polarization == Polarization::right ? -1.0 : 1.0;

  TermBreakdown out;
  out.species.reserve(plasma.species().size());
  for (const auto& s : plasma.species()) {
    const double wp = plasma_frequency(s);
    if (!(w > wp)) {
      std::ostringstream msg;
      msg << "probe frequency " << w << " rad/s does not exceed the plasma frequency " << wp
          << " rad/s of species '" << s.name << "' (cutoff density " << cutoff_density(w)
          << " m^-3)";
      throw CutoffError(msg.str(), cutoff_density(w));
    }
    const double gyro = gyro_frequency(s, plasma.b0());
    const double base = wp * wp / (2.0 * w * w);

    SpeciesTerms t;
    t.name = s.name;
    t.plasma = base;
    t.gyro1 = odd_sign * base * gyro / w;
    t.gyro2 = base * gyro * gyro / (w * w);
    t.flow = odd_sign * base * gyro * k * s.v_parallel_m_s / (w * w);
    t.thermal = base * s.t_perp_j * k * k / (s.mass_kg * w * w);
    out.species.push_back(t);

    if (s.t_perp_j > 0.0 && s.density_m3 > 0.0) {
      const double w_par = std::sqrt(2.0 * s.t_perp_j / s.mass_kg);
      const double zeta = w / (k * w_par);
      if (zeta <= 3.0) {
        std::ostringstream msg;
        msg << "species '" << s.name << "': zeta = " << zeta
            << " is outside the large-argument regime of the series";
        out.warnings.push_back(msg.str());
      }
    }
  }

  double deviation = 0.0;
  for (const auto& t : out.species) {
    deviation += t.sum();
  }
  out.deviation = deviation;
  out.index = 1.0 - deviation;
  return out;
}

ChordProfile::ChordProfile(Shape shape, double length_m, int points)
    : shape_(shape), length_(length_m), points_(points) {}

void ChordProfile::validate() const {
  if (!(length_ >= 0.0) || !std::isfinite(length_)) {
    throw InvalidArgument("chord length must be non-negative and finite");
  }
  if (points_ < 3 || points_ % 2 == 0) {
    throw InvalidArgument("quadrature_points must be odd and at least 3, got " + std::to_string(points_));
  }
  if (shape_ == Shape::gaussian && !(width_ > 0.0)) {
    throw InvalidArgument("gaussian chord width must be positive");
  }
  if (shape_ == Shape::table) {
    if (nodes_.empty()) {
      throw InvalidArgument("table chord needs at least one node");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!(nodes_[i].second >= 0.0)) {
        throw InvalidArgument("chord scale must be non-negative everywhere");
      }
      if (i > 0 && !(nodes_[i].first > nodes_[i - 1].first)) {
        throw InvalidArgument("table chord positions must be strictly increasing");
      }
    }
  }
}

ChordProfile ChordProfile::uniform(double length_m, int quadrature_points) {
  ChordProfile c(Shape::uniform, length_m, quadrature_points);
  c.validate();
  return c;
}

ChordProfile ChordProfile::gaussian(double length_m, double center_m, double width_m,
                                    int quadrature_points) {
  ChordProfile c(Shape::gaussian, length_m, quadrature_points);
  c.center_ = center_m;
  c.width_ = width_m;
  c.validate();
  return c;
}

ChordProfile ChordProfile::table(double length_m, std::vector<std::pair<double, double>> nodes,
                                 int quadrature_points) {
  ChordProfile c(Shape::table, length_m, quadrature_points);
  c.nodes_ = std::move(nodes);
  c.validate();
  return c;
}

ChordProfile ChordProfile::with_points(int quadrature_points) const {
  ChordProfile c = *this;
  c.points_ = quadrature_points;
  c.validate();
  return c;
}

double ChordProfile::scale_at(double x) const {
  switch (shape_) {
    case Shape::uniform:
      return 1.0;
    case Shape::gaussian: {
      const double u = (x - center_) / width_;
      return std::exp(-0.5 * u * u);
    }
    case Shape::table: {
      if (x <= nodes_.front().first) return nodes_.front().second;
      if (x >= nodes_.back().first) return nodes_.back().second;
      const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                                       [](double v, const auto& node) { return v < node.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double f = (x - lo.first) / (hi.first - lo.first);
      return lo.second + f * (hi.second - lo.second);
    }
  }
  return 1.0;
}

PhaseResult phase_shift(const PlasmaState& plasma, const ProbeWave& wave, const ChordProfile& chord) {
  wave.validate();
  const int n = chord.quadrature_points();
  const double length = chord.length();
  const double h = length / (n - 1);

  // Simpson on the deviation 1 - n keeps the small quantity free of cancellation.
  double integral = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    const double scale = chord.scale_at(x);
    double deviation = 0.0;
    if (scale > 0.0 && !plasma.empty()) {
      try {
        deviation = refractive_index(plasma.scaled(scale, chord.scales_field() ? scale : 1.0), wave).deviation;
      } catch (const CutoffError& e) {
        std::ostringstream msg;
        msg << "cutoff at chord position " << x << " m: " << e.what();
        throw CutoffError(msg.str(), e.cutoff_density(), x);
      }
    }
    const double weight = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += weight * deviation;
  }
  integral *= h / 3.0;

  PhaseResult r;
  r.tau_p = (length - integral) / speed_of_light;
  r.phi_p = wave.omega * r.tau_p;
  r.delta_tau_p = -integral / speed_of_light;
  r.delta_tau_p_magnitude = std::abs(r.delta_tau_p);
  r.equivalent_length = speed_of_light * r.delta_tau_p_magnitude;
  r.excess_phase = wave.omega * r.delta_tau_p;
  return r;
}

double phase_shift_richardson_change(const PlasmaState& plasma, const ProbeWave& wave,
                                     const ChordProfile& chord) {
  const double coarse = phase_shift(plasma, wave, chord).delta_tau_p;
  const double fine = phase_shift(plasma, wave, chord.with_points(2 * chord.quadrature_points() - 1)).delta_tau_p;
  if (coarse == 0.0 && fine == 0.0) return 0.0;
  return std::abs(fine - coarse) / std::max(std::abs(fine), std::abs(coarse));
}

const RatioEntry& RatioReport::at(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw InvalidArgument("no ratio entry named '" + name + "'");
}

namespace {

RatioEntry make_entry(std::string name, std::string expression, double shorthand, double direct) {
  RatioEntry e{std::move(name), std::move(expression), shorthand, direct, false};
  e.agrees = direct != 0.0 && std::abs(shorthand / direct - 1.0) < 0.02;
  return e;
}

}  // namespace

RatioReport ratio_report(const ProbeWave& wave, double b0_tesla, double helium_fraction,
                         double flow_energy_ev, double t_perp_ev) {
  wave.validate();
  if (!(helium_fraction >= 0.0)) {
    throw InvalidArgument("helium fraction must be non-negative");
  }
  // Ratios are density independent; any density well below cutoff works.
  const double ne = 1e-7 * cutoff_density(wave);
  const double w = wave.omega;
  const double k = wave.vacuum_wavenumber();
  const double v_sqrt = thermal_speed(flow_energy_ev, electron_mass, SpeedConvention::square_root);
  const double v_kin = thermal_speed(flow_energy_ev, electron_mass, SpeedConvention::kinetic);

  const auto terms = [&](std::vector<Species> species, double b0) {
    return refractive_index(PlasmaState(std::move(species), b0), wave);
  };

  RatioReport report;

  const auto h = terms({electron(ne), hydrogen_ion(ne)}, 0.0);
  report.entries.push_back(make_entry("hydrogen", "sqrt(m_e/m_H)", std::sqrt(electron_mass / hydrogen_mass),
                                      h.species[1].plasma / h.species[0].plasma));

  const auto he = terms({electron(ne), helium4_ion(helium_fraction * ne)}, 0.0);
  report.entries.push_back(make_entry("helium", "Z sqrt(f_alpha m_e/m_He)",
                                      2.0 * std::sqrt(helium_fraction * electron_mass / helium4_mass),
                                      he.species[1].plasma / he.species[0].plasma));

  const auto gyro = terms({electron(ne)}, b0_tesla);
  const double omega_e = std::abs(gyro_frequency(electron(ne), b0_tesla));
  report.entries.push_back(make_entry("gyro", "|Omega_e|/omega", omega_e / w,
                                      std::abs(gyro.species[0].gyro1 / gyro.species[0].plasma)));

  const auto flow = terms({electron(ne, 0.0, v_sqrt)}, b0_tesla);
  const auto& f = flow.species[0];
  report.entries.push_back(make_entry("flow_velocity", "k v/omega, v = sqrt(E/m)", k * v_sqrt / w,
                                      f.gyro1 != 0.0 ? std::abs(f.flow / f.gyro1) : 0.0));
  report.entries.push_back(make_entry("flow", "(Omega_e/omega)(k v/omega), v = sqrt(E/m)",
                                      (omega_e / w) * (k * v_sqrt / w), std::abs(f.flow / f.plasma)));

  const auto flow_kin = terms({electron(ne, 0.0, v_kin)}, b0_tesla);
  report.entries.push_back(make_entry("flow_kinetic", "(Omega_e/omega)(k v/omega), v = sqrt(E/m) vs sqrt(2E/m)",
                                      (omega_e / w) * (k * v_sqrt / w),
                                      std::abs(flow_kin.species[0].flow / flow_kin.species[0].plasma)));

  const auto thermal = terms({electron(ne, t_perp_ev)}, 0.0);
  report.entries.push_back(make_entry("thermal", "T k^2/(m_e omega^2)",
                                      ev_to_joule(t_perp_ev) * k * k / (electron_mass * w * w),
                                      thermal.species[0].thermal / thermal.species[0].plasma));
  return report;
}

}  // namespace bpi
