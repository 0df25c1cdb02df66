#include "bpi/biphoton.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "bpi/constants.hpp"
#include "bpi/error.hpp"

namespace bpi {

using namespace constants;

double visibility(double reflectance) {
  const double r = reflectance;
  const double t = 1.0 - r;
  return 2.0 * r * t / (r * r + t * t);
}

double InterferometerConfig::visibility() const { return bpi::visibility(reflectance); }

double InterferometerConfig::effective_bandwidth() const {
  double inv2 = 1.0 / (bandwidth * bandwidth);
  for (const Filter* f : {&filter1, &filter2}) {
    if (!f->unity()) inv2 += 1.0 / (f->bandwidth * f->bandwidth);
  }
  return 1.0 / std::sqrt(inv2);
}

double InterferometerConfig::effective_delay() const {
  return phi0 == 0.0 ? delta_tau : delta_tau + phi0 / (0.5 * omega_pump);
}

InterferometerConfig InterferometerConfig::with_delay(double delay) const {
  InterferometerConfig c = *this;
  c.delta_tau = delay;
  return c;
}

void InterferometerConfig::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InvalidArgument("interferometer bandwidth must be positive");
  }
  if (!(omega_pump > bandwidth) || !std::isfinite(omega_pump)) {
    throw InvalidArgument("pump frequency must exceed the biphoton bandwidth");
  }
  if (!(reflectance >= 0.0 && reflectance <= 1.0)) {
    throw InvalidArgument("beamsplitter reflectance must lie in [0, 1]");
  }
  if (!std::isfinite(delta_tau) || !std::isfinite(phi0)) {
    throw InvalidArgument("delay and compensator phase must be finite");
  }
  if (!(normalization > 0.0)) {
    throw InvalidArgument("normalization C must be positive");
  }
  for (const Filter* f : {&filter1, &filter2}) {
    if (!(f->bandwidth >= 0.0)) {
      throw InvalidArgument("filter bandwidth must be non-negative (0 = unity filter)");
    }
  }
}

InterferometerConfig make_interferometer(double reflectance, double tau0_s, double pump_wavelength_m) {
  if (!(tau0_s > 0.0)) {
    throw InvalidArgument("coherence time tau0 must be positive");
  }
  InterferometerConfig cfg;
  cfg.reflectance = reflectance;
  cfg.bandwidth = 2.0 * pi / tau0_s;
  cfg.omega_pump = wavelength_to_omega(pump_wavelength_m);
  cfg.validate();
  return cfg;
}

double LinearGrowthModel::attenuation(double bw) const {
  const double denom = 4.0 * bw * bw * (1.0 - a0) * (1.0 - a0);
  return b_prefactor * std::exp(-pi * omega_b * omega_b * b * b / denom);
}

void LinearGrowthModel::validate() const {
  if (!(std::abs(a0) < 1.0)) throw InvalidArgument("linear growth requires |a0| < 1");
  if (!(std::abs(b) < 2.0)) throw InvalidArgument("linear growth requires |b| < 2");
  if (!(b_prefactor >= 0.0)) throw InvalidArgument("B prefactor must be non-negative");
  if (!std::isfinite(omega_b) || !std::isfinite(tau_p) || !std::isfinite(tau_p_prime)) {
    throw InvalidArgument("linear growth parameters must be finite");
  }
}

double gaussian_kernel(double x, double bandwidth) {
  return std::exp(-0.5 * bandwidth * bandwidth * x * x);
}

double g2_steady(double tau, const InterferometerConfig& cfg, const DelayPair& delays) {
  const double bw = cfg.effective_bandwidth();
  const double r = cfg.reflectance;
  const double t = cfg.transmittance();
  const double dtp = delays.difference();
  const double delay = cfg.effective_delay();

  const double ga = gaussian_kernel(tau - dtp, bw);
  const double gb = gaussian_kernel(-tau + 2.0 * delay - dtp, bw);
  const double value = t * t * ga * ga + r * r * gb * gb - 2.0 * r * t * ga * gb;
  return std::max(0.0, value);
}

double g2_linear_growth(double t_mean, double tau, const InterferometerConfig& cfg,
                        const LinearGrowthModel& lg) {
  const double bw = cfg.effective_bandwidth();
  const double r = cfg.reflectance;
  const double t = cfg.transmittance();
  const double dtp = lg.difference();
  const double delay = cfg.effective_delay();

  const double ga = gaussian_kernel((1.0 - lg.a0) * tau - lg.b * t_mean - dtp, bw);
  const double gb = gaussian_kernel(-(1.0 - lg.a0) * tau - lg.b * t_mean + (2.0 - lg.b) * delay - dtp, bw);
  const double phase = std::cos(0.5 * cfg.omega_pump * lg.b * tau);
  const double value = t * t * ga * ga + r * r * gb * gb - 2.0 * r * t * phase * ga * gb;
  return std::max(0.0, value);
}

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Integral {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

struct Segment {
  double a, b, value, error, l1;
  unsigned depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// Globally adaptive GK15: bisect the interval with the largest error estimate
// until the summed error meets tol relative to the whole integral, or hits a
// round-off floor set by the L1 norm.
template <class F>
Integral integrate_panels(const F& f, double lo, double hi, double panel_width, double tol, unsigned depth) {
  Integral total;
  if (!(hi > lo)) return total;
  std::size_t panels = 1;
  if (panel_width > 0.0) {
    panels = static_cast<std::size_t>(std::ceil((hi - lo) / panel_width));
    panels = std::clamp<std::size_t>(panels, 1, 1u << 16);
  }
  // Segments are mapped onto [-1, 1]: the single-rule error estimate is not
  // rescaled by the interval width on other ranges.
  const auto eval = [&f](double a, double b, unsigned d) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double err = 0.0, l1 = 0.0;
    const double v = Kronrod::integrate([&](double x) { return f(mid + half * x); }, -1.0, 1.0, 0, 0.0, &err, &l1);
    return Segment{a, b, half * v, half * err, half * l1, d};
  };
  std::priority_queue<Segment> heap;
  const double h = (hi - lo) / static_cast<double>(panels);
  double value = 0.0, error = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = lo + h * static_cast<double>(i);
    const double b = (i + 1 == panels) ? hi : a + h;
    heap.push(eval(a, b, 0));
    value += heap.top().value;
  }
  const auto recount = [&] {
    value = error = l1 = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
  };
  recount();
  constexpr std::size_t max_segments = 1u << 15;
  const double eps = std::numeric_limits<double>::epsilon();
  std::size_t since_recount = 0;
  while (error > std::max(tol * std::abs(value), 64.0 * eps * l1) && heap.size() < max_segments) {
    const Segment worst = heap.top();
    if (worst.depth >= depth) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = eval(worst.a, mid, worst.depth + 1);
    const Segment right = eval(mid, worst.b, worst.depth + 1);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    if (++since_recount == 256) {
      recount();
      since_recount = 0;
    }
  }
  recount();
  total.value = value;
  total.error = error;
  total.converged = error <= std::max(tol * std::abs(value), 64.0 * eps * l1);
  return total;
}

}  // namespace

double rc_windowed(const G2Function& g2, const CoincidenceWindow& window, const QuadratureOptions& options) {
  if (!(window.accumulation > 0.0)) {
    throw InvalidArgument("accumulation time S0 must be positive");
  }
  if (!(window.width >= 0.0)) {
    throw InvalidArgument("coincidence window width must be non-negative");
  }
  const double half_s0 = 0.5 * window.accumulation;
  const double half_w = 0.5 * window.width;
  if (half_w == 0.0) return 0.0;

  const double tol = options.relative_tolerance;
  // Inner results are resolved a decade tighter than the outer request.
  double inner_error = 0.0;
  bool inner_ok = true;
  const auto inner = [&](double t) {
    const auto r = integrate_panels([&](double tau) { return g2(t, tau); }, -half_w, half_w,
                                    options.panel_width, 0.1 * tol, options.max_depth);
    if (!r.converged) {
      inner_ok = false;
      inner_error = std::max(inner_error, r.error / std::max(std::abs(r.value), std::numeric_limits<double>::min()));
    }
    return r.value;
  };
  const auto outer = integrate_panels(inner, -half_s0, half_s0, 0.0, tol, options.max_depth);
  const double value = outer.value / window.accumulation;

  if (!std::isfinite(value) || !outer.converged || !inner_ok) {
    const double achieved = std::max(outer.error / std::max(std::abs(outer.value), std::numeric_limits<double>::min()),
                                     inner_error);
    std::ostringstream msg;
    msg << "coincidence-rate quadrature did not converge: achieved relative error " << achieved
        << " (requested " << tol << ")";
    throw NumericalError(msg.str());
  }
  return value;
}

double rc_windowed_steady(const InterferometerConfig& cfg, const DelayPair& delays,
                          const CoincidenceWindow& window, double relative_tolerance) {
  cfg.validate();
  QuadratureOptions opts;
  opts.relative_tolerance = relative_tolerance;
  opts.panel_width = 1.0 / cfg.effective_bandwidth();
  return rc_windowed([&](double, double tau) { return g2_steady(tau, cfg, delays); }, window, opts);
}

double rc_windowed_linear_growth(const InterferometerConfig& cfg, const LinearGrowthModel& lg,
                                 const CoincidenceWindow& window, double relative_tolerance) {
  cfg.validate();
  lg.validate();
  QuadratureOptions opts;
  opts.relative_tolerance = relative_tolerance;
  opts.panel_width = 1.0 / cfg.effective_bandwidth();
  return rc_windowed([&](double t, double tau) { return g2_linear_growth(t, tau, cfg, lg); }, window, opts);
}

double steady_normalization(const InterferometerConfig& cfg) {
  const double r = cfg.reflectance;
  const double t = cfg.transmittance();
  return (r * r + t * t) * std::sqrt(pi) / cfg.effective_bandwidth();
}

double rc_steady(const InterferometerConfig& cfg, double delta_tau_p) {
  const double bw = cfg.effective_bandwidth();
  const double x = cfg.effective_delay() - delta_tau_p;
  return cfg.normalization * (1.0 - cfg.visibility() * std::exp(-(bw * bw) * (x * x)));
}

double rc_linear_growth(const InterferometerConfig& cfg, const LinearGrowthModel& lg, double t) {
  const double bw = cfg.effective_bandwidth();
  const double delay = cfg.effective_delay();
  const double b = lg.b;
  const double attenuation = lg.attenuation(bw);
  const double phase = std::cos(0.5 * cfg.omega_pump * (b - 0.5 * b * b) * delay / (1.0 - lg.a0));
  const double x = (1.0 - 0.5 * b) * delay - b * t - lg.difference();
  return cfg.normalization * (1.0 - cfg.visibility() * attenuation * phase * std::exp(-(bw * bw) * (x * x)));
}

double linear_growth_dip_center(const LinearGrowthModel& lg, double t) {
  return (lg.b * t + lg.difference()) / (1.0 - 0.5 * lg.b);
}

std::vector<double> linear_grid(double start, double stop, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {start};
  std::vector<double> grid(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = start + step * static_cast<double>(i);
  }
  grid.back() = stop;
  return grid;
}

namespace {

double compensator_delay(const InterferometerConfig& cfg) {
  return cfg.with_delay(0.0).effective_delay();
}

}  // namespace

DipCurve scan_steady(const InterferometerConfig& cfg, double delta_tau_p, std::span<const double> grid) {
  cfg.validate();
  DipCurve curve;
  curve.normalization = cfg.normalization;
  curve.visibility = cfg.visibility();
  curve.dip_center = delta_tau_p - compensator_delay(cfg);
  curve.width_param = cfg.effective_bandwidth();
  curve.samples.reserve(grid.size());
  for (double d : grid) {
    curve.samples.push_back({d, rc_steady(cfg.with_delay(d), delta_tau_p)});
  }
  return curve;
}

DipCurve scan_linear_growth(const InterferometerConfig& cfg, const LinearGrowthModel& lg, double t,
                            std::span<const double> grid) {
  cfg.validate();
  lg.validate();
  DipCurve curve;
  curve.normalization = cfg.normalization;
  curve.visibility = cfg.visibility() * lg.attenuation(cfg.effective_bandwidth());
  curve.dip_center = linear_growth_dip_center(lg, t) - compensator_delay(cfg);
  curve.width_param = cfg.effective_bandwidth() * (1.0 - 0.5 * lg.b);
  curve.samples.reserve(grid.size());
  for (double d : grid) {
    curve.samples.push_back({d, rc_linear_growth(cfg.with_delay(d), lg, t)});
  }
  return curve;
}

double dip_half_width(const InterferometerConfig& config) {
  config.validate();
  InterferometerConfig cfg = config;
  cfg.phi0 = 0.0;
  const double v = cfg.visibility();
  if (v == 0.0) throw NumericalError("dip has zero visibility; width undefined");
  const double c = cfg.normalization;
  const double target = std::exp(-1.0);
  const auto depth = [&](double x) { return (c - rc_steady(cfg.with_delay(x), 0.0)) / (c * v) - target; };
  const double hi = 10.0 / cfg.effective_bandwidth();
  boost::uintmax_t iterations = 200;
  const auto root = boost::math::tools::toms748_solve(
      depth, 0.0, hi, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (root.first + root.second);
}

const char* to_string(PathMode mode) {
  switch (mode) {
    case PathMode::single_right: return "S_R";
    case PathMode::single_left: return "S_L";
    case PathMode::double_symmetric_right: return "D_sym_R";
    case PathMode::double_symmetric_left: return "D_sym_L";
    case PathMode::double_antisymmetric: return "D_antisym";
  }
  return "?";
}

PathMode path_mode_from_string(const std::string& name) {
  for (auto m : {PathMode::single_right, PathMode::single_left, PathMode::double_symmetric_right,
                 PathMode::double_symmetric_left, PathMode::double_antisymmetric}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidArgument("unknown path mode '" + name + "' (expected S_R, S_L, D_sym_R, D_sym_L, D_antisym)");
}

PathPhases path_config_phase(PathMode mode, const PlasmaState& plasma, double omega, const ChordProfile& chord) {
  const auto excess = [&](Polarization p) { return phase_shift(plasma, ProbeWave{omega, p}, chord).excess_phase; };

  PathPhases out;
  switch (mode) {
    case PathMode::single_right:
      out.phase_a = excess(Polarization::right);
      break;
    case PathMode::single_left:
      out.phase_a = excess(Polarization::left);
      break;
    case PathMode::double_symmetric_right:
      out.phase_a = out.phase_b = excess(Polarization::right);
      break;
    case PathMode::double_symmetric_left:
      out.phase_a = out.phase_b = excess(Polarization::left);
      break;
    case PathMode::double_antisymmetric:
      out.phase_a = excess(Polarization::right);
      out.phase_b = excess(Polarization::left);
      break;
  }
  out.differential = out.phase_a - out.phase_b;
  out.delay_difference = out.differential / omega;
  return out;
}

SensitivityLimit sensitivity_limit(const SensitivityQuery& q) {
  if (!(q.omega > 0.0)) throw InvalidArgument("sensitivity query needs a positive angular frequency");
  if (!(q.eta > 0.0 && q.eta <= 1.0)) throw InvalidArgument("detection efficiency must lie in (0, 1]");
  if (!(q.eta * q.photons >= 1.0)) throw InvalidArgument("eta * N must be at least 1");
  if (q.alpha != shot_noise_alpha && q.alpha != heisenberg_alpha) {
    throw InvalidArgument("alpha must be -1/2 (shot noise) or -1 (Heisenberg)");
  }
  if (!(q.k0 > 0.0)) throw InvalidArgument("k0 must be positive");
  SensitivityLimit s;
  s.phi_min = q.k0 * std::pow(q.eta * q.photons, q.alpha);
  s.tau_min = s.phi_min / q.omega;
  s.length_min = speed_of_light * s.tau_min;
  return s;
}

double implied_k0(double phi, double eta, double photons, double alpha) {
  if (!(eta * photons > 0.0)) throw InvalidArgument("eta * N must be positive");
  return phi * std::pow(eta * photons, -alpha);
}

}  // namespace bpi
