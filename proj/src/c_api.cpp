#include "bpi/bpi.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "bpi/biphoton.hpp"
#include "bpi/coincidence.hpp"
#include "bpi/constants.hpp"
#include "bpi/dispersion.hpp"
#include "bpi/error.hpp"
#include "bpi/inference.hpp"
#include "bpi/plasma.hpp"
#include "bpi/reference_checks.hpp"

struct bpi_plasma {
  std::vector<bpi::Species> species;
  double b0 = 0.0;
  bpi::PlasmaState state() const { return bpi::PlasmaState(species, b0); }
};

struct bpi_chord {
  bpi::ChordProfile profile;
};

struct bpi_event_batch {
  bpi::EventBatch batch;
};

namespace {

thread_local std::string tl_error;

bpi_status fail(bpi_status status, const char* msg) {
  tl_error = msg;
  return status;
}

bpi_status map_code(bpi::ErrorCode code) {
  switch (code) {
    case bpi::ErrorCode::invalid_argument: return BPI_ERR_INVALID_ARGUMENT;
    case bpi::ErrorCode::numerical: return BPI_ERR_NUMERICAL;
    case bpi::ErrorCode::cutoff: return BPI_ERR_CUTOFF;
    case bpi::ErrorCode::fit: return BPI_ERR_FIT;
    case bpi::ErrorCode::io: return BPI_ERR_IO;
  }
  return BPI_ERR_INTERNAL;
}

struct BufferTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
bpi_status guarded(F&& f) {
  try {
    f();
    tl_error.clear();
    return BPI_OK;
  } catch (const BufferTooSmall& e) {
    return fail(BPI_ERR_BUFFER_TOO_SMALL, e.what());
  } catch (const bpi::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BPI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BPI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BPI_ERR_INTERNAL, "unknown error");
  }
}

#define BPI_REQUIRE(ptr) \
  do { if ((ptr) == nullptr) return fail(BPI_ERR_NULL_POINTER, "null pointer: " #ptr); } while (0)

bpi::Polarization to_pol(bpi_polarization p) {
  if (p != BPI_POL_R && p != BPI_POL_L) throw bpi::InvalidArgument("polarization must be R or L");
  return p == BPI_POL_R ? bpi::Polarization::right : bpi::Polarization::left;
}

bpi::InterferometerConfig to_cfg(const bpi_interferometer& c) {
  bpi::InterferometerConfig cfg;
  cfg.omega_pump = c.omega_pump;
  cfg.bandwidth = c.bandwidth;
  cfg.reflectance = c.reflectance;
  cfg.delta_tau = c.delta_tau;
  cfg.phi0 = c.phi0;
  cfg.normalization = c.normalization;
  cfg.filter1.bandwidth = c.filter1_bandwidth;
  cfg.filter2.bandwidth = c.filter2_bandwidth;
  cfg.validate();
  return cfg;
}

bpi::LinearGrowthModel to_lg(const bpi_linear_growth& l) {
  bpi::LinearGrowthModel lg{l.a0, l.b, l.tau_p, l.tau_p_prime, l.omega_b, l.b_prefactor};
  lg.validate();
  return lg;
}

void copy_text(char* dst, std::size_t size, const std::string& src) {
  std::snprintf(dst, size, "%s", src.c_str());
}

bpi::DipFitOptions to_fit_options(const bpi_fit_options* o) {
  bpi::DipFitOptions opts;
  if (o != nullptr) {
    opts.fix_bandwidth = o->fix_bandwidth != 0;
    opts.fixed_bandwidth = o->fixed_bandwidth;
    if (o->max_iterations > 0) opts.max_iterations = o->max_iterations;
    if (o->step_tolerance > 0.0) opts.step_tolerance = o->step_tolerance;
  }
  return opts;
}

void export_fit(const bpi::DipFit& fit, bpi_fit_result* out) {
  for (int i = 0; i < 4; ++i) {
    out->estimate[i] = fit.estimate[static_cast<std::size_t>(i)];
    out->standard_error[i] = fit.standard_error[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < 16; ++i) out->covariance[i] = fit.covariance[static_cast<std::size_t>(i)];
  out->residual_norm = fit.residual_norm;
  out->gradient_norm = fit.gradient_norm;
  out->converged = fit.converged ? 1 : 0;
  out->iterations = fit.iterations;
  out->warning_count = static_cast<int>(fit.warnings.size());
}

}  // namespace

extern "C" {

const char* bpi_version(void) { return "1.0.0"; }

const char* bpi_last_error(void) { return tl_error.c_str(); }

const char* bpi_status_name(bpi_status status) {
  switch (status) {
    case BPI_OK: return "ok";
    case BPI_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BPI_ERR_NUMERICAL: return "numerical failure";
    case BPI_ERR_CUTOFF: return "cutoff";
    case BPI_ERR_FIT: return "fit failure";
    case BPI_ERR_IO: return "i/o failure";
    case BPI_ERR_NULL_POINTER: return "null pointer";
    case BPI_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case BPI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

double bpi_speed_of_light(void) { return bpi::constants::speed_of_light; }

double bpi_wavelength_to_omega(double wavelength_m) {
  return wavelength_m > 0.0 ? bpi::wavelength_to_omega(wavelength_m) : 0.0;
}

double bpi_ev_to_joule(double energy_ev) { return bpi::ev_to_joule(energy_ev); }

bpi_status bpi_thermal_speed(double energy_ev, double mass_kg, int convention, double* speed) {
  BPI_REQUIRE(speed);
  return guarded([&] {
    if (convention != 0 && convention != 1) throw bpi::InvalidArgument("speed convention must be 0 or 1");
    *speed = bpi::thermal_speed(energy_ev, mass_kg,
                                convention == 0 ? bpi::SpeedConvention::kinetic : bpi::SpeedConvention::square_root);
  });
}

bpi_status bpi_plasma_create(double b0_tesla, bpi_plasma** out) {
  BPI_REQUIRE(out);
  return guarded([&] {
    bpi::PlasmaState({}, b0_tesla);
    auto* p = new bpi_plasma;
    p->b0 = b0_tesla;
    *out = p;
  });
}

void bpi_plasma_destroy(bpi_plasma* plasma) { delete plasma; }

bpi_status bpi_plasma_add_species(bpi_plasma* plasma, const bpi_species_desc* s) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(s);
  return guarded([&] {
    plasma->species.push_back(bpi::make_species(s->name ? s->name : "species", s->charge_number, s->mass_kg,
                                                s->density_m3, s->t_perp_ev, s->v_parallel_m_s));
  });
}

bpi_status bpi_plasma_add_preset(bpi_plasma* plasma, const char* preset, double density_m3, double t_perp_ev,
                                 double v_parallel_m_s) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(preset);
  return guarded([&] { plasma->species.push_back(bpi::species_preset(preset, density_m3, t_perp_ev, v_parallel_m_s)); });
}

size_t bpi_plasma_species_count(const bpi_plasma* plasma) { return plasma ? plasma->species.size() : 0; }

bpi_status bpi_plasma_species_name(const bpi_plasma* plasma, size_t index, const char** name) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(name);
  if (index >= plasma->species.size()) return fail(BPI_ERR_INVALID_ARGUMENT, "species index out of range");
  *name = plasma->species[index].name.c_str();
  return BPI_OK;
}

bpi_status bpi_plasma_quasi_neutrality(const bpi_plasma* plasma, double* residual) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(residual);
  return guarded([&] { *residual = plasma->state().quasi_neutrality_residual(); });
}

bpi_status bpi_plasma_frequency(const bpi_plasma* plasma, size_t index, double* omega) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(omega);
  if (index >= plasma->species.size()) return fail(BPI_ERR_INVALID_ARGUMENT, "species index out of range");
  *omega = bpi::plasma_frequency(plasma->species[index]);
  return BPI_OK;
}

bpi_status bpi_gyro_frequency(const bpi_plasma* plasma, size_t index, double* omega) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(omega);
  if (index >= plasma->species.size()) return fail(BPI_ERR_INVALID_ARGUMENT, "species index out of range");
  *omega = bpi::gyro_frequency(plasma->species[index], plasma->b0);
  return BPI_OK;
}

bpi_status bpi_refractive_index(const bpi_plasma* plasma, double omega, bpi_polarization pol, bpi_term_set* terms,
                                size_t capacity, double* index, double* deviation, size_t* warning_count) {
  BPI_REQUIRE(plasma);
  if (terms != nullptr && capacity < plasma->species.size()) {
    return fail(BPI_ERR_BUFFER_TOO_SMALL, "term buffer smaller than the species count");
  }
  return guarded([&] {
    const auto br = bpi::refractive_index(plasma->state(), bpi::ProbeWave{omega, to_pol(pol)});
    if (terms != nullptr) {
      for (std::size_t i = 0; i < br.species.size(); ++i) {
        const auto& t = br.species[i];
        terms[i] = bpi_term_set{t.plasma, t.gyro1, t.gyro2, t.flow, t.thermal};
      }
    }
    if (index) *index = br.index;
    if (deviation) *deviation = br.deviation;
    if (warning_count) *warning_count = br.warnings.size();
  });
}

double bpi_cutoff_density(double omega) { return omega > 0.0 ? bpi::cutoff_density(omega) : 0.0; }

bpi_status bpi_z0_series(double re, double im, int order, double* out_re, double* out_im) {
  BPI_REQUIRE(out_re);
  BPI_REQUIRE(out_im);
  return guarded([&] {
    const auto z = bpi::z0_series({re, im}, order);
    *out_re = z.real();
    *out_im = z.imag();
  });
}

bpi_status bpi_z_fried_conte_series(double re, double im, int order, double* out_re, double* out_im) {
  BPI_REQUIRE(out_re);
  BPI_REQUIRE(out_im);
  return guarded([&] {
    const auto z = bpi::z_fried_conte_series({re, im}, order);
    *out_re = z.real();
    *out_im = z.imag();
  });
}

bpi_status bpi_chord_create_uniform(double length_m, int quadrature_points, bpi_chord** out) {
  BPI_REQUIRE(out);
  return guarded([&] { *out = new bpi_chord{bpi::ChordProfile::uniform(length_m, quadrature_points)}; });
}

bpi_status bpi_chord_create_gaussian(double length_m, double center_m, double width_m, int quadrature_points,
                                     bpi_chord** out) {
  BPI_REQUIRE(out);
  return guarded([&] {
    *out = new bpi_chord{bpi::ChordProfile::gaussian(length_m, center_m, width_m, quadrature_points)};
  });
}

bpi_status bpi_chord_create_table(double length_m, const double* positions_m, const double* scales, size_t count,
                                  int quadrature_points, bpi_chord** out) {
  BPI_REQUIRE(out);
  BPI_REQUIRE(positions_m);
  BPI_REQUIRE(scales);
  return guarded([&] {
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < count; ++i) nodes.emplace_back(positions_m[i], scales[i]);
    *out = new bpi_chord{bpi::ChordProfile::table(length_m, std::move(nodes), quadrature_points)};
  });
}

bpi_status bpi_chord_set_scale_field(bpi_chord* chord, int on) {
  BPI_REQUIRE(chord);
  chord->profile.scale_field(on != 0);
  return BPI_OK;
}

void bpi_chord_destroy(bpi_chord* chord) { delete chord; }

bpi_status bpi_phase_shift(const bpi_plasma* plasma, double omega, bpi_polarization pol, const bpi_chord* chord,
                           bpi_phase_result* out) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(chord);
  BPI_REQUIRE(out);
  return guarded([&] {
    const auto r = bpi::phase_shift(plasma->state(), bpi::ProbeWave{omega, to_pol(pol)}, chord->profile);
    *out = bpi_phase_result{r.phi_p, r.tau_p, r.delta_tau_p, r.delta_tau_p_magnitude, r.equivalent_length,
                            r.excess_phase};
  });
}

bpi_status bpi_ratio_report(double omega, double b0_tesla, double helium_fraction, double flow_energy_ev,
                            double t_perp_ev, bpi_ratio_entry* entries, size_t capacity, size_t* count) {
  BPI_REQUIRE(count);
  return guarded([&] {
    const auto report = bpi::ratio_report(bpi::ProbeWave{omega, bpi::Polarization::right}, b0_tesla,
                                          helium_fraction, flow_energy_ev, t_perp_ev);
    *count = report.entries.size();
    if (entries == nullptr) return;
    if (capacity < report.entries.size()) throw BufferTooSmall("ratio buffer too small");
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
      const auto& e = report.entries[i];
      copy_text(entries[i].name, sizeof(entries[i].name), e.name);
      copy_text(entries[i].expression, sizeof(entries[i].expression), e.expression);
      entries[i].shorthand = e.shorthand;
      entries[i].direct = e.direct;
      entries[i].agrees = e.agrees ? 1 : 0;
    }
  });
}

bpi_status bpi_interferometer_init(double reflectance, double tau0_s, double pump_wavelength_m,
                                   bpi_interferometer* out) {
  BPI_REQUIRE(out);
  return guarded([&] {
    const auto cfg = bpi::make_interferometer(reflectance, tau0_s, pump_wavelength_m);
    *out = bpi_interferometer{cfg.omega_pump, cfg.bandwidth, cfg.reflectance, 0.0, 0.0, 1.0, 0.0, 0.0};
  });
}

bpi_status bpi_interferometer_visibility(const bpi_interferometer* cfg, double* visibility) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(visibility);
  return guarded([&] { *visibility = to_cfg(*cfg).visibility(); });
}

bpi_status bpi_gaussian_kernel(double x, double bandwidth, double* out) {
  BPI_REQUIRE(out);
  if (!(bandwidth > 0.0)) return fail(BPI_ERR_INVALID_ARGUMENT, "bandwidth must be positive");
  *out = bpi::gaussian_kernel(x, bandwidth);
  return BPI_OK;
}

bpi_status bpi_g2_steady(const bpi_interferometer* cfg, double tau, double tau_p, double tau_p_prime, double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(out);
  return guarded([&] { *out = bpi::g2_steady(tau, to_cfg(*cfg), {tau_p, tau_p_prime}); });
}

bpi_status bpi_g2_linear_growth(const bpi_interferometer* cfg, const bpi_linear_growth* lg, double t, double tau,
                                double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(lg);
  BPI_REQUIRE(out);
  return guarded([&] { *out = bpi::g2_linear_growth(t, tau, to_cfg(*cfg), to_lg(*lg)); });
}

bpi_status bpi_rc_steady(const bpi_interferometer* cfg, double delta_tau_p, double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(out);
  return guarded([&] { *out = bpi::rc_steady(to_cfg(*cfg), delta_tau_p); });
}

bpi_status bpi_rc_linear_growth(const bpi_interferometer* cfg, const bpi_linear_growth* lg, double t, double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(lg);
  BPI_REQUIRE(out);
  return guarded([&] { *out = bpi::rc_linear_growth(to_cfg(*cfg), to_lg(*lg), t); });
}

bpi_status bpi_steady_normalization(const bpi_interferometer* cfg, double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(out);
  return guarded([&] { *out = bpi::steady_normalization(to_cfg(*cfg)); });
}

bpi_status bpi_rc_windowed_steady(const bpi_interferometer* cfg, double tau_p, double tau_p_prime,
                                  double accumulation_s, double window_s, double relative_tolerance, double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(out);
  return guarded([&] {
    *out = bpi::rc_windowed_steady(to_cfg(*cfg), {tau_p, tau_p_prime}, {accumulation_s, window_s},
                                   relative_tolerance > 0.0 ? relative_tolerance : 1e-8);
  });
}

bpi_status bpi_rc_windowed_linear_growth(const bpi_interferometer* cfg, const bpi_linear_growth* lg,
                                         double accumulation_s, double window_s, double relative_tolerance,
                                         double* out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(lg);
  BPI_REQUIRE(out);
  return guarded([&] {
    *out = bpi::rc_windowed_linear_growth(to_cfg(*cfg), to_lg(*lg), {accumulation_s, window_s},
                                          relative_tolerance > 0.0 ? relative_tolerance : 1e-8);
  });
}

bpi_status bpi_dip_scan(const bpi_interferometer* cfg, double delta_tau_p, const double* grid, size_t n,
                        double* rates) {
  BPI_REQUIRE(cfg);
  if (n > 0) {
    BPI_REQUIRE(grid);
    BPI_REQUIRE(rates);
  }
  return guarded([&] {
    const auto curve = bpi::scan_steady(to_cfg(*cfg), delta_tau_p, {grid, n});
    for (std::size_t i = 0; i < n; ++i) rates[i] = curve.samples[i].rate;
  });
}

bpi_status bpi_lg_dip_scan(const bpi_interferometer* cfg, const bpi_linear_growth* lg, double t, const double* grid,
                           size_t n, double* rates) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(lg);
  if (n > 0) {
    BPI_REQUIRE(grid);
    BPI_REQUIRE(rates);
  }
  return guarded([&] {
    const auto curve = bpi::scan_linear_growth(to_cfg(*cfg), to_lg(*lg), t, {grid, n});
    for (std::size_t i = 0; i < n; ++i) rates[i] = curve.samples[i].rate;
  });
}

bpi_status bpi_lg_dip_center(const bpi_linear_growth* lg, double t, double* center) {
  BPI_REQUIRE(lg);
  BPI_REQUIRE(center);
  return guarded([&] { *center = bpi::linear_growth_dip_center(to_lg(*lg), t); });
}

bpi_status bpi_dip_half_width(const bpi_interferometer* cfg, double* width) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(width);
  return guarded([&] { *width = bpi::dip_half_width(to_cfg(*cfg)); });
}

bpi_status bpi_path_config_phase(bpi_path_mode mode, const bpi_plasma* plasma, double omega, const bpi_chord* chord,
                                 bpi_path_phases* out) {
  BPI_REQUIRE(plasma);
  BPI_REQUIRE(chord);
  BPI_REQUIRE(out);
  if (mode < BPI_PATH_S_R || mode > BPI_PATH_D_ANTISYM) return fail(BPI_ERR_INVALID_ARGUMENT, "unknown path mode");
  return guarded([&] {
    const auto r = bpi::path_config_phase(static_cast<bpi::PathMode>(mode), plasma->state(), omega, chord->profile);
    *out = bpi_path_phases{r.phase_a, r.phase_b, r.differential, r.delay_difference};
  });
}

bpi_status bpi_sensitivity_limit(double omega, double eta, double photons, double alpha, double k0,
                                 bpi_sensitivity* out) {
  BPI_REQUIRE(out);
  return guarded([&] {
    const auto s = bpi::sensitivity_limit({omega, eta, photons, alpha, k0});
    *out = bpi_sensitivity{s.phi_min, s.tau_min, s.length_min};
  });
}

bpi_status bpi_implied_k0(double phi, double eta, double photons, double alpha, double* k0) {
  BPI_REQUIRE(k0);
  return guarded([&] { *k0 = bpi::implied_k0(phi, eta, photons, alpha); });
}

bpi_status bpi_sample_pairs(const bpi_interferometer* cfg, double tau_p, double tau_p_prime, size_t n, uint64_t seed,
                            const bpi_sampling_options* options, bpi_event_batch** out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(out);
  return guarded([&] {
    bpi::SamplingOptions opts;
    if (options != nullptr) {
      opts.accumulation = options->accumulation_s;
      opts.accidental_rate = options->accidental_rate_hz;
      if (options->sampler_nodes > 0) opts.nodes = options->sampler_nodes;
    }
    auto batch = bpi::sample_pair_separations(n, to_cfg(*cfg), {tau_p, tau_p_prime}, seed, opts);
    *out = new bpi_event_batch{std::move(batch)};
  });
}

void bpi_event_batch_destroy(bpi_event_batch* batch) { delete batch; }

size_t bpi_event_batch_size(const bpi_event_batch* batch) { return batch ? batch->batch.pairs.size() : 0; }

size_t bpi_event_batch_accidentals(const bpi_event_batch* batch) { return batch ? batch->batch.n_accidentals : 0; }

bpi_status bpi_event_batch_pairs(const bpi_event_batch* batch, double* t1, double* t2, size_t capacity) {
  BPI_REQUIRE(batch);
  BPI_REQUIRE(t1);
  BPI_REQUIRE(t2);
  if (capacity < batch->batch.pairs.size()) return fail(BPI_ERR_BUFFER_TOO_SMALL, "pair buffer too small");
  for (std::size_t i = 0; i < batch->batch.pairs.size(); ++i) {
    t1[i] = batch->batch.pairs[i].t1;
    t2[i] = batch->batch.pairs[i].t2;
  }
  return BPI_OK;
}

bpi_status bpi_event_batch_write_csv(const bpi_event_batch* batch, const char* path) {
  BPI_REQUIRE(batch);
  BPI_REQUIRE(path);
  return guarded([&] { bpi::write_events_csv(batch->batch, path); });
}

bpi_status bpi_count_coincidences(const bpi_event_batch* batch, double window_s, uint64_t* counted) {
  BPI_REQUIRE(batch);
  BPI_REQUIRE(counted);
  return guarded([&] { *counted = bpi::count_coincidences(batch->batch, window_s); });
}

void bpi_mc_options_init(bpi_mc_options* options) {
  if (options == nullptr) return;
  *options = bpi_mc_options{10000, 1, 1e-9, 0.0, 0.0, 0, -1};
}

bpi_status bpi_mc_dip_scan(const bpi_interferometer* cfg, double delta_tau_p, const double* grid, size_t n,
                           const bpi_mc_options* options, double* rates, uint64_t* counted, double* expected,
                           double* window_used, bpi_event_batch** events_out) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(options);
  BPI_REQUIRE(grid);
  return guarded([&] {
    bpi::McScanOptions opts;
    opts.pairs_per_point = options->pairs_per_point;
    opts.seed = options->seed;
    opts.window = {options->accumulation_s, options->window_s};
    opts.accidental_rate = options->accidental_rate_hz;
    opts.workers = options->workers;
    if (options->events_index >= 0) opts.keep_events_index = static_cast<std::size_t>(options->events_index);
    auto scan = bpi::mc_dip_scan(to_cfg(*cfg), delta_tau_p, {grid, n}, opts);
    for (std::size_t i = 0; i < n; ++i) {
      if (rates) rates[i] = scan.curve.samples[i].rate;
      if (counted) counted[i] = scan.counts[i].counted;
      if (expected) expected[i] = scan.counts[i].expected;
    }
    if (window_used && n > 0) *window_used = scan.counts[0].window.width;
    if (events_out) *events_out = scan.events ? new bpi_event_batch{std::move(*scan.events)} : nullptr;
  });
}

void bpi_fit_options_init(bpi_fit_options* options) {
  if (options == nullptr) return;
  *options = bpi_fit_options{0, 0.0, 200, 1e-10};
}

bpi_status bpi_fit_dip_curve(const double* delays, const double* rates, size_t n, const bpi_fit_options* options,
                             bpi_fit_result* out) {
  BPI_REQUIRE(delays);
  BPI_REQUIRE(rates);
  BPI_REQUIRE(out);
  return guarded([&] { export_fit(bpi::fit_dip({delays, n}, {rates, n}, {}, to_fit_options(options)), out); });
}

bpi_status bpi_fit_dip_counts(const double* delays, const uint64_t* counts, size_t n, const bpi_fit_options* options,
                              bpi_fit_result* out) {
  BPI_REQUIRE(delays);
  BPI_REQUIRE(counts);
  BPI_REQUIRE(out);
  return guarded([&] {
    std::vector<bpi::CoincidencePoint> points(n);
    for (std::size_t i = 0; i < n; ++i) {
      points[i].delay = delays[i];
      points[i].counted = counts[i];
    }
    export_fit(bpi::fit_dip(std::span<const bpi::CoincidencePoint>(points), to_fit_options(options)), out);
  });
}

bpi_status bpi_precision_scaling(const bpi_interferometer* cfg, double delta_tau_p, const double* grid, size_t n_grid,
                                 const uint64_t* pairs_list, size_t n_rows, uint64_t trials, uint64_t seed,
                                 double accumulation_s, double window_s, unsigned workers, bpi_scaling_row* rows,
                                 double* slope, double* slope_error) {
  BPI_REQUIRE(cfg);
  BPI_REQUIRE(grid);
  BPI_REQUIRE(pairs_list);
  BPI_REQUIRE(rows);
  return guarded([&] {
    std::vector<std::size_t> pairs(pairs_list, pairs_list + n_rows);
    bpi::ScalingOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    opts.window = {accumulation_s, window_s};
    opts.workers = workers;
    const auto study = bpi::precision_scaling(to_cfg(*cfg), delta_tau_p, {grid, n_grid}, pairs, opts);
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
      const auto& r = study.rows[i];
      rows[i] = bpi_scaling_row{r.pairs_per_point, r.trials, r.failures, r.std_dev, r.bias, r.mean_standard_error,
                                r.bias_standard_error};
    }
    if (slope) *slope = study.slope;
    if (slope_error) *slope_error = study.slope_error;
  });
}

bpi_status bpi_delay_to_density(double delay_s, double omega, double length_m, double* density) {
  BPI_REQUIRE(density);
  return guarded([&] { *density = bpi::delay_to_density(delay_s, bpi::ProbeWave{omega}, length_m); });
}

bpi_status bpi_density_to_delay(double density_m3, double omega, double length_m, double* delay) {
  BPI_REQUIRE(delay);
  return guarded([&] { *delay = bpi::density_to_delay(density_m3, bpi::ProbeWave{omega}, length_m); });
}

const char* bpi_density_inversion_assumption(void) { return bpi::density_inversion_assumption; }

bpi_status bpi_reference_checks(bpi_reference_check* checks, size_t capacity, size_t* count) {
  BPI_REQUIRE(count);
  return guarded([&] {
    const auto all = bpi::reference_checks();
    *count = all.size();
    if (checks == nullptr) return;
    if (capacity < all.size()) throw BufferTooSmall("reference check buffer too small");
    for (std::size_t i = 0; i < all.size(); ++i) {
      copy_text(checks[i].name, sizeof(checks[i].name), all[i].name);
      checks[i].computed = all[i].computed;
      checks[i].expected = all[i].expected;
      checks[i].lower = all[i].lower;
      checks[i].upper = all[i].upper;
      checks[i].passed = all[i].passed ? 1 : 0;
    }
  });
}

}  // extern "C"
