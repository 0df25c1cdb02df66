/*
 * C interface to the biphoton plasma interferometry library.
 *
 * Every fallible call returns a bpi_status; on failure a message describing
 * the error is available from bpi_last_error() on the calling thread.
 * Handles are opaque and must be released with the matching _destroy call.
 * Units are SI throughout unless a parameter name says otherwise.
 */
#ifndef BPI_BPI_H
#define BPI_BPI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BPI_BUILDING_LIBRARY)
#define BPI_API __declspec(dllexport)
#else
#define BPI_API __declspec(dllimport)
#endif
#else
#define BPI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bpi_status {
  BPI_OK = 0,
  BPI_ERR_INVALID_ARGUMENT = 1,
  BPI_ERR_NUMERICAL = 2,
  BPI_ERR_CUTOFF = 3,
  BPI_ERR_FIT = 4,
  BPI_ERR_IO = 5,
  BPI_ERR_NULL_POINTER = 6,
  BPI_ERR_BUFFER_TOO_SMALL = 7,
  BPI_ERR_INTERNAL = 8
} bpi_status;

typedef enum bpi_polarization { BPI_POL_R = 0, BPI_POL_L = 1 } bpi_polarization;

typedef enum bpi_path_mode {
  BPI_PATH_S_R = 0,
  BPI_PATH_S_L = 1,
  BPI_PATH_D_SYM_R = 2,
  BPI_PATH_D_SYM_L = 3,
  BPI_PATH_D_ANTISYM = 4
} bpi_path_mode;

BPI_API const char* bpi_version(void);
BPI_API const char* bpi_last_error(void);
BPI_API const char* bpi_status_name(bpi_status status);

/* ---- constants and conversions ---- */

BPI_API double bpi_speed_of_light(void);
BPI_API double bpi_wavelength_to_omega(double wavelength_m);
BPI_API double bpi_ev_to_joule(double energy_ev);
/* convention 0: sqrt(2E/m), 1: sqrt(E/m) */
BPI_API bpi_status bpi_thermal_speed(double energy_ev, double mass_kg, int convention, double* speed);

/* ---- plasma state ---- */

typedef struct bpi_plasma bpi_plasma;

typedef struct bpi_species_desc {
  const char* name;
  int charge_number;
  double mass_kg;
  double density_m3;
  double t_perp_ev;
  double v_parallel_m_s;
} bpi_species_desc;

BPI_API bpi_status bpi_plasma_create(double b0_tesla, bpi_plasma** out);
BPI_API void bpi_plasma_destroy(bpi_plasma* plasma);
BPI_API bpi_status bpi_plasma_add_species(bpi_plasma* plasma, const bpi_species_desc* species);
/* preset: "electron", "hydrogen" or "helium4" */
BPI_API bpi_status bpi_plasma_add_preset(bpi_plasma* plasma, const char* preset, double density_m3,
                                         double t_perp_ev, double v_parallel_m_s);
BPI_API size_t bpi_plasma_species_count(const bpi_plasma* plasma);
BPI_API bpi_status bpi_plasma_species_name(const bpi_plasma* plasma, size_t index, const char** name);
BPI_API bpi_status bpi_plasma_quasi_neutrality(const bpi_plasma* plasma, double* residual);
BPI_API bpi_status bpi_plasma_frequency(const bpi_plasma* plasma, size_t index, double* omega);
BPI_API bpi_status bpi_gyro_frequency(const bpi_plasma* plasma, size_t index, double* omega);

/* ---- dispersion ---- */

typedef struct bpi_term_set {
  double plasma;
  double gyro1;
  double gyro2;
  double flow;
  double thermal;
} bpi_term_set;

/* Fills terms[0..species_count) when terms is non-null and capacity suffices. */
BPI_API bpi_status bpi_refractive_index(const bpi_plasma* plasma, double omega, bpi_polarization pol,
                                        bpi_term_set* terms, size_t capacity, double* index,
                                        double* deviation, size_t* warning_count);
BPI_API double bpi_cutoff_density(double omega);
BPI_API bpi_status bpi_z0_series(double zeta_re, double zeta_im, int order, double* out_re, double* out_im);
BPI_API bpi_status bpi_z_fried_conte_series(double zeta_re, double zeta_im, int order, double* out_re,
                                            double* out_im);

typedef struct bpi_chord bpi_chord;

BPI_API bpi_status bpi_chord_create_uniform(double length_m, int quadrature_points, bpi_chord** out);
BPI_API bpi_status bpi_chord_create_gaussian(double length_m, double center_m, double width_m,
                                             int quadrature_points, bpi_chord** out);
BPI_API bpi_status bpi_chord_create_table(double length_m, const double* positions_m, const double* scales,
                                          size_t count, int quadrature_points, bpi_chord** out);
BPI_API bpi_status bpi_chord_set_scale_field(bpi_chord* chord, int on);
BPI_API void bpi_chord_destroy(bpi_chord* chord);

typedef struct bpi_phase_result {
  double phi_p;
  double tau_p;
  double delta_tau_p;
  double delta_tau_p_magnitude;
  double equivalent_length;
  double excess_phase;
} bpi_phase_result;

BPI_API bpi_status bpi_phase_shift(const bpi_plasma* plasma, double omega, bpi_polarization pol,
                                   const bpi_chord* chord, bpi_phase_result* out);

typedef struct bpi_ratio_entry {
  char name[32];
  char expression[96];
  double shorthand;
  double direct;
  int agrees;
} bpi_ratio_entry;

BPI_API bpi_status bpi_ratio_report(double omega, double b0_tesla, double helium_fraction, double flow_energy_ev,
                                    double t_perp_ev, bpi_ratio_entry* entries, size_t capacity, size_t* count);

/* ---- biphoton coincidence model ---- */

typedef struct bpi_interferometer {
  double omega_pump;
  double bandwidth;
  double reflectance;
  double delta_tau;
  double phi0;
  double normalization;
  double filter1_bandwidth; /* 0 = unity filter */
  double filter2_bandwidth;
} bpi_interferometer;

typedef struct bpi_linear_growth {
  double a0;
  double b;
  double tau_p;
  double tau_p_prime;
  double omega_b;
  double b_prefactor;
} bpi_linear_growth;

/* Defaults: R = 0.5, C = 1, unity filters, bandwidth 2 pi / tau0. */
BPI_API bpi_status bpi_interferometer_init(double reflectance, double tau0_s, double pump_wavelength_m,
                                           bpi_interferometer* out);
BPI_API bpi_status bpi_interferometer_visibility(const bpi_interferometer* cfg, double* visibility);

BPI_API bpi_status bpi_gaussian_kernel(double x, double bandwidth, double* out);
BPI_API bpi_status bpi_g2_steady(const bpi_interferometer* cfg, double tau, double tau_p, double tau_p_prime,
                                 double* out);
BPI_API bpi_status bpi_g2_linear_growth(const bpi_interferometer* cfg, const bpi_linear_growth* lg, double t,
                                        double tau, double* out);
BPI_API bpi_status bpi_rc_steady(const bpi_interferometer* cfg, double delta_tau_p, double* out);
BPI_API bpi_status bpi_rc_linear_growth(const bpi_interferometer* cfg, const bpi_linear_growth* lg, double t,
                                        double* out);
BPI_API bpi_status bpi_steady_normalization(const bpi_interferometer* cfg, double* out);
BPI_API bpi_status bpi_rc_windowed_steady(const bpi_interferometer* cfg, double tau_p, double tau_p_prime,
                                          double accumulation_s, double window_s, double relative_tolerance,
                                          double* out);
BPI_API bpi_status bpi_rc_windowed_linear_growth(const bpi_interferometer* cfg, const bpi_linear_growth* lg,
                                                 double accumulation_s, double window_s,
                                                 double relative_tolerance, double* out);
BPI_API bpi_status bpi_dip_scan(const bpi_interferometer* cfg, double delta_tau_p, const double* grid, size_t n,
                                double* rates);
BPI_API bpi_status bpi_lg_dip_scan(const bpi_interferometer* cfg, const bpi_linear_growth* lg, double t,
                                   const double* grid, size_t n, double* rates);
BPI_API bpi_status bpi_lg_dip_center(const bpi_linear_growth* lg, double t, double* center);
BPI_API bpi_status bpi_dip_half_width(const bpi_interferometer* cfg, double* width);

typedef struct bpi_path_phases {
  double phase_a;
  double phase_b;
  double differential;
  double delay_difference;
} bpi_path_phases;

BPI_API bpi_status bpi_path_config_phase(bpi_path_mode mode, const bpi_plasma* plasma, double omega,
                                         const bpi_chord* chord, bpi_path_phases* out);

typedef struct bpi_sensitivity {
  double phi_min;
  double tau_min;
  double length_min;
} bpi_sensitivity;

BPI_API bpi_status bpi_sensitivity_limit(double omega, double eta, double photons, double alpha, double k0,
                                         bpi_sensitivity* out);
BPI_API bpi_status bpi_implied_k0(double phi, double eta, double photons, double alpha, double* k0);

/* ---- Monte Carlo coincidence counting ---- */

typedef struct bpi_event_batch bpi_event_batch;

typedef struct bpi_sampling_options {
  double accumulation_s;
  double accidental_rate_hz;
  size_t sampler_nodes; /* 0 = default */
} bpi_sampling_options;

BPI_API bpi_status bpi_sample_pairs(const bpi_interferometer* cfg, double tau_p, double tau_p_prime, size_t n,
                                    uint64_t seed, const bpi_sampling_options* options, bpi_event_batch** out);
BPI_API void bpi_event_batch_destroy(bpi_event_batch* batch);
BPI_API size_t bpi_event_batch_size(const bpi_event_batch* batch);
BPI_API size_t bpi_event_batch_accidentals(const bpi_event_batch* batch);
BPI_API bpi_status bpi_event_batch_pairs(const bpi_event_batch* batch, double* t1, double* t2, size_t capacity);
BPI_API bpi_status bpi_event_batch_write_csv(const bpi_event_batch* batch, const char* path);
BPI_API bpi_status bpi_count_coincidences(const bpi_event_batch* batch, double window_s, uint64_t* counted);

typedef struct bpi_mc_options {
  uint64_t pairs_per_point;
  uint64_t seed;
  double accumulation_s;
  double window_s; /* 0 = wide enough for every grid point */
  double accidental_rate_hz;
  unsigned workers; /* 0 = hardware concurrency */
  int64_t events_index; /* grid index whose batch is returned, -1 for none */
} bpi_mc_options;

BPI_API void bpi_mc_options_init(bpi_mc_options* options);

/* rates, counted and expected have n entries; events_out may be null. */
BPI_API bpi_status bpi_mc_dip_scan(const bpi_interferometer* cfg, double delta_tau_p, const double* grid, size_t n,
                                   const bpi_mc_options* options, double* rates, uint64_t* counted,
                                   double* expected, double* window_used, bpi_event_batch** events_out);

/* ---- inference ---- */

typedef struct bpi_fit_options {
  int fix_bandwidth;
  double fixed_bandwidth;
  int max_iterations;
  double step_tolerance;
} bpi_fit_options;

BPI_API void bpi_fit_options_init(bpi_fit_options* options);

/* Parameter order in estimate/standard_error/covariance: C, V, delta_tau_p, bandwidth. */
typedef struct bpi_fit_result {
  double estimate[4];
  double standard_error[4];
  double covariance[16];
  double residual_norm;
  double gradient_norm;
  int converged;
  int iterations;
  int warning_count;
} bpi_fit_result;

BPI_API bpi_status bpi_fit_dip_curve(const double* delays, const double* rates, size_t n,
                                     const bpi_fit_options* options, bpi_fit_result* out);
BPI_API bpi_status bpi_fit_dip_counts(const double* delays, const uint64_t* counts, size_t n,
                                      const bpi_fit_options* options, bpi_fit_result* out);

typedef struct bpi_scaling_row {
  uint64_t pairs_per_point;
  uint64_t trials;
  uint64_t failures;
  double std_dev;
  double bias;
  double mean_standard_error;
  double bias_standard_error;
} bpi_scaling_row;

BPI_API bpi_status bpi_precision_scaling(const bpi_interferometer* cfg, double delta_tau_p, const double* grid,
                                         size_t n_grid, const uint64_t* pairs_list, size_t n_rows, uint64_t trials,
                                         uint64_t seed, double accumulation_s, double window_s, unsigned workers,
                                         bpi_scaling_row* rows, double* slope, double* slope_error);

BPI_API bpi_status bpi_delay_to_density(double delay_s, double omega, double length_m, double* density);
BPI_API bpi_status bpi_density_to_delay(double density_m3, double omega, double length_m, double* delay);
BPI_API const char* bpi_density_inversion_assumption(void);

/* ---- reference magnitude checks ---- */

typedef struct bpi_reference_check {
  char name[96];
  double computed;
  double expected;
  double lower;
  double upper;
  int passed;
} bpi_reference_check;

BPI_API bpi_status bpi_reference_checks(bpi_reference_check* checks, size_t capacity, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* BPI_BPI_H */
