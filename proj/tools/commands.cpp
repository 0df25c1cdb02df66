#include "commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <variant>
#include <vector>

namespace bpi_cli {

int exit_code_for(bpi_status status) {
  switch (status) {
    case BPI_OK: return exit_ok;
    case BPI_ERR_INVALID_ARGUMENT:
    case BPI_ERR_NULL_POINTER:
    case BPI_ERR_BUFFER_TOO_SMALL:
    case BPI_ERR_IO: return exit_validation;
    default: return exit_numerical;
  }
}

namespace {

using nlohmann::json;

void check(bpi_status status, const char* module) {
  if (status != BPI_OK) {
    throw CommandError(exit_code_for(status), std::string(module) + ": " + bpi_last_error());
  }
}

struct PlasmaDeleter {
  void operator()(bpi_plasma* p) const { bpi_plasma_destroy(p); }
};
struct ChordDeleter {
  void operator()(bpi_chord* c) const { bpi_chord_destroy(c); }
};
struct BatchDeleter {
  void operator()(bpi_event_batch* b) const { bpi_event_batch_destroy(b); }
};
using PlasmaPtr = std::unique_ptr<bpi_plasma, PlasmaDeleter>;
using ChordPtr = std::unique_ptr<bpi_chord, ChordDeleter>;
using BatchPtr = std::unique_ptr<bpi_event_batch, BatchDeleter>;

using Cell = std::variant<double, std::uint64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json meta = json::object();
};

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return *u;
  return std::get<std::string>(c);
}

void write_table(std::ostream& os, const Table& t, const std::string& format, const std::string& scenario) {
  if (format == "json") {
    json doc;
    doc["scenario"] = scenario;
    doc["meta"] = t.meta;
    doc["columns"] = t.columns;
    json rows = json::array();
    for (const auto& r : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(r[i]);
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << '\n';
  }
}

void emit(const Table& t, const std::string& path, const std::string& format, const std::string& scenario) {
  if (path.empty()) {
    write_table(std::cout, t, format, scenario);
    return;
  }
  std::ofstream os(path);
  if (!os) throw CommandError(exit_validation, "output: cannot open " + path);
  write_table(os, t, format, scenario);
  if (!os) throw CommandError(exit_validation, "output: write failed for " + path);
}

/// CSV metadata goes to stdout when data went to a file, else to stderr.
void summarize(const Table& t, const std::string& path, const std::string& format) {
  if (format == "json" || t.meta.empty()) return;
  std::ostream& os = path.empty() ? std::cerr : std::cout;
  for (auto it = t.meta.begin(); it != t.meta.end(); ++it) os << it.key() << " = " << it.value().dump() << '\n';
}

struct Context {
  const RunConfig& cfg;
  std::string out;
  std::string format;

  double probe_omega() const { return bpi_wavelength_to_omega(cfg.probe.wavelength_m); }

  PlasmaPtr plasma() const {
    bpi_plasma* raw = nullptr;
    check(bpi_plasma_create(cfg.plasma.b0_tesla, &raw), "plasma-core");
    PlasmaPtr p(raw);
    for (const auto& s : cfg.plasma.species) {
      if (!s.preset.empty()) {
        check(bpi_plasma_add_preset(p.get(), s.preset.c_str(), s.density_m3, s.t_perp_ev, s.v_parallel_m_s),
              "plasma-core");
      } else {
        const bpi_species_desc d{s.name.c_str(), s.charge_number, s.mass_kg, s.density_m3, s.t_perp_ev,
                                 s.v_parallel_m_s};
        check(bpi_plasma_add_species(p.get(), &d), "plasma-core");
      }
    }
    return p;
  }

  ChordPtr chord() const {
    const auto& c = cfg.chord;
    bpi_chord* raw = nullptr;
    if (c.profile == "uniform") {
      check(bpi_chord_create_uniform(c.length_m, c.quadrature_points, &raw), "dispersion");
    } else if (c.profile == "gaussian") {
      check(bpi_chord_create_gaussian(c.length_m, c.center_m, c.width_m, c.quadrature_points, &raw), "dispersion");
    } else {
      check(bpi_chord_create_table(c.length_m, c.positions_m.data(), c.scales.data(), c.positions_m.size(),
                                   c.quadrature_points, &raw),
            "dispersion");
    }
    ChordPtr p(raw);
    check(bpi_chord_set_scale_field(p.get(), c.scale_field ? 1 : 0), "dispersion");
    return p;
  }

  bpi_interferometer interferometer() const {
    const auto& i = cfg.interferometer;
    const double pump = i.pump_wavelength_m.value_or(0.5 * cfg.probe.wavelength_m);
    const double pi = std::acos(-1.0);
    const double tau0 = i.tau0_s ? *i.tau0_s : (i.bandwidth_rad_s ? 2.0 * pi / *i.bandwidth_rad_s : 10e-15);
    bpi_interferometer out;
    check(bpi_interferometer_init(i.reflectance, tau0, pump, &out), "biphoton-model");
    if (i.bandwidth_rad_s) out.bandwidth = *i.bandwidth_rad_s;
    out.phi0 = i.phi0_rad;
    out.normalization = i.normalization;
    out.filter1_bandwidth = i.filter1_bandwidth_rad_s;
    out.filter2_bandwidth = i.filter2_bandwidth_rad_s;
    double v = 0.0;
    check(bpi_interferometer_visibility(&out, &v), "biphoton-model");
    return out;
  }

  /// Explicit value, else the path-configuration delay of the plasma chord.
  double delta_tau_p() const {
    if (cfg.interferometer.delta_tau_p_s) return *cfg.interferometer.delta_tau_p_s;
    if (!cfg.plasma.present) return 0.0;
    const auto p = plasma();
    const auto c = chord();
    bpi_path_phases ph;
    check(bpi_path_config_phase(cfg.probe.path_mode, p.get(), probe_omega(), c.get(), &ph), "dispersion");
    return ph.delay_difference;
  }

  std::vector<double> grid() const {
    const auto& g = cfg.interferometer.grid;
    std::vector<double> out(g.points);
    if (g.points == 1) {
      out[0] = g.start_s;
      return out;
    }
    const double step = (g.stop_s - g.start_s) / static_cast<double>(g.points - 1);
    for (std::size_t k = 0; k < g.points; ++k) out[k] = g.start_s + step * static_cast<double>(k);
    out.back() = g.stop_s;
    return out;
  }

  bpi_fit_options fit_options(const bpi_interferometer& ifm) const {
    bpi_fit_options o;
    bpi_fit_options_init(&o);
    o.fix_bandwidth = cfg.fit.fix_bandwidth ? 1 : 0;
    o.fixed_bandwidth = ifm.bandwidth;
    o.max_iterations = cfg.fit.max_iterations;
    o.step_tolerance = cfg.fit.step_tolerance;
    return o;
  }
};

const char* term_names[] = {"plasma", "gyro1", "gyro2", "flow", "thermal"};

int cmd_dispersion(const Context& ctx) {
  Table t;
  t.columns = {"species", "term", "value"};
  const auto p = ctx.plasma();
  const std::size_t n = bpi_plasma_species_count(p.get());
  const double omega = ctx.probe_omega();
  std::vector<bpi_term_set> terms(n);
  double index = 0, deviation = 0;
  std::size_t warnings = 0;
  check(bpi_refractive_index(p.get(), omega, ctx.cfg.probe.polarization, terms.data(), n, &index, &deviation,
                             &warnings),
        "dispersion");
  if (n == 0) {
    t.rows.push_back({std::string("vacuum"), std::string("index"), index});
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const char* name = nullptr;
      check(bpi_plasma_species_name(p.get(), i, &name), "plasma-core");
      const double v[] = {terms[i].plasma, terms[i].gyro1, terms[i].gyro2, terms[i].flow, terms[i].thermal};
      double sum = 0.0;
      for (int k = 0; k < 5; ++k) {
        t.rows.push_back({std::string(name), std::string(term_names[k]), v[k]});
        sum += v[k];
      }
      t.rows.push_back({std::string(name), std::string("total"), sum});
    }
    t.rows.push_back({std::string("all"), std::string("deviation"), deviation});
    t.rows.push_back({std::string("all"), std::string("index"), index});
  }
  t.meta["polarization"] = ctx.cfg.probe.polarization == BPI_POL_R ? "R" : "L";
  t.meta["omega_rad_s"] = omega;
  t.meta["cutoff_density_m3"] = bpi_cutoff_density(omega);
  t.meta["regime_warnings"] = warnings;

  if (ctx.cfg.ratio.present) {
    bpi_ratio_entry entries[16];
    std::size_t count = 0;
    const auto& r = ctx.cfg.ratio;
    check(bpi_ratio_report(omega, ctx.cfg.plasma.b0_tesla, r.helium_fraction, r.flow_energy_ev, r.t_perp_ev, entries,
                           16, &count),
          "dispersion");
    json report = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      const std::string name = entries[i].name;
      t.rows.push_back({std::string("ratio_report"), name + "_shorthand", entries[i].shorthand});
      t.rows.push_back({std::string("ratio_report"), name + "_direct", entries[i].direct});
      report.push_back({{"name", name},
                        {"expression", entries[i].expression},
                        {"shorthand", entries[i].shorthand},
                        {"direct", entries[i].direct},
                        {"agrees", entries[i].agrees != 0}});
    }
    t.meta["ratio_report"] = report;
  }
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(t, ctx.out, ctx.format);
  return exit_ok;
}

int cmd_phase(const Context& ctx) {
  const auto p = ctx.plasma();
  const auto c = ctx.chord();
  const double omega = ctx.probe_omega();
  bpi_phase_result r;
  check(bpi_phase_shift(p.get(), omega, ctx.cfg.probe.polarization, c.get(), &r), "dispersion");
  bpi_path_phases ph;
  check(bpi_path_config_phase(ctx.cfg.probe.path_mode, p.get(), omega, c.get(), &ph), "dispersion");
  Table t;
  t.columns = {"quantity", "value"};
  const std::pair<const char*, double> rows[] = {
      {"phi_p_rad", r.phi_p},
      {"tau_p_s", r.tau_p},
      {"delta_tau_p_s", r.delta_tau_p},
      {"delta_tau_p_magnitude_s", r.delta_tau_p_magnitude},
      {"equivalent_length_m", r.equivalent_length},
      {"excess_phase_rad", r.excess_phase},
      {"path_phase_a_rad", ph.phase_a},
      {"path_phase_b_rad", ph.phase_b},
      {"path_differential_rad", ph.differential},
      {"path_delay_difference_s", ph.delay_difference},
  };
  for (const auto& [k, v] : rows) t.rows.push_back({std::string(k), v});
  t.meta["density_inversion"] = bpi_density_inversion_assumption();
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(t, ctx.out, ctx.format);
  return exit_ok;
}

Table curve_table(const std::vector<double>& grid, const std::vector<double>& rates) {
  Table t;
  t.columns = {"delta_tau_s", "rc_normalized"};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], rates[i]});
  return t;
}

int cmd_dip(const Context& ctx) {
  const auto ifm = ctx.interferometer();
  const double dtp = ctx.delta_tau_p();
  const auto grid = ctx.grid();
  std::vector<double> rates(grid.size());
  check(bpi_dip_scan(&ifm, dtp, grid.data(), grid.size(), rates.data()), "biphoton-model");
  auto t = curve_table(grid, rates);
  double v = 0, half = 0;
  check(bpi_interferometer_visibility(&ifm, &v), "biphoton-model");
  check(bpi_dip_half_width(&ifm, &half), "biphoton-model");
  t.meta["visibility"] = v;
  t.meta["delta_tau_p_s"] = dtp;
  t.meta["half_width_s"] = half;
  t.meta["bandwidth_rad_s"] = ifm.bandwidth;
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(t, ctx.out, ctx.format);
  return exit_ok;
}

int cmd_lg_dip(const Context& ctx) {
  const auto ifm = ctx.interferometer();
  const auto& l = ctx.cfg.linear_growth;
  const bpi_linear_growth lg{l.a0, l.b, l.tau_p_s, l.tau_p_prime_s, l.omega_b_rad_s, l.b_prefactor};
  const auto grid = ctx.grid();
  std::vector<double> rates(grid.size());
  check(bpi_lg_dip_scan(&ifm, &lg, l.t_s, grid.data(), grid.size(), rates.data()), "biphoton-model");
  auto t = curve_table(grid, rates);
  double center = 0;
  check(bpi_lg_dip_center(&lg, l.t_s, &center), "biphoton-model");
  t.meta["dip_center_s"] = center;
  t.meta["t_s"] = l.t_s;
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(t, ctx.out, ctx.format);
  return exit_ok;
}

Table fit_table(const bpi_fit_result& fit) {
  Table t;
  t.columns = {"parameter", "estimate", "standard_error"};
  const char* names[] = {"C", "V", "delta_tau_p_s", "bandwidth_rad_s"};
  for (int i = 0; i < 4; ++i) t.rows.push_back({std::string(names[i]), fit.estimate[i], fit.standard_error[i]});
  t.meta["converged"] = fit.converged != 0;
  t.meta["iterations"] = fit.iterations;
  t.meta["residual_norm"] = fit.residual_norm;
  t.meta["gradient_norm"] = fit.gradient_norm;
  t.meta["warnings"] = fit.warning_count;
  t.meta["covariance"] = std::vector<double>(fit.covariance, fit.covariance + 16);
  return t;
}

std::string companion(const std::string& out, const std::string& suffix) { return out + suffix; }

int cmd_mc(const Context& ctx) {
  if (ctx.out.empty()) throw CommandError(exit_validation, "mc: --out is required (companion files derive from it)");
  const auto ifm = ctx.interferometer();
  const double dtp = ctx.delta_tau_p();
  const auto grid = ctx.grid();
  const auto& m = ctx.cfg.mc;
  bpi_mc_options opts;
  bpi_mc_options_init(&opts);
  opts.pairs_per_point = m.pairs_per_point;
  opts.seed = m.seed;
  opts.accumulation_s = m.accumulation_s;
  opts.window_s = m.window_s;
  opts.accidental_rate_hz = m.accidental_rate_hz;
  opts.workers = m.workers;
  opts.events_index = m.events_index;

  std::vector<double> rates(grid.size()), expected(grid.size());
  std::vector<std::uint64_t> counted(grid.size());
  double window = 0;
  bpi_event_batch* raw = nullptr;
  check(bpi_mc_dip_scan(&ifm, dtp, grid.data(), grid.size(), &opts, rates.data(), counted.data(), expected.data(),
                        &window, m.events_index >= 0 ? &raw : nullptr),
        "coincidence-mc");
  BatchPtr events(raw);

  auto curve = curve_table(grid, rates);
  curve.meta["seed"] = m.seed;
  curve.meta["pairs_per_point"] = m.pairs_per_point;
  curve.meta["window_s"] = window;
  curve.meta["delta_tau_p_s"] = dtp;
  emit(curve, ctx.out, ctx.format, ctx.cfg.scenario);

  Table counts;
  counts.columns = {"delta_tau_s", "counted", "expected"};
  for (std::size_t i = 0; i < grid.size(); ++i) counts.rows.push_back({grid[i], counted[i], expected[i]});
  emit(counts, companion(ctx.out, ".counts.csv"), "csv", ctx.cfg.scenario);

  if (events) check(bpi_event_batch_write_csv(events.get(), companion(ctx.out, ".events.csv").c_str()), "coincidence-mc");

  bpi_fit_result fit;
  const auto fo = ctx.fit_options(ifm);
  const bpi_status fs = bpi_fit_dip_counts(grid.data(), counted.data(), grid.size(), &fo, &fit);
  if (fs != BPI_OK) {
    std::cerr << "warning: inference: " << bpi_last_error() << '\n';
    summarize(curve, ctx.out, ctx.format);
    return exit_numerical;
  }
  const auto report = fit_table(fit);
  emit(report, companion(ctx.out, ctx.format == "json" ? ".fit.json" : ".fit.csv"), ctx.format, ctx.cfg.scenario);
  summarize(curve, ctx.out, ctx.format);
  summarize(report, ctx.out, ctx.format);
  return exit_ok;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw CommandError(exit_validation, where + ": not a number: " + s);
  return v;
}

int cmd_fit(const Context& ctx, const std::string& input) {
  if (input.empty()) throw CommandError(exit_validation, "fit: --input PATH is required");
  std::ifstream in(input);
  if (!in) throw CommandError(exit_validation, "fit: cannot open " + input);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool counts = line == "delta_tau_s,counted,expected";
  if (!counts && line != "delta_tau_s,rc_normalized") {
    throw CommandError(exit_validation, "fit: " + input + ": unrecognised header '" + line + "'");
  }
  std::vector<double> delays, rates;
  std::vector<std::uint64_t> counted;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    const std::string where = input + ":" + std::to_string(row);
    if (cells.size() != (counts ? 3u : 2u)) throw CommandError(exit_validation, where + ": wrong column count");
    delays.push_back(parse_double(cells[0], where));
    if (counts) {
      char* end = nullptr;
      const auto c = std::strtoull(cells[1].c_str(), &end, 10);
      if (end == cells[1].c_str() || *end != '\0') throw CommandError(exit_validation, where + ": bad count");
      counted.push_back(c);
    } else {
      rates.push_back(parse_double(cells[1], where));
    }
  }
  const auto ifm = ctx.interferometer();
  const auto fo = ctx.fit_options(ifm);
  bpi_fit_result fit;
  if (counts) {
    check(bpi_fit_dip_counts(delays.data(), counted.data(), delays.size(), &fo, &fit), "inference");
  } else {
    check(bpi_fit_dip_curve(delays.data(), rates.data(), delays.size(), &fo, &fit), "inference");
  }
  const auto report = fit_table(fit);
  emit(report, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(report, ctx.out, ctx.format);
  return exit_ok;
}

int cmd_scaling(const Context& ctx) {
  const auto ifm = ctx.interferometer();
  const double dtp = ctx.delta_tau_p();
  const auto grid = ctx.grid();
  const auto& s = ctx.cfg.scaling;
  std::vector<bpi_scaling_row> rows(s.pairs_list.size());
  double slope = 0, slope_error = 0;
  check(bpi_precision_scaling(&ifm, dtp, grid.data(), grid.size(), s.pairs_list.data(), s.pairs_list.size(),
                              s.trials, ctx.cfg.mc.seed, ctx.cfg.mc.accumulation_s, ctx.cfg.mc.window_s,
                              ctx.cfg.mc.workers, rows.data(), &slope, &slope_error),
        "inference");
  Table t;
  t.columns = {"pairs_per_point", "trials", "failures", "std_dev_s", "bias_s", "mean_standard_error_s",
               "bias_standard_error_s"};
  for (const auto& r : rows) {
    t.rows.push_back({static_cast<std::uint64_t>(r.pairs_per_point), static_cast<std::uint64_t>(r.trials),
                      static_cast<std::uint64_t>(r.failures), r.std_dev, r.bias, r.mean_standard_error,
                      r.bias_standard_error});
  }
  t.meta["slope"] = slope;
  t.meta["slope_error"] = slope_error;
  t.meta["seed"] = ctx.cfg.mc.seed;
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(t, ctx.out, ctx.format);
  return exit_ok;
}

int cmd_sensitivity(const Context& ctx) {
  const auto& q = ctx.cfg.sensitivity;
  const double omega = ctx.probe_omega();
  bpi_sensitivity lim;
  check(bpi_sensitivity_limit(omega, q.eta, q.photons, q.alpha, q.k0, &lim), "biphoton-model");
  double k0_pump = 0, k0_probe = 0;
  check(bpi_implied_k0(2.0 * omega * q.tau_p_s, q.eta, q.photons, q.alpha, &k0_pump), "biphoton-model");
  check(bpi_implied_k0(omega * q.tau_p_s, q.eta, q.photons, q.alpha, &k0_probe), "biphoton-model");
  Table t;
  t.columns = {"quantity", "value"};
  t.rows.push_back({std::string("phi_min_rad"), lim.phi_min});
  t.rows.push_back({std::string("tau_min_s"), lim.tau_min});
  t.rows.push_back({std::string("length_min_m"), lim.length_min});
  t.rows.push_back({std::string("implied_k0_pump"), k0_pump});
  t.rows.push_back({std::string("implied_k0_probe"), k0_probe});
  t.rows.push_back({std::string("implied_k0_pump_over_k0"), k0_pump / q.k0});
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  return exit_ok;
}

int cmd_reference_report(const Context& ctx) {
  std::vector<bpi_reference_check> checks(64);
  std::size_t count = 0;
  check(bpi_reference_checks(checks.data(), checks.size(), &count), "reference");
  Table t;
  t.columns = {"name", "computed", "expected", "lower", "upper", "passed"};
  bool all = true;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& c = checks[i];
    t.rows.push_back({std::string(c.name), c.computed, c.expected, c.lower, c.upper,
                      std::string(c.passed ? "PASS" : "FAIL")});
    all = all && c.passed;
  }
  t.meta["all_passed"] = all;
  emit(t, ctx.out, ctx.format, ctx.cfg.scenario);
  summarize(t, ctx.out, ctx.format);
  return all ? exit_ok : exit_report_failure;
}

}  // namespace

int run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& options) {
  Context ctx{cfg, options.out.empty() ? cfg.outputs.path : options.out,
              options.format.empty() ? cfg.outputs.format : options.format};
  if (ctx.format != "csv" && ctx.format != "json") {
    throw CommandError(exit_validation, "--format: expected csv or json");
  }
  if (name == "dispersion") return cmd_dispersion(ctx);
  if (name == "phase") return cmd_phase(ctx);
  if (name == "dip") return cmd_dip(ctx);
  if (name == "lg-dip") return cmd_lg_dip(ctx);
  if (name == "mc") return cmd_mc(ctx);
  if (name == "fit") return cmd_fit(ctx, options.input);
  if (name == "scaling") return cmd_scaling(ctx);
  if (name == "sensitivity") return cmd_sensitivity(ctx);
  if (name == "reference-report") return cmd_reference_report(ctx);
  throw CommandError(exit_validation, "unknown command: " + name);
}

}  // namespace bpi_cli
