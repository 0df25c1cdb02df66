#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace bpi_cli {

namespace {

using nlohmann::json;

/// One JSON object being consumed; every key read is recorded so leftovers
/// can be reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail("", "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(where(key) + ": " + msg);
  }

  std::string where(const std::string& key) const {
    if (key.empty()) return path_.empty() ? std::string("<root>") : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(key, "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return number(key, 0.0);
  }

  template <class Int>
  Int integer(const std::string& key, Int fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(key, "expected an integer");
    if constexpr (std::is_unsigned_v<Int>) {
      if (v->is_number_unsigned()) return static_cast<Int>(v->get<std::uint64_t>());
      if (v->get<std::int64_t>() < 0) fail(key, "must be non-negative");
      return static_cast<Int>(v->get<std::int64_t>());
    } else {
      return static_cast<Int>(v->get<std::int64_t>());
    }
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key, "expected true or false");
    return v->get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key, "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json* v = find(key);
    if (!v) return {};
    if (!v->is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : *v) {
      if (!x.is_number()) fail(key, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::optional<Section> child(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    return Section(*v, where(key));
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) fail(it.key(), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const Section& s, const std::string& key, const std::string& msg) {
  if (!ok) s.fail(key, msg);
}

bpi_polarization parse_polarization(Section& s, const std::string& key) {
  const std::string v = s.text(key, "R");
  if (v == "R") return BPI_POL_R;
  if (v == "L") return BPI_POL_L;
  s.fail(key, "expected \"R\" or \"L\"");
}

bpi_path_mode parse_path_mode(Section& s, const std::string& key) {
  const std::string v = s.text(key, "S_R");
  if (v == "S_R") return BPI_PATH_S_R;
  if (v == "S_L") return BPI_PATH_S_L;
  if (v == "D_sym_R") return BPI_PATH_D_SYM_R;
  if (v == "D_sym_L") return BPI_PATH_D_SYM_L;
  if (v == "D_antisym") return BPI_PATH_D_ANTISYM;
  s.fail(key, "expected one of S_R, S_L, D_sym_R, D_sym_L, D_antisym");
}

SpeciesConfig parse_species(Section s) {
  SpeciesConfig sp;
  sp.preset = s.text("preset", "");
  sp.density_m3 = s.number("density_m3", 0.0);
  sp.t_perp_ev = s.number("t_perp_ev", 0.0);
  sp.v_parallel_m_s = s.number("v_parallel_m_s", 0.0);
  require(sp.density_m3 >= 0.0, s, "density_m3", "must be non-negative");
  require(sp.t_perp_ev >= 0.0, s, "t_perp_ev", "must be non-negative");
  if (sp.preset.empty()) {
    require(s.has("name") && s.has("charge_number") && s.has("mass_kg"), s, "",
            "needs either preset or name, charge_number and mass_kg");
    sp.name = s.text("name", "");
    sp.charge_number = s.integer<int>("charge_number", 0);
    sp.mass_kg = s.number("mass_kg", 0.0);
    require(sp.charge_number != 0, s, "charge_number", "must be non-zero");
    require(sp.mass_kg > 0.0, s, "mass_kg", "must be positive");
  } else {
    require(sp.preset == "electron" || sp.preset == "hydrogen" || sp.preset == "helium4", s, "preset",
            "expected electron, hydrogen or helium4");
    require(!s.has("name") && !s.has("charge_number") && !s.has("mass_kg"), s, "preset",
            "a preset cannot be combined with name, charge_number or mass_kg");
  }
  s.finish();
  return sp;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  Section root(doc, "");
  cfg.scenario = root.text("scenario", cfg.scenario);

  if (auto s = root.child("plasma")) {
    cfg.plasma.present = true;
    cfg.plasma.b0_tesla = s->number("b0_tesla", 0.0);
    if (const json* list = s->find("species")) {
      if (!list->is_array()) s->fail("species", "expected an array of species objects");
      for (std::size_t i = 0; i < list->size(); ++i) {
        cfg.plasma.species.push_back(parse_species(Section((*list)[i], s->where("species") + "[" + std::to_string(i) + "]")));
      }
    }
    s->finish();
  }

  if (auto s = root.child("probe")) {
    cfg.probe.wavelength_m = s->number("wavelength_um", 1.0) * 1e-6;
    require(cfg.probe.wavelength_m > 0.0, *s, "wavelength_um", "must be positive");
    cfg.probe.polarization = parse_polarization(*s, "polarization");
    cfg.probe.path_mode = parse_path_mode(*s, "path_mode");
    s->finish();
  }

  if (auto s = root.child("chord")) {
    auto& c = cfg.chord;
    c.profile = s->text("profile", c.profile);
    require(c.profile == "uniform" || c.profile == "gaussian" || c.profile == "table", *s, "profile",
            "expected uniform, gaussian or table");
    c.length_m = s->number("length_m", c.length_m);
    require(c.length_m >= 0.0, *s, "length_m", "must be non-negative");
    c.center_m = s->number("center_m", 0.5 * c.length_m);
    c.width_m = s->number("width_m", c.width_m);
    c.positions_m = s->numbers("positions_m");
    c.scales = s->numbers("scales");
    c.quadrature_points = s->integer<int>("quadrature_points", c.quadrature_points);
    c.scale_field = s->boolean("scale_field", c.scale_field);
    require(c.quadrature_points >= 3 && c.quadrature_points % 2 == 1, *s, "quadrature_points",
            "must be odd and at least 3");
    if (c.profile == "gaussian") require(c.width_m > 0.0, *s, "width_m", "must be positive");
    if (c.profile == "table") {
      require(c.positions_m.size() >= 2, *s, "positions_m", "table profile needs at least two nodes");
      require(c.positions_m.size() == c.scales.size(), *s, "scales", "must match positions_m in length");
    }
    s->finish();
  }

  if (auto s = root.child("interferometer")) {
    auto& i = cfg.interferometer;
    i.reflectance = s->number("reflectance", i.reflectance);
    require(i.reflectance >= 0.0 && i.reflectance <= 1.0, *s, "reflectance", "must lie in [0, 1]");
    if (auto v = s->optional_number("tau0_fs")) i.tau0_s = *v * 1e-15;
    i.bandwidth_rad_s = s->optional_number("bandwidth_rad_s");
    require(!(i.tau0_s && i.bandwidth_rad_s), *s, "bandwidth_rad_s", "give either tau0_fs or bandwidth_rad_s");
    if (i.tau0_s) require(*i.tau0_s > 0.0, *s, "tau0_fs", "must be positive");
    if (i.bandwidth_rad_s) require(*i.bandwidth_rad_s > 0.0, *s, "bandwidth_rad_s", "must be positive");
    if (auto v = s->optional_number("pump_wavelength_um")) {
      require(*v > 0.0, *s, "pump_wavelength_um", "must be positive");
      i.pump_wavelength_m = *v * 1e-6;
    }
    i.phi0_rad = s->number("phi0_rad", 0.0);
    i.normalization = s->number("normalization", 1.0);
    require(i.normalization > 0.0, *s, "normalization", "must be positive");
    i.filter1_bandwidth_rad_s = s->number("filter1_bandwidth_rad_s", 0.0);
    i.filter2_bandwidth_rad_s = s->number("filter2_bandwidth_rad_s", 0.0);
    require(i.filter1_bandwidth_rad_s >= 0.0, *s, "filter1_bandwidth_rad_s", "must be non-negative");
    require(i.filter2_bandwidth_rad_s >= 0.0, *s, "filter2_bandwidth_rad_s", "must be non-negative");
    if (auto v = s->optional_number("delta_tau_p_fs")) i.delta_tau_p_s = *v * 1e-15;
    if (auto g = s->child("grid")) {
      i.grid.start_s = g->number("start_fs", -10.0) * 1e-15;
      i.grid.stop_s = g->number("stop_fs", 10.0) * 1e-15;
      i.grid.points = g->integer<std::size_t>("points", 201);
      require(i.grid.points >= 1, *g, "points", "must be at least 1");
      require(i.grid.stop_s >= i.grid.start_s, *g, "stop_fs", "must not be below start_fs");
      g->finish();
    }
    s->finish();
  }

  if (auto s = root.child("ratio")) {
    auto& r = cfg.ratio;
    r.present = true;
    r.helium_fraction = s->number("helium_fraction", r.helium_fraction);
    r.flow_energy_ev = s->number("flow_energy_ev", r.flow_energy_ev);
    r.t_perp_ev = s->number("t_perp_ev", r.t_perp_ev);
    require(r.helium_fraction >= 0.0 && r.helium_fraction <= 1.0, *s, "helium_fraction", "must lie in [0, 1]");
    require(r.flow_energy_ev >= 0.0, *s, "flow_energy_ev", "must be non-negative");
    require(r.t_perp_ev >= 0.0, *s, "t_perp_ev", "must be non-negative");
    s->finish();
  }

  if (auto s = root.child("linear_growth")) {
    auto& l = cfg.linear_growth;
    l.a0 = s->number("a0", 0.0);
    l.b = s->number("b", 0.0);
    l.tau_p_s = s->number("tau_p_fs", 0.0) * 1e-15;
    l.tau_p_prime_s = s->number("tau_p_prime_fs", 0.0) * 1e-15;
    l.omega_b_rad_s = s->number("omega_b_rad_s", 0.0);
    l.b_prefactor = s->number("b_prefactor", 1.0);
    l.t_s = s->number("t_fs", 0.0) * 1e-15;
    require(std::abs(l.a0) < 1.0, *s, "a0", "must satisfy |a0| < 1");
    require(std::abs(l.b) < 2.0, *s, "b", "must satisfy |b| < 2");
    s->finish();
  }

  if (auto s = root.child("mc")) {
    auto& m = cfg.mc;
    m.pairs_per_point = s->integer<std::uint64_t>("pairs_per_point", m.pairs_per_point);
    require(m.pairs_per_point >= 1, *s, "pairs_per_point", "must be at least 1");
    m.seed = s->integer<std::uint64_t>("seed", m.seed);
    m.accumulation_s = s->number("accumulation_ns", 1.0) * 1e-9;
    require(m.accumulation_s > 0.0, *s, "accumulation_ns", "must be positive");
    m.window_s = s->number("window_fs", 0.0) * 1e-15;
    require(m.window_s >= 0.0, *s, "window_fs", "must be non-negative");
    m.accidental_rate_hz = s->number("accidental_rate_hz", 0.0);
    require(m.accidental_rate_hz >= 0.0, *s, "accidental_rate_hz", "must be non-negative");
    m.workers = s->integer<unsigned>("workers", 0u);
    m.events_index = s->integer<std::int64_t>("events_index", -1);
    s->finish();
  }

  if (auto s = root.child("fit")) {
    cfg.fit.fix_bandwidth = s->boolean("fix_bandwidth", false);
    cfg.fit.max_iterations = s->integer<int>("max_iterations", 200);
    cfg.fit.step_tolerance = s->number("step_tolerance", 1e-10);
    require(cfg.fit.max_iterations >= 1, *s, "max_iterations", "must be at least 1");
    require(cfg.fit.step_tolerance > 0.0, *s, "step_tolerance", "must be positive");
    s->finish();
  }

  if (auto s = root.child("scaling")) {
    if (const json* list = s->find("pairs_list")) {
      if (!list->is_array() || list->empty()) s->fail("pairs_list", "expected a non-empty array of integers");
      cfg.scaling.pairs_list.clear();
      for (const auto& v : *list) {
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
          s->fail("pairs_list", "expected positive integers");
        }
        cfg.scaling.pairs_list.push_back(v.get<std::uint64_t>());
      }
    }
    cfg.scaling.trials = s->integer<std::uint64_t>("trials", cfg.scaling.trials);
    require(cfg.scaling.trials >= 2, *s, "trials", "must be at least 2");
    s->finish();
  }

  if (auto s = root.child("sensitivity")) {
    auto& q = cfg.sensitivity;
    q.eta = s->number("eta", q.eta);
    q.photons = s->number("photons", q.photons);
    q.alpha = s->number("alpha", q.alpha);
    q.k0 = s->number("k0", q.k0);
    q.tau_p_s = s->number("tau_p_fs", 10.0) * 1e-15;
    require(q.eta > 0.0 && q.eta <= 1.0, *s, "eta", "must lie in (0, 1]");
    require(q.alpha == -0.5 || q.alpha == -1.0, *s, "alpha", "must be -0.5 or -1");
    require(q.k0 > 0.0, *s, "k0", "must be positive");
    require(q.eta * q.photons >= 1.0, *s, "photons", "eta x photons must be at least 1");
    s->finish();
  }

  if (auto s = root.child("outputs")) {
    cfg.outputs.path = s->text("path", "");
    cfg.outputs.format = s->text("format", "csv");
    require(cfg.outputs.format == "csv" || cfg.outputs.format == "json", *s, "format", "expected csv or json");
    s->finish();
  }

  root.finish();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open configuration file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace bpi_cli
