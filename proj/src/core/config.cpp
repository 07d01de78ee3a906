#include "core/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"

#include "core/constants.hpp"
#include "core/errors.hpp"

namespace cpneq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& j, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(std::string(where) + ": unknown key \"" + item.key() + "\"");
  }
}

const json* opt_member(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double num(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

double opt_num(const json& j, const char* key, double dflt,
               const char* where) {
  const json* v = opt_member(j, key);
  return v ? num(*v, std::string(where) + "." + key) : dflt;
}

int opt_int(const json& j, const char* key, int dflt, const char* where) {
  const json* v = opt_member(j, key);
  if (!v) return dflt;
  if (!v->is_number_integer())
    fail(std::string(where) + "." + key + ": expected an integer");
  return v->get<int>();
}

bool opt_bool(const json& j, const char* key, bool dflt, const char* where) {
  const json* v = opt_member(j, key);
  if (!v) return dflt;
  if (!v->is_boolean())
    fail(std::string(where) + "." + key + ": expected a boolean");
  return v->get<bool>();
}

std::string opt_str(const json& j, const char* key, const std::string& dflt,
                    const char* where) {
  const json* v = opt_member(j, key);
  if (!v) return dflt;
  if (!v->is_string())
    fail(std::string(where) + "." + key + ": expected a string");
  return v->get<std::string>();
}

void parse_material(const json& j, RunConfig& cfg) {
  check_keys(j, "material",
             {"omega_p_rad_s", "gamma_rad_s", "film_thickness_m",
              "glass_table"});
  DrudeMetal film = cfg.stack.film;
  film.omega_p = opt_num(j, "omega_p_rad_s", film.omega_p, "material");
  film.gamma = opt_num(j, "gamma_rad_s", film.gamma, "material");
  if (!(film.omega_p > 0.0)) fail("material.omega_p_rad_s must be positive");
  if (film.gamma < 0.0) fail("material.gamma_rad_s must be nonnegative");
  const double delta =
      opt_num(j, "film_thickness_m", cfg.stack.thickness, "material");
  if (!(delta > 0.0)) fail("material.film_thickness_m must be positive");
  const std::string table = opt_str(j, "glass_table", "", "material");
  if (table.empty()) {
    cfg.stack = LayerStack(TabulatedDielectric::builtin_sapphire(), film,
                           delta);
  } else {
    const std::string path =
        table.front() == '/' ? table : data_dir() + "/" + table;
    cfg.stack = LayerStack(TabulatedDielectric::from_file(path), film, delta);
  }
}

void parse_atom(const json& j, RunConfig& cfg) {
  check_keys(j, "atom", {"model", "omega_a_rad_s", "alpha0_vol_m3"});
  const std::string model = opt_str(j, "model", "rb", "atom");
  if (model == "rb") {
    cfg.atom_is_rb = true;
    if (opt_member(j, "omega_a_rad_s") || opt_member(j, "alpha0_vol_m3"))
      fail("atom: omega_a_rad_s/alpha0_vol_m3 apply to model \"two_level\"");
    return;
  }
  if (model != "two_level")
    fail("atom.model must be \"rb\" or \"two_level\"");
  cfg.atom_is_rb = false;
  const json* wa = opt_member(j, "omega_a_rad_s");
  const json* a0 = opt_member(j, "alpha0_vol_m3");
  if (!wa || !a0)
    fail("atom: model \"two_level\" needs omega_a_rad_s and alpha0_vol_m3");
  const double omega_a = num(*wa, "atom.omega_a_rad_s");
  const double vol = num(*a0, "atom.alpha0_vol_m3");
  if (!(omega_a > 0.0)) fail("atom.omega_a_rad_s must be positive");
  if (!(vol > 0.0)) fail("atom.alpha0_vol_m3 must be positive");
  cfg.two_level = atom_from_volume(omega_a, vol);
}

void parse_temperature(const json& j, RunConfig& cfg) {
  check_keys(j, "temperature", {"T_K", "T_a_K", "T_sp_K", "T_sp_K_list"});
  cfg.T = opt_num(j, "T_K", cfg.T, "temperature");
  cfg.T_a = opt_num(j, "T_a_K", cfg.T, "temperature");
  cfg.T_sp = opt_num(j, "T_sp_K", cfg.T, "temperature");
  if (cfg.T < 0.0 || cfg.T_a < 0.0 || cfg.T_sp < 0.0)
    fail("temperature: temperatures must be nonnegative");
  if (const json* list = opt_member(j, "T_sp_K_list")) {
    if (!list->is_array()) fail("temperature.T_sp_K_list: expected an array");
    for (const auto& v : *list) {
      const double t = num(v, "temperature.T_sp_K_list");
      if (t < 0.0) fail("temperature.T_sp_K_list: temperatures must be nonnegative");
      cfg.T_sp_list.push_back(t);
    }
  }
}

void parse_beams(const json& j, RunConfig& cfg) {
  if (!j.is_array()) fail("beams: expected an array");
  if (j.size() > 2) fail("beams: at most two beams are supported");
  for (const auto& b : j) {
    if (!b.is_object()) fail("beams: each beam must be an object");
    check_keys(b, "beams[]",
               {"omega_rad_s", "theta_deg", "theta_offset_deg", "power_W",
                "waist_m", "phase_rad", "direction"});
    LaserBeam beam;
    const json* w = opt_member(b, "omega_rad_s");
    if (!w) fail("beams[]: omega_rad_s is required");
    beam.omega = num(*w, "beams[].omega_rad_s");
    if (!(beam.omega > 0.0)) fail("beams[].omega_rad_s must be positive");
    const json* th = opt_member(b, "theta_deg");
    const json* off = opt_member(b, "theta_offset_deg");
    if (!!th == !!off)
      fail("beams[]: exactly one of theta_deg / theta_offset_deg");
    if (th) {
      beam.theta = num(*th, "beams[].theta_deg") * pi / 180.0;
    } else {
      beam.theta = tir_angle(cfg.stack.glass, beam.omega) +
                   num(*off, "beams[].theta_offset_deg") * pi / 180.0;
    }
    const json* p = opt_member(b, "power_W");
    const json* ws = opt_member(b, "waist_m");
    if (!p || !ws) fail("beams[]: power_W and waist_m are required");
    beam.power = num(*p, "beams[].power_W");
    beam.waist = num(*ws, "beams[].waist_m");
    beam.phase = opt_num(b, "phase_rad", 0.0, "beams[]");
    beam.direction = opt_int(b, "direction", 1, "beams[]");
    cfg.beams.push_back(beam);
  }
}

void parse_scan(const json& j, RunConfig& cfg) {
  check_keys(j, "scan", {"axes", "quantity"});
  cfg.quantity = opt_str(j, "quantity", "", "scan");
  if (!cfg.quantity.empty() && cfg.quantity != "features" &&
      cfg.quantity != "potential")
    fail("scan.quantity must be \"features\" or \"potential\"");
  const json* axes = opt_member(j, "axes");
  if (!axes) return;
  if (!axes->is_array()) fail("scan.axes: expected an array");
  if (axes->size() > 2) fail("scan.axes: at most two axes");
  for (const auto& a : *axes) {
    if (!a.is_object()) fail("scan.axes: each axis must be an object");
    check_keys(a, "scan.axes[]", {"name", "min", "max", "count", "scale"});
    ScanAxisSpec ax;
    ax.name = opt_str(a, "name", "", "scan.axes[]");
    static const char* known[] = {"theta_i_deg", "theta_r_deg", "theta_b_deg",
                                  "P_r_W",       "P_b_W",       "omega_l_rad_s",
                                  "x_m",         "L_m"};
    bool ok = false;
    for (const char* k : known) ok = ok || ax.name == k;
    if (!ok) fail("scan.axes[].name: unknown axis \"" + ax.name + "\"");
    const json* mn = opt_member(a, "min");
    const json* mx = opt_member(a, "max");
    if (!mn) fail("scan.axes[]: min is required");
    ax.min = num(*mn, "scan.axes[].min");
    ax.max = mx ? num(*mx, "scan.axes[].max") : ax.min;
    ax.count = opt_int(a, "count", 1, "scan.axes[]");
    if (ax.count < 1) fail("scan.axes[].count must be >= 1");
    if (ax.count > 1 && !(ax.max > ax.min))
      fail("scan.axes[]: max must exceed min when count > 1");
    const std::string scale = opt_str(a, "scale", "linear", "scan.axes[]");
    if (scale == "log") {
      if (!(ax.min > 0.0)) fail("scan.axes[]: log scale needs min > 0");
      ax.log_scale = true;
    } else if (scale != "linear") {
      fail("scan.axes[].scale must be \"linear\" or \"log\"");
    }
    cfg.axes.push_back(ax);
  }
}

void parse_dispersion(const json& j, RunConfig& cfg) {
  check_keys(j, "dispersion", {"k_min_per_m", "k_max_per_m", "count", "L_m"});
  cfg.dispersion.k_min = opt_num(j, "k_min_per_m", 0.0, "dispersion");
  cfg.dispersion.k_max = opt_num(j, "k_max_per_m", 0.0, "dispersion");
  cfg.dispersion.count = opt_int(j, "count", 200, "dispersion");
  cfg.dispersion.L = opt_num(j, "L_m", 0.0, "dispersion");
  if (cfg.dispersion.count < 2) fail("dispersion.count must be >= 2");
  if (cfg.dispersion.k_min < 0.0 || cfg.dispersion.k_max < 0.0 ||
      cfg.dispersion.L < 0.0)
    fail("dispersion: values must be nonnegative");
  if (cfg.dispersion.k_min > 0.0 && cfg.dispersion.k_max > 0.0 &&
      !(cfg.dispersion.k_max > cfg.dispersion.k_min))
    fail("dispersion.k_max_per_m must exceed k_min_per_m");
}

void parse_evaluation(const json& j, RunConfig& cfg) {
  check_keys(j, "evaluation", {"L_m", "x_m", "t_s", "delta_zeta_rad"});
  cfg.L_eval = opt_num(j, "L_m", cfg.L_eval, "evaluation");
  cfg.x_eval = opt_num(j, "x_m", cfg.x_eval, "evaluation");
  cfg.t_eval = opt_num(j, "t_s", cfg.t_eval, "evaluation");
  cfg.delta_zeta = opt_num(j, "delta_zeta_rad", cfg.delta_zeta, "evaluation");
  if (!(cfg.L_eval > 0.0)) fail("evaluation.L_m must be positive");
}

void parse_output(const json& j, RunConfig& cfg) {
  check_keys(j, "output", {"format", "units", "path"});
  cfg.out_format = opt_str(j, "format", cfg.out_format, "output");
  if (cfg.out_format != "csv" && cfg.out_format != "json")
    fail("output.format must be \"csv\" or \"json\"");
  cfg.out_units = opt_str(j, "units", cfg.out_units, "output");
  if (cfg.out_units != "J" && cfg.out_units != "uK" &&
      cfg.out_units != "both")
    fail("output.units must be \"J\", \"uK\", or \"both\"");
  cfg.out_path = opt_str(j, "path", cfg.out_path, "output");
}

void parse_numerics(const json& j, RunConfig& cfg) {
  check_keys(j, "numerics", {"strict"});
  cfg.strict = opt_bool(j, "strict", false, "numerics");
  if (cfg.strict) cfg.quad = QuadCfg::strict();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("config root must be an object");
  check_keys(j, "config",
             {"material", "atom", "temperature", "beams", "scan",
              "dispersion", "evaluation", "output", "numerics", "threads"});

  RunConfig cfg;
  cfg.hash = fnv1a64(j.dump());

  // material first: beams with theta_offset_deg need the glass table
  if (const json* m = opt_member(j, "material")) {
    if (!m->is_object()) fail("material: expected an object");
    parse_material(*m, cfg);
  }
  if (const json* a = opt_member(j, "atom")) {
    if (!a->is_object()) fail("atom: expected an object");
    parse_atom(*a, cfg);
  }
  if (const json* t = opt_member(j, "temperature")) {
    if (!t->is_object()) fail("temperature: expected an object");
    parse_temperature(*t, cfg);
  }
  if (const json* b = opt_member(j, "beams")) parse_beams(*b, cfg);
  if (const json* s = opt_member(j, "scan")) {
    if (!s->is_object()) fail("scan: expected an object");
    parse_scan(*s, cfg);
  }
  if (const json* d = opt_member(j, "dispersion")) {
    if (!d->is_object()) fail("dispersion: expected an object");
    parse_dispersion(*d, cfg);
  }
  if (const json* e = opt_member(j, "evaluation")) {
    if (!e->is_object()) fail("evaluation: expected an object");
    parse_evaluation(*e, cfg);
  }
  if (const json* o = opt_member(j, "output")) {
    if (!o->is_object()) fail("output: expected an object");
    parse_output(*o, cfg);
  }
  if (const json* n = opt_member(j, "numerics")) {
    if (!n->is_object()) fail("numerics: expected an object");
    parse_numerics(*n, cfg);
  }
  cfg.threads = opt_int(j, "threads", 0, "config");
  if (cfg.threads < 0) fail("threads must be >= 0");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string data_dir() {
  if (const char* env = std::getenv("CPNEQ_DATA_DIR"); env && *env)
    return env;
#ifdef CPNEQ_DEFAULT_DATA_DIR
  return CPNEQ_DEFAULT_DATA_DIR;
#else
  return ".";
#endif
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace cpneq
