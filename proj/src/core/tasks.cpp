#include "core/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/landscape.hpp"
#include "core/laser.hpp"
#include "core/parallel.hpp"
#include "core/potentials.hpp"
#include "core/spectral.hpp"

namespace cpneq {

const char* version_string() { return "0.1.0"; }

namespace {

constexpr double nan_d = std::numeric_limits<double>::quiet_NaN();

int effective_threads(const RunConfig& cfg, int threads) {
  return threads > 0 ? threads : cfg.threads;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string trim_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void meta_num(Table& t, const std::string& key, double v) {
  t.meta.emplace_back(key, format_sig(v));
}

void base_meta(Table& t, const std::string& task, const RunConfig& cfg) {
  t.meta.emplace_back("task", task);
  t.meta.emplace_back("version", version_string());
  t.meta.emplace_back("config_hash", hash_hex(cfg.hash));
  t.meta.emplace_back("units", cfg.out_units);
  t.meta.emplace_back("strict", cfg.strict ? "true" : "false");
}

void number_col(Table& t, const std::string& h) {
  t.headers.push_back(h);
  t.kinds.push_back(ColKind::Number);
}

void text_col(Table& t, const std::string& h) {
  t.headers.push_back(h);
  t.kinds.push_back(ColKind::Text);
}

// Energy columns honor output.units: joules, microkelvin (E / k_B), or both.
void energy_headers(Table& t, const std::string& base, const RunConfig& cfg) {
  if (cfg.out_units != "uK") number_col(t, base + "_J");
  if (cfg.out_units != "J") number_col(t, base + "_uK");
}

void energy_cells(std::vector<std::string>& row, double joules,
                  const RunConfig& cfg) {
  if (cfg.out_units != "uK") row.push_back(format_sig(joules));
  if (cfg.out_units != "J") row.push_back(format_sig(joules / k_B * 1e6));
}

const TwoLevelAtom& require_two_level(const RunConfig& cfg, const char* task) {
  if (cfg.atom_is_rb)
    throw ConfigError(std::string(task) +
                      " task requires atom.model \"two_level\"");
  return cfg.two_level;
}

std::vector<double> axis_values(const ScanAxisSpec& s) {
  const int n = std::max(1, s.count);
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    v.push_back(s.min);
    return v;
  }
  if (s.log_scale) {
    if (s.min <= 0.0 || s.max <= 0.0)
      throw ConfigError("scan: log scale needs positive bounds");
    for (int i = 0; i < n; ++i)
      v.push_back(s.min * std::pow(s.max / s.min, double(i) / (n - 1)));
  } else {
    for (int i = 0; i < n; ++i)
      v.push_back(s.min + (s.max - s.min) * double(i) / (n - 1));
  }
  return v;
}

// Config axis -> sweep axis, keeping the boundary-unit values for the output
// column (angles stay degrees there; the sweep itself runs in radians).
struct BuiltAxis {
  AxisSpec spec;
  std::vector<double> display;
  std::string header;
};

BuiltAxis build_axis(const ScanAxisSpec& s) {
  BuiltAxis a;
  a.header = s.name;
  a.display = axis_values(s);
  a.spec.values = a.display;
  bool degrees = false;
  if (s.name == "theta_i_deg") {
    a.spec.axis = SweepAxis::ThetaI;
    degrees = true;
  } else if (s.name == "theta_r_deg") {
    a.spec.axis = SweepAxis::ThetaR;
    degrees = true;
  } else if (s.name == "theta_b_deg") {
    a.spec.axis = SweepAxis::ThetaB;
    degrees = true;
  } else if (s.name == "P_r_W") {
    a.spec.axis = SweepAxis::PowerR;
  } else if (s.name == "P_b_W") {
    a.spec.axis = SweepAxis::PowerB;
  } else if (s.name == "omega_l_rad_s") {
    a.spec.axis = SweepAxis::OmegaL;
  } else if (s.name == "x_m") {
    a.spec.axis = SweepAxis::X;
  } else if (s.name == "L_m") {
    a.spec.axis = SweepAxis::L;
  } else {
    throw ConfigError("scan: unknown axis \"" + s.name + "\"");
  }
  if (degrees)
    for (double& v : a.spec.values) v *= pi / 180.0;
  return a;
}

SweepQuantity resolve_quantity(const RunConfig& cfg) {
  if (cfg.quantity == "potential") return SweepQuantity::Potential;
  if (cfg.quantity == "features") return SweepQuantity::Features;
  // Position-like axes default to the raw potential, parameter-like axes to
  // the trap features the parameter scan is after.
  for (const auto& ax : cfg.axes)
    if (ax.name == "x_m" || ax.name == "L_m") return SweepQuantity::Potential;
  return SweepQuantity::Features;
}

void feature_headers(Table& t, const RunConfig& cfg) {
  number_col(t, "barrier_L_m");
  energy_headers(t, "barrier_U", cfg);
  number_col(t, "well_L_m");
  energy_headers(t, "well_depth", cfg);
  text_col(t, "error");
}

void feature_cells(std::vector<std::string>& row, const SweepPoint& p,
                   const RunConfig& cfg) {
  const auto& b = p.features.barrier;
  const auto& w = p.features.well;
  row.push_back(format_sig(b ? b->L : nan_d));
  energy_cells(row, b ? b->U : nan_d, cfg);
  row.push_back(format_sig(w ? w->L : nan_d));
  energy_cells(row, w ? w->U : nan_d, cfg);
  row.push_back(p.error);
}

void potential_headers(Table& t, const RunConfig& cfg) {
  energy_headers(t, "U", cfg);
  text_col(t, "error");
}

void potential_cells(std::vector<std::string>& row, const SweepPoint& p,
                     const RunConfig& cfg) {
  energy_cells(row, p.value, cfg);
  row.push_back(p.error);
}

// ---------------------------------------------------------------- dispersion

TaskResult task_dispersion(const RunConfig& cfg, int /*threads*/) {
  TaskResult r;
  const DrudeMetal m = cfg.stack.film;
  const PlasmonBranch br{m.omega_p};
  const double L = cfg.dispersion.L > 0.0 ? cfg.dispersion.L : m.lambda_p();
  const double k0 = m.omega_p / c_light;
  const double kmin = cfg.dispersion.k_min > 0.0 ? cfg.dispersion.k_min
                                                 : 0.02 * k0;
  const double kmax = cfg.dispersion.k_max > 0.0 ? cfg.dispersion.k_max
                                                 : 20.0 * k0;
  if (kmax <= kmin) throw ConfigError("dispersion: k_max must exceed k_min");
  const int n = std::max(2, cfg.dispersion.count);
  if (m.gamma > 0.0)
    r.warnings.push_back(
        "dispersion uses the lossless surface-plasmon branch; the film's "
        "relaxation rate is ignored here");

  base_meta(r.table, "dispersion", cfg);
  meta_num(r.table, "L_m", L);
  meta_num(r.table, "omega_p_rad_s", m.omega_p);
  number_col(r.table, "k_per_m");
  number_col(r.table, "omega_sp_rad_s");
  number_col(r.table, "omega_minus_rad_s");
  number_col(r.table, "omega_plus_rad_s");
  number_col(r.table, "residue_J_m");

  for (int i = 0; i < n; ++i) {
    const double k = kmin * std::pow(kmax / kmin, double(i) / (n - 1));
    std::vector<std::string> row;
    row.push_back(format_sig(k));
    row.push_back(format_sig(br.omega_sp(k)));
    row.push_back(format_sig(br.omega_minus(k)));
    row.push_back(format_sig(br.omega_plus(k)));
    row.push_back(format_sig(plasmon_residue(br, k, L)));
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

// --------------------------------------------------------------------- split

std::vector<double> length_grid(const RunConfig& cfg, const char* task,
                                double def_lo, double def_hi, int def_n) {
  if (cfg.axes.empty()) return log_grid(def_lo, def_hi, def_n);
  if (cfg.axes.size() == 1 && cfg.axes[0].name == "L_m")
    return axis_values(cfg.axes[0]);
  throw ConfigError(std::string(task) + " task scans L_m only");
}

TaskResult task_split(const RunConfig& cfg, int threads) {
  TaskResult r;
  const TwoLevelAtom a = require_two_level(cfg, "split");
  const DrudeMetal m = cfg.stack.film;
  const std::vector<double> Ls = length_grid(cfg, "split", 10e-9, 10e-6, 40);

  // Everything is normalized to the magnitude of U at the plasma wavelength,
  // which also sets the oscillation scale of the split parts.
  std::vector<EnergySplit> sp(Ls.size());
  EnergySplit ref{};
  parallel_for(Ls.size() + 1, threads, [&](std::size_t i) {
    if (i < Ls.size())
      sp[i] = split_energies(a, Ls[i], cfg.T, m, cfg.quad);
    else
      ref = split_energies(a, m.lambda_p(), cfg.T, m, cfg.quad);
  });
  const double U0 = std::abs(ref.U_total);

  base_meta(r.table, "split", cfg);
  meta_num(r.table, "T_K", cfg.T);
  meta_num(r.table, "omega_a_rad_s", a.omega_a);
  meta_num(r.table, "lambda_p_m", m.lambda_p());
  meta_num(r.table, "U0_J", U0);
  number_col(r.table, "L_m");
  energy_headers(r.table, "U", cfg);
  energy_headers(r.table, "U_f", cfg);
  energy_headers(r.table, "U_a", cfg);
  number_col(r.table, "U_over_U0");
  number_col(r.table, "U_f_over_U0");
  number_col(r.table, "U_a_over_U0");

  for (std::size_t i = 0; i < Ls.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(format_sig(Ls[i]));
    energy_cells(row, sp[i].U_total, cfg);
    energy_cells(row, sp[i].U_field, cfg);
    energy_cells(row, sp[i].U_atom, cfg);
    row.push_back(format_sig(sp[i].U_total / U0));
    row.push_back(format_sig(sp[i].U_field / U0));
    row.push_back(format_sig(sp[i].U_atom / U0));
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

// ----------------------------------------------------------------- imbalance

TaskResult task_imbalance(const RunConfig& cfg, int threads) {
  TaskResult r;
  const TwoLevelAtom a = require_two_level(cfg, "imbalance");
  const DrudeMetal m = cfg.stack.film;
  const std::vector<double> Ls =
      length_grid(cfg, "imbalance", 50e-9, 5e-6, 120);
  std::vector<double> tsp = cfg.T_sp_list;
  if (tsp.empty()) tsp.push_back(cfg.T_sp);
  if (m.gamma > 0.0)
    r.warnings.push_back(
        "the plasmon-branch swap treats the film as lossless; the film's "
        "relaxation rate only enters the equilibrium part");

  const std::size_t nT = tsp.size();
  std::vector<double> U(Ls.size() * nT);
  parallel_for(U.size(), threads, [&](std::size_t i) {
    const std::size_t iL = i / nT, iT = i % nT;
    U[i] = imbalanced_total(a, Ls[iL], cfg.T, tsp[iT], m, cfg.quad);
  });

  base_meta(r.table, "imbalance", cfg);
  meta_num(r.table, "T_K", cfg.T);
  meta_num(r.table, "omega_a_rad_s", a.omega_a);
  number_col(r.table, "L_m");
  for (double T_sp : tsp)
    energy_headers(r.table, "U_Tsp" + trim_num(T_sp) + "K", cfg);

  for (std::size_t iL = 0; iL < Ls.size(); ++iL) {
    std::vector<std::string> row;
    row.push_back(format_sig(Ls[iL]));
    for (std::size_t iT = 0; iT < nT; ++iT)
      energy_cells(row, U[iL * nT + iT], cfg);
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

// ------------------------------------------------------- laser1 / laser2 /
// lattice

void emit_sweep_1d(TaskResult& r, const RunConfig& cfg, const BuiltAxis& a,
                   const PotentialMap& map, SweepQuantity q) {
  number_col(r.table, a.header);
  if (q == SweepQuantity::Features)
    feature_headers(r.table, cfg);
  else
    potential_headers(r.table, cfg);
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(format_sig(a.display[i]));
    if (q == SweepQuantity::Features)
      feature_cells(row, map.points[i], cfg);
    else
      potential_cells(row, map.points[i], cfg);
    r.table.rows.push_back(std::move(row));
  }
}

void emit_sweep_2d(TaskResult& r, const RunConfig& cfg, const BuiltAxis& a1,
                   const BuiltAxis& a2, const PotentialMap& map,
                   SweepQuantity q) {
  number_col(r.table, a1.header);
  number_col(r.table, a2.header);
  if (q == SweepQuantity::Features)
    feature_headers(r.table, cfg);
  else
    potential_headers(r.table, cfg);
  const std::size_t n2 = a2.display.size();
  for (std::size_t i = 0; i < map.points.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(format_sig(a1.display[i / n2]));
    row.push_back(format_sig(a2.display[i % n2]));
    if (q == SweepQuantity::Features)
      feature_cells(row, map.points[i], cfg);
    else
      potential_cells(row, map.points[i], cfg);
    r.table.rows.push_back(std::move(row));
  }
}

TaskResult task_laser(const RunConfig& cfg, int threads, std::size_t nbeams,
                      bool lattice, const char* name) {
  if (cfg.beams.size() != nbeams)
    throw ConfigError(std::string(name) + " task needs exactly " +
                      std::to_string(nbeams) +
                      (nbeams == 1 ? " beam" : " beams"));
  TaskResult r;
  TrapSetup s = trap_from_config(cfg);
  if (lattice) {
    LaserBeam back = s.beams[0];
    back.direction = -s.beams[0].direction;
    back.phase = s.beams[0].phase - cfg.delta_zeta;
    s.beams.push_back(back);
    // Beam axes would move only the forward copy and break the mirror
    // symmetry, so the lattice task scans position axes only.
    for (const auto& ax : cfg.axes)
      if (ax.name != "x_m" && ax.name != "L_m")
        throw ConfigError(
            "lattice task scans x_m or L_m; set beam parameters directly");
  }
  for (const auto& b : s.beams) validate_beam(s.stack, b, &r.warnings);

  base_meta(r.table, name, cfg);
  meta_num(r.table, "T_K", cfg.T);
  if (cfg.T_sp != cfg.T) meta_num(r.table, "T_sp_K", cfg.T_sp);
  r.table.meta.emplace_back("atom", cfg.atom_is_rb ? "rb" : "two_level");
  if (lattice) {
    const BeamParts p = beam_parts(cfg.stack, cfg.beams[0]);
    meta_num(r.table, "lattice_period_m", pi / p.k_parallel);
    meta_num(r.table, "delta_zeta_rad", cfg.delta_zeta);
  }

  if (cfg.axes.empty()) {
    // Single evaluation at (L_m, x_m) from the evaluation block.
    number_col(r.table, "L_m");
    number_col(r.table, "x_m");
    energy_headers(r.table, "U_cp", cfg);
    energy_headers(r.table, "U_laser", cfg);
    energy_headers(r.table, "U", cfg);
    const double ucp = surface_potential(s, s.height);
    const double ul = laser_potential(s, s.height, s.x);
    std::vector<std::string> row;
    row.push_back(format_sig(s.height));
    row.push_back(format_sig(s.x));
    energy_cells(row, ucp, cfg);
    energy_cells(row, ul, cfg);
    energy_cells(row, ucp + ul, cfg);
    r.table.rows.push_back(std::move(row));
    return r;
  }

  const SweepQuantity q = resolve_quantity(cfg);
  if (cfg.axes.size() == 1) {
    const BuiltAxis a = build_axis(cfg.axes[0]);
    emit_sweep_1d(r, cfg, a, sweep_1d(s, a.spec, q, threads), q);
  } else {
    const BuiltAxis a1 = build_axis(cfg.axes[0]);
    const BuiltAxis a2 = build_axis(cfg.axes[1]);
    emit_sweep_2d(r, cfg, a1, a2, sweep_2d(s, a1.spec, a2.spec, q, threads),
                  q);
  }
  return r;
}

// -------------------------------------------------------------------- verify

TaskResult task_verify(const RunConfig& cfg, int /*threads*/) {
  TaskResult r;
  base_meta(r.table, "verify", cfg);
  text_col(r.table, "check");
  text_col(r.table, "detail");
  number_col(r.table, "measured");
  number_col(r.table, "tolerance");
  text_col(r.table, "status");

  bool all_ok = true;
  auto add = [&](const std::string& check, const std::string& detail,
                 double measured, double tol) {
    const bool ok = measured <= tol;  // NaN fails
    if (!ok) all_ok = false;
    r.table.rows.push_back({check, detail, format_sig(measured),
                            format_sig(tol), ok ? "PASS" : "FAIL"});
  };
  auto guarded = [&](const char* check, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      all_ok = false;
      r.table.rows.push_back({check, e.what(), "nan", "nan", "FAIL"});
    }
  };

  const DrudeMetal m = cfg.stack.film;
  // The checks run on the two-level atom regardless of the configured model;
  // the defaults are the canonical parameters.
  const TwoLevelAtom a = cfg.two_level;

  guarded("delta_dual_formula", [&] {
    for (double L : {50e-9, m.lambda_p(), 1e-6}) {
      const double d_rot = delta_rotated(a, L, m, cfg.quad);
      const double d_re = delta_real_axis(a, L, 0.0, m, cfg.quad);
      add("delta_dual_formula", "L=" + format_sig(L) + " m",
          std::abs(d_re - d_rot) / std::abs(d_rot), 1e-4);
    }
  });

  guarded("nonretarded_limit", [&] {
    const double L = m.lambda_p() / 100.0;
    const NonretardedSplit nr =
        nonretarded_split(a, L, 300.0, 300.0, m.omega_sp());
    const double uf = plasmonic_Uf(a, L, 300.0, 300.0, m.omega_p, cfg.quad);
    const double ua = plasmonic_Ua(a, L, 300.0, m.omega_p, cfg.quad);
    add("nonretarded_field_term", "L=lambda_p/100",
        std::abs(uf - nr.U_f) / std::abs(nr.U_f), 0.02);
    add("nonretarded_atom_term", "L=lambda_p/100",
        std::abs(ua - nr.U_a) / std::abs(nr.U_a), 0.02);
  });

  guarded("thermal_decoupling", [&] {
    std::mt19937 rng(12345u);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
      const double mag = 3.0 * u01(rng);
      const double phase = 2.0 * pi * u01(rng);
      const double nu = 5.0 * u01(rng);
      const std::complex<double> beta = std::polar(mag, phase);
      const DecouplingMoments mom = thermal_decoupling_moments(beta, nu);
      const double expect = std::norm(beta) + nu + 0.5;
      const double e1 =
          std::abs(mom.mean_abs_sq - expect) / std::max(1.0, expect);
      const double e2 = std::abs(mom.mean_alpha - beta) / std::max(1.0, mag);
      add("thermal_decoupling", "pair " + std::to_string(i),
          std::max(e1, e2), 1e-6);
    }
  });

  guarded("two_laser_reduction", [&] {
    LaserBeam b{24.6e14, tir_angle(cfg.stack.glass, 24.6e14) +
                             0.6899 * pi / 180.0,
                0.2, 180e-6};
    LaserBeam quad = b;
    quad.power = 4.0 * b.power;
    const double u2 =
        two_laser_potential(cfg.stack, b, b, 37e-9, 200e-9, 0.0);
    const double u1 = one_laser_potential(cfg.stack, quad, 200e-9);
    add("two_laser_reduction", "equal beams vs quadrupled power",
        std::abs(u2 - u1) / std::abs(u1), 1e-10);

    LaserBeam mirror = b;
    mirror.direction = -b.direction;
    mirror.phase = b.phase - 0.4;
    const double ul =
        counterprop_lattice(cfg.stack, b, 53e-9, 200e-9, 0.4);
    const double u2l =
        two_laser_potential(cfg.stack, b, mirror, 53e-9, 200e-9, 0.0);
    add("lattice_pair_identity", "delta_zeta=0.4 x=53nm",
        std::abs(ul - u2l) /
            std::max(std::max(std::abs(ul), std::abs(u2l)), 1e-300),
        1e-10);

    const BeamParts p = beam_parts(cfg.stack, b);
    const double u0 = one_laser_potential(cfg.stack, b, 0.0);
    for (double L : {50e-9, 200e-9, 1e-6}) {
      const double got = one_laser_potential(cfg.stack, b, L) / u0;
      const double want = std::exp(-2.0 * p.kappa * L);
      add("evanescent_decay", "L=" + format_sig(L) + " m",
          std::abs(got - want) / want, 1e-6);
    }
  });

  std::size_t failed = 0;
  for (const auto& row : r.table.rows)
    if (row.back() == "FAIL") ++failed;
  meta_num(r.table, "checks_total", double(r.table.rows.size()));
  meta_num(r.table, "checks_failed", double(failed));
  if (!all_ok) r.exit_code = 3;
  return r;
}

}  // namespace

TrapSetup trap_from_config(const RunConfig& cfg) {
  return TrapSetup{cfg.stack,
                   cfg.atom_is_rb ? std::optional<TwoLevelAtom>{}
                                  : std::optional<TwoLevelAtom>{cfg.two_level},
                   cfg.T,
                   cfg.T_sp,
                   cfg.beams,
                   cfg.x_eval,
                   cfg.t_eval,
                   cfg.L_eval,
                   cfg.quad};
}

TaskResult run_task(const std::string& task, const RunConfig& cfg,
                    int threads) {
  const int nt = effective_threads(cfg, threads);
  if (task == "dispersion") return task_dispersion(cfg, nt);
  if (task == "split") return task_split(cfg, nt);
  if (task == "imbalance") return task_imbalance(cfg, nt);
  if (task == "laser1") return task_laser(cfg, nt, 1, false, "laser1");
  if (task == "laser2") return task_laser(cfg, nt, 2, false, "laser2");
  if (task == "lattice") return task_laser(cfg, nt, 1, true, "lattice");
  if (task == "verify") return task_verify(cfg, nt);
  throw ConfigError("unknown task \"" + task + "\"");
}

}  // namespace cpneq
