#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"

namespace cpneq {

double PlasmonBranch::band_edge() const { return omega_p / std::sqrt(2.0); }

double PlasmonBranch::omega_sp(double k) const {
  if (k < 0.0) throw DomainError("omega_sp: k < 0");
  const double x = (c_light * k / omega_p) * (c_light * k / omega_p);
  // Rationalized form of OmP sqrt(x + 1/2 - sqrt(x^2 + 1/4)): no cancellation
  // at large x.
  return omega_p * std::sqrt(x / (x + 0.5 + std::sqrt(x * x + 0.25)));
}

double PlasmonBranch::omega_minus(double k) const {
  const double x = (c_light * k / omega_p) * (c_light * k / omega_p);
  return omega_p * x / std::sqrt(std::sqrt(x * x + 0.25) + 0.5);
}

double PlasmonBranch::omega_plus(double k) const {
  const double x = (c_light * k / omega_p) * (c_light * k / omega_p);
  return omega_p * std::sqrt(std::sqrt(x * x + 0.25) + 0.5);
}

double PlasmonBranch::k_sp(double u) const {
  if (!(u > 0.0 && u < band_edge()))
    throw DomainError("k_sp: frequency outside (0, Omega_sp), no bound plasmon");
  const double u2 = u * u;
  const double op2 = omega_p * omega_p;
  return (u / c_light) * std::sqrt((u2 - op2) / (2.0 * u2 - op2));
}

double PlasmonBranch::ksp_prime(double u) const {
  if (!(u > 0.0 && u < band_edge()))
    throw DomainError("ksp_prime: frequency outside (0, Omega_sp)");
  const double n = u * u - omega_p * omega_p;
  const double d = 2.0 * u * u - omega_p * omega_p;
  const double f = n / d;
  const double sf = std::sqrt(f);
  return (sf + u * u * omega_p * omega_p / (d * d * sf)) / c_light;
}

double plasmon_residue(const PlasmonBranch& b, double k, double L) {
  if (!(k > 0.0 && L > 0.0)) throw DomainError("plasmon_residue: need k, L > 0");
  const double ck = c_light * k / b.omega_p;
  const double x = ck * ck;
  const double wm = b.omega_minus(k);
  const double wp = b.omega_plus(k);
  const double ws = b.omega_sp(k);
  const double expo = -2.0 * L * wm / c_light;
  if (expo < -700.0) return 0.0;
  const double pref =
      -b.omega_p * b.omega_p * b.omega_p / (4.0 * pi * c_light * c_light * eps0);
  return pref * ((wp - wm) / ws) * ck * ck * ck * ck * ck * std::exp(expo) /
         std::sqrt(x * x + 0.25);
}

PlasmonPoint plasmon_point(const PlasmonBranch& b, double k, double L) {
  return {k, b.omega_sp(k), plasmon_residue(b, k, L)};
}

double plasmon_residue_numeric(const PlasmonBranch& b, double k, double L,
                               double h_rel) {
  const double w0 = b.omega_sp(k);
  const double kap = std::sqrt(k * k - w0 * w0 / (c_light * c_light));
  const auto denom = [&](double w) {
    const double eps = 1.0 - b.omega_p * b.omega_p / (w * w);
    const double ka = std::sqrt(k * k - w * w / (c_light * c_light));
    const double km = std::sqrt(k * k - eps * w * w / (c_light * c_light));
    return eps * ka + km;
  };
  const double eps0w = 1.0 - b.omega_p * b.omega_p / (w0 * w0);
  const double km0 =
      std::sqrt(k * k - eps0w * w0 * w0 / (c_light * c_light));
  const double numer = eps0w * kap - km0;
  const double h = h_rel * w0;
  const double dprime = (denom(w0 + h) - denom(w0 - h)) / (2.0 * h);
  const double pref = (k / kap) * (kap * kap + k * k) *
                      std::exp(-2.0 * kap * L) / four_pi_eps0;
  return pref * numer / dprime;
}

complex mode_integrand_Fk(double L, double w, double k, double omega_p) {
  if (!(L > 0.0)) throw DomainError("mode_integrand_Fk: L <= 0");
  if (omega_p == 0.0) return complex(0.0, 0.0);
  const complex eps = 1.0 - omega_p * omega_p / (w * w);  // lossless
  const complex kap = kappa(w, k, complex(1.0, 0.0));
  const complex rTE = fresnel(w, k, eps, Polarization::TE);
  const complex rTM = fresnel(w, k, eps, Polarization::TM);
  const double wc2 = (w / c_light) * (w / c_light);
  return (k * kap / four_pi_eps0) *
         (wc2 / (kap * kap) * rTE + (1.0 + k * k / (kap * kap)) * rTM) *
         std::exp(-2.0 * kap * L);
}

double coth_half(double w, double T) {
  if (T < 0.0) throw DomainError("coth_half: T < 0");
  if (T == 0.0) return 1.0;
  const double x = hbar * w / (2.0 * k_B * T);
  if (x > 350.0) return 1.0;
  return 1.0 / std::tanh(x);
}

double dcoth_half(double u, double T1, double T2) {
  if (T1 == T2) return 0.0;
  const auto excess = [&](double T) {
    if (T <= 0.0) return 0.0;  // coth - 1 vanishes at zero temperature
    const double a = hbar * u / (2.0 * k_B * T);
    return 2.0 / std::expm1(2.0 * a);
  };
  return excess(T1) - excess(T2);
}

namespace {

// P int_0^ucut g(u)/(wa^2 - u^2) du. Pole regularized by subtracting g(wa)
// on panels hugging the pole; the subtracted piece integrates to a log.
double pv_over_branch(const std::function<double(double)>& g, double wa,
                      double ucut, double band_edge, const QuadCfg& cfg) {
  const Rule& rule = gauss_legendre(cfg.gl_order);
  if (wa >= 0.98 * band_edge && wa <= 1.02 * band_edge)
    throw DomainError("plasmon PV: atom resonance degenerate with band edge");
  if (wa >= ucut) {
    // No pole on the branch: plain panels, denser toward the band edge.
    const double fr[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.98, 0.995, 1.0};
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < sizeof(fr) / sizeof(fr[0]); ++i)
      s += integrate([&](double u) { return g(u) / (wa * wa - u * u); },
                     fr[i] * ucut, fr[i + 1] * ucut, rule);
    return s;
  }

  const double ga = g(wa);
  const auto reg = [&](double u) { return (g(u) - ga) / (wa * wa - u * u); };

  const double pw = cfg.pole_window;
  std::vector<double> edges = {0.0,
                               0.25 * wa,
                               0.5 * wa,
                               0.75 * wa,
                               (1.0 - 2.0 * pw) * wa,
                               (1.0 - pw) * wa,
                               wa};
  for (double f : {1.0 + pw, 1.0 + 2.0 * pw}) {
    if (f * wa < ucut * (1.0 - 1e-9)) edges.push_back(f * wa);
  }
  const std::vector<double> tail = geom_edges(edges.back(), ucut, 24);
  edges.insert(edges.end(), tail.begin() + 1, tail.end());

  double s = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    s += integrate(reg, edges[i], edges[i + 1], rule);
  s += ga / (2.0 * wa) * std::log((ucut + wa) / (ucut - wa));
  return s;
}

double branch_cut(const PlasmonBranch& b, double L, const QuadCfg& cfg,
                  double kmax_factor) {
  const double kmax =
      std::max(cfg.k_cut_over_L / L, kmax_factor * b.omega_p / c_light);
  return b.omega_sp(kmax);
}

}  // namespace

double plasmonic_Uf(const TwoLevelAtom& atom, double L, double T_sp,
                    double T_a, double omega_p, const QuadCfg& cfg) {
  if (!(L > 0.0)) throw DomainError("plasmonic_Uf: L <= 0");
  const PlasmonBranch b{omega_p};
  const double wa = atom.omega_a;
  const double aT = thermal_static(atom, T_a);
  const double ucut = branch_cut(b, L, cfg, cfg.k_floor_factor);
  const auto g = [&](double u) {
    return coth_half(u, T_sp) * wa * plasmon_residue(b, b.k_sp(u), L) *
           b.ksp_prime(u);
  };
  return 0.5 * hbar * wa * aT * pv_over_branch(g, wa, ucut, b.band_edge(), cfg);
}

double plasmonic_Ua(const TwoLevelAtom& atom, double L, double T_a,
                    double omega_p, const QuadCfg& cfg) {
  if (!(L > 0.0)) throw DomainError("plasmonic_Ua: L <= 0");
  const PlasmonBranch b{omega_p};
  const double wa = atom.omega_a;
  const double aT = thermal_static(atom, T_a);
  const double ucut = branch_cut(b, L, cfg, cfg.k_floor_factor);
  const auto g = [&](double u) {
    return u * plasmon_residue(b, b.k_sp(u), L) * b.ksp_prime(u);
  };
  return -0.5 * hbar * wa * aT * coth_half(wa, T_a) *
         pv_over_branch(g, wa, ucut, b.band_edge(), cfg);
}

double plasmonic_dUf(const TwoLevelAtom& atom, double L, double T_sp,
                     double T_ref, double omega_p, const QuadCfg& cfg,
                     double kmax_factor) {
  if (!(L > 0.0)) throw DomainError("plasmonic_dUf: L <= 0");
  if (T_sp == T_ref) return 0.0;
  const PlasmonBranch b{omega_p};
  const double wa = atom.omega_a;
  const double ucut = branch_cut(b, L, cfg, kmax_factor);
  const auto g = [&](double u) {
    return dcoth_half(u, T_sp, T_ref) * plasmon_residue(b, b.k_sp(u), L) *
           b.ksp_prime(u);
  };
  return 0.5 * hbar * wa * atom.alpha0_si * wa *
         pv_over_branch(g, wa, ucut, b.band_edge(), cfg);
}

}  // namespace cpneq
