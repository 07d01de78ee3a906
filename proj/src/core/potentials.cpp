#include "core/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <set>
#include <vector>

#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/spectral.hpp"

namespace cpneq {

namespace {

void check_gap(double L) {
  if (!(L > 0.0)) throw DomainError("gap L must be positive");
}

std::vector<double> merged_edges(std::vector<double> edges) {
  std::set<double> s(edges.begin(), edges.end());
  std::vector<double> out(s.begin(), s.end());
  // collapse edges closer than 1e-12 of the local scale; zero-width panels
  // add nothing but cost function evaluations
  std::vector<double> dedup;
  for (double e : out) {
    if (dedup.empty() || e - dedup.back() > 1e-12 * std::abs(e) + 0.0)
      dedup.push_back(e);
  }
  return dedup;
}

double u_t0_core(const AlphaModel& am, double L, const DrudeMetal& m,
                 const QuadCfg& cfg) {
  const double hi = cfg.xi_cut_factor * std::max(am.omega_ref, c_light / L);
  std::vector<double> edges = geom_edges(0.02 * am.omega_ref, hi,
                                         std::max(1, cfg.xi_panels - 1));
  edges.insert(edges.begin(), 0.0);
  const auto f = [&](double xi) {
    if (xi <= 0.0) return 0.0;
    return am.alpha_iw_si(xi) * green_trace_imag(L, xi, m, cfg);
  };
  const double integral = panels(f, edges, cfg.gl_order_minor);
  return -hbar / (2.0 * pi) * integral;
}

// Fixed point of w = omega_sp(sqrt(t^2 + (w/c)^2)): the frequency at which
// the surface-mode evanescent decay constant equals t. These are where the
// pole sweeps through the k-integration window as w varies, i.e. where
// Im Tr G(w) has structure on the scale 1/L.
double omega_at_kappa_star(double t, double omega_p) {
  const PlasmonBranch b{omega_p};
  double k = std::hypot(t, 0.8 * b.band_edge() / c_light);
  double w = b.band_edge();
  for (int it = 0; it < 40; ++it) {
    w = b.omega_sp(k);
    k = std::hypot(t, w / c_light);
  }
  return w;
}

std::complex<double> coth_half_complex(std::complex<double> w, double T) {
  if (T == 0.0) return {1.0, 0.0};
  const std::complex<double> z = hbar * w / (2.0 * k_B * T);
  if (z.real() > 350.0) return {1.0, 0.0};
  return 1.0 / std::tanh(z);
}

// P int_0^cut coth(hbar w/2kT) Im Tr G(w) wa^2/(wa^2 - w^2) dw
//   + analytic pole log + vertical-contour continuation of the tail.
// The caller owns the alpha0 normalization and overall prefactor.
double real_axis_pv(const TwoLevelAtom& a, double L, double T,
                    const DrudeMetal& m, const QuadCfg& cfg) {
  check_gap(L);
  if (T < 0.0) throw DomainError("temperature must be nonnegative");
  const double wa = a.omega_a;
  const double wa2 = wa * wa;
  const double cut = std::max(6.0 * wa, 8.0 * pi * c_light / L);
  if (!(cut > wa)) throw DomainError("resonance beyond real-axis cutoff");

  const auto gi = [&](double w) {
    return coth_half(w, T) * green_trace_real(L, w, m, cfg).imag();
  };
  const double g_at = gi(wa);
  const auto reg = [&](double w) {
    const double den = wa2 - w * w;
    if (den == 0.0) return 0.0;  // removable; never hit by GL nodes anyway
    return (gi(w) - g_at) * wa2 / den;
  };

  std::vector<double> edges;
  for (double s : {0.0, 0.3, 0.7, 0.9, 0.97, 1.0, 1.03, 1.1, 1.3, 2.0})
    edges.push_back(s * wa);
  const double step = std::max(pi * c_light / (2.0 * L), 0.05 * wa);
  for (double w = 2.0 * wa + step; w < cut; w += step) edges.push_back(w);
  edges.push_back(cut);
  for (double j : {0.25, 0.75, 1.5, 3.0, 6.0, 12.0}) {
    const double f = omega_at_kappa_star(j / L, m.omega_p);
    if (f > 1e-3 * wa && f < cut && !(f > 0.9 * wa && f < 1.1 * wa))
      edges.push_back(f);
  }
  for (double f : {0.9995 * m.omega_sp(), m.omega_sp(), m.omega_p}) {
    if (f > 1e-3 * wa && f < cut && !(f > 0.9 * wa && f < 1.1 * wa))
      edges.push_back(f);
  }
  edges = merged_edges(std::move(edges));

  double pv = panels(reg, edges, cfg.gl_order);
  pv += g_at * wa * 0.5 * std::log((cut + wa) / (cut - wa));

  const auto f_vert = [&](double y) {
    const std::complex<double> w{cut, y};
    const std::complex<double> val = coth_half_complex(w, T) * wa2 /
                                     (wa2 - w * w) *
                                     green_trace_complex(L, w, m, cfg);
    return val.real();
  };
  const double y0 = 0.002 * cut;
  double tail = integrate(f_vert, 0.0, y0, cfg.gl_order_minor);
  const double y_hi = 50.0 * std::max(cut, c_light / L);
  tail += panels(f_vert, geom_edges(y0, y_hi, std::max(1, cfg.tail_panels - 1)),
                 cfg.gl_order_minor);
  return pv + tail;
}

}  // namespace

AlphaModel alpha_model(const TwoLevelAtom& a) {
  return {[a](double xi) { return two_level_polarizability_imag_axis(a, xi); },
          a.omega_a};
}

AlphaModel rb_alpha_model() {
  return {[](double xi) { return rb_polarizability_imag_axis_si(xi); },
          rb_lines()[0].omega};
}

double equilibrium_U_T0(const AlphaModel& am, double L, const DrudeMetal& m,
                        const QuadCfg& cfg) {
  check_gap(L);
  return u_t0_core(am, L, m, cfg);
}

double equilibrium_U_T0(const TwoLevelAtom& a, double L, const DrudeMetal& m,
                        const QuadCfg& cfg) {
  return equilibrium_U_T0(alpha_model(a), L, m, cfg);
}

double equilibrium_U_finiteT(const AlphaModel& am, double L, double T,
                             const DrudeMetal& m, const QuadCfg& cfg) {
  check_gap(L);
  if (T < 0.0) throw DomainError("temperature must be nonnegative");
  if (T == 0.0) return u_t0_core(am, L, m, cfg);

  const double xi1 = 2.0 * pi * k_B * T / hbar;
  const double alpha0 = am.alpha_iw_si(0.0);
  double sum = 0.5 * alpha0 / (8.0 * pi * eps0 * L * L * L);

  const auto term = [&](double xi) {
    return am.alpha_iw_si(xi) * green_trace_imag(L, xi, m, cfg);
  };

  const double scale = std::min(am.omega_ref, c_light / (2.0 * L));
  if (xi1 >= scale / 200.0) {
    // spacing coarse enough that the sum converges in a manageable number
    // of terms; run it to the requested relative tolerance
    long n = 1;
    for (;; ++n) {
      if (n > 200000)
        throw ToleranceError("Matsubara sum did not converge within 200000 terms");
      const double t = term(n * xi1);
      sum += t;
      if (n > 10 && std::abs(t) < cfg.matsubara_reltol * std::abs(sum)) break;
    }
  } else {
    // dense spacing: exact head, then the remainder as a midpoint-rule
    // integral (the summand is smooth on the xi1 scale out there)
    const long n0 = std::min(
        2000L, std::max(64L, (long)std::ceil(0.02 * scale / xi1)));
    for (long n = 1; n <= n0; ++n) sum += term(n * xi1);
    const double lo = (n0 + 0.5) * xi1;
    const double hi =
        1.5 * cfg.xi_cut_factor * std::max(am.omega_ref, c_light / L);
    const double integral =
        panels(term, geom_edges(lo, hi, cfg.xi_panels), cfg.gl_order);
    sum += integral / xi1;
  }
  return -k_B * T * sum;
}

double equilibrium_U_finiteT(const TwoLevelAtom& a, double L, double T,
                             const DrudeMetal& m, const QuadCfg& cfg) {
  return equilibrium_U_finiteT(alpha_model(a), L, T, m, cfg);
}

double delta_rotated(const TwoLevelAtom& a, double L, const DrudeMetal& m,
                     const QuadCfg& cfg) {
  check_gap(L);
  const double u0 = u_t0_core(alpha_model(a), L, m, cfg);
  const double g_re = green_trace_real(L, a.omega_a, m, cfg).real();
  return 0.5 * u0 + 0.25 * hbar * a.alpha0_si * a.omega_a * g_re;
}

double delta_real_axis(const TwoLevelAtom& a, double L, double T,
                       const DrudeMetal& m, const QuadCfg& cfg) {
  const double pvt = real_axis_pv(a, L, T, m, cfg);
  const double g_re = green_trace_real(L, a.omega_a, m, cfg).real();
  return -hbar * a.alpha0_si / (4.0 * pi) * pvt +
         0.125 * hbar * a.omega_a * a.alpha0_si * coth_half(a.omega_a, T) *
             g_re;
}

double field_energy_real_axis(const TwoLevelAtom& a, double L, double T_f,
                              double T_a, const DrudeMetal& m,
                              const QuadCfg& cfg) {
  const double a_th = thermal_static(a, T_a);
  return -hbar * a_th / (2.0 * pi) * real_axis_pv(a, L, T_f, m, cfg);
}

double atom_energy_real_axis(const TwoLevelAtom& a, double L, double T_a,
                             const DrudeMetal& m, const QuadCfg& cfg) {
  check_gap(L);
  const double a_th = thermal_static(a, T_a);
  const double g_re = green_trace_real(L, a.omega_a, m, cfg).real();
  return -0.25 * hbar * a.omega_a * a_th * coth_half(a.omega_a, T_a) * g_re;
}

EnergySplit split_energies(const TwoLevelAtom& a, double L, double T,
                           const DrudeMetal& m, const QuadCfg& cfg) {
  const double U = equilibrium_U_finiteT(a, L, T, m, cfg);
  const double d = delta_rotated(a, L, m, cfg);
  return {U, 0.5 * U + d, 0.5 * U - d, d};
}

NonretardedSplit nonretarded_split(const TwoLevelAtom& a, double L, double T_f,
                                   double T_a, double omega_sp) {
  check_gap(L);
  const double wa = a.omega_a;
  const double gap2 = omega_sp * omega_sp - wa * wa;
  if (gap2 == 0.0)
    throw PoleError("atom resonance degenerate with surface mode");
  const double pref = thermal_static(a, T_a) / (8.0 * pi * eps0 * L * L * L);
  const double u_f = 0.25 * hbar * omega_sp * coth_half(omega_sp, T_f) *
                     (wa * wa / gap2) * pref;
  const double u_a = -0.25 * hbar * wa * coth_half(wa, T_a) *
                     (omega_sp * omega_sp / gap2) * pref;
  return {u_f, u_a};
}

NonretardedSplit nonretarded_split_const_eps(const TwoLevelAtom& a, double L,
                                             double T_a, double eps_const) {
  check_gap(L);
  if (eps_const == -1.0)
    throw PoleError("eps = -1 is the surface-mode singularity");
  const double r = (eps_const - 1.0) / (eps_const + 1.0);
  const double pref = thermal_static(a, T_a) / (8.0 * pi * eps0 * L * L * L);
  const double u_a =
      -0.25 * hbar * a.omega_a * coth_half(a.omega_a, T_a) * r * pref;
  return {0.0, u_a};
}

double imbalanced_total(const TwoLevelAtom& a, double L, double T, double T_sp,
                        const DrudeMetal& m, const QuadCfg& cfg) {
  const double u_eq = equilibrium_U_finiteT(a, L, T, m, cfg);
  return u_eq + plasmonic_dUf(a, L, T_sp, T, m.omega_p, cfg);
}

}  // namespace cpneq
