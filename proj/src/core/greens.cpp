#include "greens.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"

namespace cpneq {

namespace {

std::vector<double> linspace(double a, double b, int n_points) {
  std::vector<double> v(n_points);
  for (int i = 0; i < n_points; ++i)
    v[i] = a + (b - a) * i / (n_points - 1);
  v.back() = b;
  return v;
}

// Sorted unique edge list: base edges plus breakpoints that fall inside.
std::vector<double> with_breakpoints(const std::vector<double>& base,
                                     const std::vector<double>& breaks) {
  std::set<double> s(base.begin(), base.end());
  for (double b : breaks)
    if (b > base.front() && b < base.back()) s.insert(b);
  return {s.begin(), s.end()};
}

}  // namespace

double green_trace_imag(double L, double xi, const DrudeMetal& m,
                        const QuadCfg& cfg) {
  if (!(L > 0.0) || !(xi > 0.0))
    throw DomainError("green_trace_imag: need L > 0, xi > 0");
  const double e = drude_permittivity_imag_axis(xi, m);
  const double xc2 = (xi / c_light) * (xi / c_light);
  const auto f = [&](double kap) {
    const double k2 = kap * kap - xc2;
    const double km = std::sqrt(kap * kap + (e - 1.0) * xc2);
    const double rTE = (kap - km) / (kap + km);
    const double rTM = (e * kap - km) / (e * kap + km);
    return (-xc2 * rTE + (kap * kap + k2) * rTM) * std::exp(-2.0 * kap * L);
  };
  const double lo = xi / c_light;
  const Rule& r = gauss_legendre(cfg.gl_order);
  double s = 0.0;
  const double marks[] = {0.0, 1.0, 5.0, 15.0, cfg.ev_cut_over_L};
  for (int i = 0; i + 1 < 5; ++i)
    s += integrate(f, lo + marks[i] / L, lo + marks[i + 1] / L, r);
  return s / four_pi_eps0;
}

double green_trace_imag(double L, double xi, const LayerStack& stack,
                        const QuadCfg& cfg) {
  if (!(L > 0.0) || !(xi > 0.0))
    throw DomainError("green_trace_imag: need L > 0, xi > 0");
  const double e = drude_permittivity_imag_axis(xi, stack.film);
  const double xc2 = (xi / c_light) * (xi / c_light);
  const double d = stack.thickness;
  const auto f = [&](double kap) {
    const double k2 = kap * kap - xc2;
    const double km = std::sqrt(kap * kap + (e - 1.0) * xc2);
    // Airy summation for a free-standing film: r (1 - a) / (1 - r^2 a),
    // a = e^{-2 kappa_m d}. Recovers the half-space as d -> infinity.
    const double a = std::exp(-2.0 * km * d);
    const double rTE1 = (kap - km) / (kap + km);
    const double rTM1 = (e * kap - km) / (e * kap + km);
    const double rTE = rTE1 * (1.0 - a) / (1.0 - rTE1 * rTE1 * a);
    const double rTM = rTM1 * (1.0 - a) / (1.0 - rTM1 * rTM1 * a);
    return (-xc2 * rTE + (kap * kap + k2) * rTM) * std::exp(-2.0 * kap * L);
  };
  const double lo = xi / c_light;
  const Rule& r = gauss_legendre(cfg.gl_order);
  double s = 0.0;
  const double marks[] = {0.0, 1.0, 5.0, 15.0, cfg.ev_cut_over_L};
  for (int i = 0; i + 1 < 5; ++i)
    s += integrate(f, lo + marks[i] / L, lo + marks[i + 1] / L, r);
  return s / four_pi_eps0;
}

complex green_trace_real(double L, double w, const DrudeMetal& m,
                         const QuadCfg& cfg) {
  if (!(L > 0.0) || !(w > 0.0))
    throw DomainError("green_trace_real: need L > 0, w > 0");
  const complex e = drude_permittivity(w, m);
  const double wc2 = (w / c_light) * (w / c_light);
  const Rule& big = gauss_legendre(cfg.gl_order);
  const Rule& small = gauss_legendre(cfg.gl_order_minor);

  const auto f_ev = [&](double kap) {
    const double k2 = kap * kap + wc2;
    const complex km = kappa_branch_of(complex(k2, 0.0) - e * wc2);
    const complex rTE = (kap - km) / (kap + km);
    const complex rTM = (e * kap - km) / (e * kap + km);
    return (wc2 * rTE + (kap * kap + k2) * rTM) * std::exp(-2.0 * kap * L);
  };

  // Evanescent leg: fixed decay panels, densified around the plasmon pole
  // kappa_p^2 = -(w/c)^2/(e+1) when the frequency sits below the band edge.
  std::vector<double> base = {0.0,      0.5 / L,  2.0 / L,
                              8.0 / L, 20.0 / L, cfg.ev_cut_over_L / L};
  std::vector<double> dense;
  if (w < m.omega_sp()) {
    const complex kp = std::sqrt(-wc2 / (e + 1.0));
    if (kp.real() > 0.0) {
      const double wid = std::max(std::abs(kp.imag()), 1e-9 * kp.real());
      for (double f : {30.0, 10.0, 3.0, -3.0, -10.0, -30.0})
        dense.push_back(kp.real() - f * wid);
    }
  }
  complex ev(0.0, 0.0);
  const std::vector<double> edges = with_breakpoints(base, dense);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    ev += integrate(f_ev, edges[i], edges[i + 1], big);

  const auto f_pr = [&](double q) {
    const double k2 = wc2 - q * q;
    const complex km = kappa_branch_of(complex(k2, 0.0) - e * wc2);
    const complex kap(0.0, -q);
    const complex rTE = (kap - km) / (kap + km);
    const complex rTM = (e * kap - km) / (e * kap + km);
    return complex(0.0, 1.0) * (wc2 * rTE + (k2 - q * q) * rTM) *
           std::exp(complex(0.0, 2.0 * q * L));
  };

  const double qmax = w / c_light;
  const double h = pi / (2.0 * L);  // half oscillation period of e^{2iqL}
  complex pr(0.0, 0.0);
  const double qstar = m.omega_p / c_light;
  if (w > m.omega_p && qstar < qmax) {
    // kappa_m has a branch cusp at q*; absorb the sqrt on both sides with
    // q = q* -/+ s^2 and integrate the rest in phase-resolved panels.
    const int nl = std::max(2, static_cast<int>(std::ceil(qstar / h)) + 1);
    const std::vector<double> el = linspace(0.0, qstar, nl);
    for (int i = 0; i + 2 < nl; ++i) pr += integrate(f_pr, el[i], el[i + 1], small);
    const double sl = std::sqrt(qstar - el[nl - 2]);
    pr += integrate(
        [&](double s) { return f_pr(qstar - s * s) * (2.0 * s); }, 0.0, sl, big);
    const int nr =
        std::max(2, static_cast<int>(std::ceil((qmax - qstar) / h)) + 1);
    const std::vector<double> er = linspace(qstar, qmax, nr);
    const double sr = std::sqrt(er[1] - qstar);
    pr += integrate(
        [&](double s) { return f_pr(qstar + s * s) * (2.0 * s); }, 0.0, sr, big);
    for (int i = 1; i + 1 < nr; ++i) pr += integrate(f_pr, er[i], er[i + 1], small);
  } else {
    const int npan = std::max(4, static_cast<int>(std::ceil(qmax / h)));
    const std::vector<double> eq = linspace(0.0, qmax, npan + 1);
    for (int i = 0; i < npan; ++i) pr += integrate(f_pr, eq[i], eq[i + 1], small);
  }
  return (ev + pr) / four_pi_eps0;
}

complex green_trace_complex(double L, complex w, const DrudeMetal& m,
                            const QuadCfg& cfg) {
  if (!(L > 0.0) || w.imag() < 0.0)
    throw DomainError("green_trace_complex: need L > 0, Im w >= 0");
  const complex e = 1.0 - m.omega_p * m.omega_p / (w * (w + complex(0.0, m.gamma)));
  const complex wc2 = (w / c_light) * (w / c_light);
  const Rule& big = gauss_legendre(cfg.gl_order);

  const auto f_ev = [&](double kap) {
    const complex k2 = kap * kap + wc2;
    const complex km = kappa_branch_of(k2 - e * wc2);
    const complex rTE = (kap - km) / (kap + km);
    const complex rTM = (e * kap - km) / (e * kap + km);
    return (wc2 * rTE + (kap * kap + k2) * rTM) * std::exp(-2.0 * kap * L);
  };
  complex ev(0.0, 0.0);
  const double marks[] = {0.0, 0.5, 2.0, 8.0, 20.0, cfg.ev_cut_over_L};
  for (int i = 0; i + 1 < 6; ++i)
    ev += integrate(f_ev, marks[i] / L, marks[i + 1] / L, big);

  const complex woc = w / c_light;
  const auto f_t = [&](double t) {
    const complex q = t * woc;
    const complex k2 = wc2 - q * q;
    const complex km = kappa_branch_of(k2 - e * wc2);
    const complex kap = complex(0.0, -1.0) * q;
    const complex rTE = (kap - km) / (kap + km);
    const complex rTM = (e * kap - km) / (e * kap + km);
    return complex(0.0, 1.0) * woc * (wc2 * rTE + (k2 - q * q) * rTM) *
           std::exp(complex(0.0, 2.0) * q * L);
  };

  // kappa_m cusp at t^2 = 1 - e (smoothed by loss / Im w but still sharp).
  const complex ts = std::sqrt(1.0 - e);
  const double tstar =
      (ts.real() > 0.0 && ts.real() < 1.0) ? ts.real() : -1.0;
  const double ht =
      pi * c_light / (2.0 * L * std::max(w.real(), 0.3 * c_light / L));

  const auto t_phase = [&](double a, double b) {
    complex v(0.0, 0.0);
    if (b <= a) return v;
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / ht)));
    const std::vector<double> ed = linspace(a, b, n + 1);
    for (int i = 0; i < n; ++i) v += integrate(f_t, ed[i], ed[i + 1], big);
    return v;
  };

  complex pr(0.0, 0.0);
  if (tstar > 0.0) {
    const double D = std::min({0.5 * ht, 0.3 * tstar, 0.3 * (1.0 - tstar)});
    pr += t_phase(0.0, tstar - D);
    const double sD = std::sqrt(D);
    pr += integrate(
        [&](double u) { return f_t(tstar - u * u) * (2.0 * u); }, 0.0, sD, big);
    pr += integrate(
        [&](double u) { return f_t(tstar + u * u) * (2.0 * u); }, 0.0, sD, big);
    pr += t_phase(tstar + D, 1.0);
  } else {
    pr += t_phase(0.0, 1.0);
  }
  return (ev + pr) / four_pi_eps0;
}

}  // namespace cpneq
