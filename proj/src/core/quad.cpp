#include "core/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "core/constants.hpp"

namespace cpneq {

namespace {

Rule make_legendre(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

Rule make_hermite(int n) {
  // Roots of H_n for the weight e^{-x^2}; normalized recurrence keeps the
  // iterates bounded. Classic descending-root initial guesses.
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * r.x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * r.x[1];
    } else {
      z = 2.0 * z - r.x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(double(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.x[i] = z;           // stored descending among the positive roots
    r.x[n - 1 - i] = -z;
    r.w[i] = 2.0 / (pp * pp);
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 1 || n > 1024) throw std::invalid_argument("gauss_legendre: bad order");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
  return it->second;
}

const Rule& gauss_hermite(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_hermite: bad order");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_hermite(n)).first;
  return it->second;
}

std::vector<double> geom_edges(double a, double b, int n_panels) {
  if (!(a > 0.0) || !(b > a) || n_panels < 1)
    throw std::invalid_argument("geom_edges: need 0 < a < b, n >= 1");
  std::vector<double> e(n_panels + 1);
  const double q = std::pow(b / a, 1.0 / n_panels);
  e[0] = a;
  for (int i = 1; i < n_panels; ++i) e[i] = e[i - 1] * q;
  e[n_panels] = b;
  return e;
}

QuadCfg QuadCfg::strict() {
  QuadCfg s;
  s.gl_order = 128;
  s.gl_order_minor = 48;
  s.xi_cut_factor = 80.0;
  s.xi_panels = 80;
  s.k_cut_over_L = 50.0;
  s.k_floor_factor = 40.0;
  s.matsubara_reltol = 5e-13;
  s.tail_panels = 52;
  s.pole_window = 0.05;
  s.ev_cut_over_L = 90.0;
  return s;
}

}  // namespace cpneq
