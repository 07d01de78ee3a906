#pragma once

#include <type_traits>
#include <vector>

namespace cpneq {

// Nodes and weights on the canonical interval ([-1,1] for Legendre,
// (-inf,inf) with weight e^{-x^2} for Hermite).
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Cached, computed on first use (Newton iteration on the recurrences).
// Thread-safe; references stay valid for the process lifetime.
const Rule& gauss_legendre(int n);
const Rule& gauss_hermite(int n);

template <class F>
auto integrate(F&& f, double a, double b, const Rule& r) {
  using T = std::invoke_result_t<F&, double>;
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  T acc{};
  for (std::size_t i = 0; i < r.x.size(); ++i)
    acc += r.w[i] * f(m + h * r.x[i]);
  return acc * h;
}

template <class F>
auto integrate(F&& f, double a, double b, int n = 96) {
  return integrate(f, a, b, gauss_legendre(n));
}

// One pass over consecutive [edges[i], edges[i+1]] panels.
template <class F>
auto panels(F&& f, const std::vector<double>& edges, int n = 96) {
  using T = std::invoke_result_t<F&, double>;
  const Rule& r = gauss_legendre(n);
  T acc{};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    acc += integrate(f, edges[i], edges[i + 1], r);
  return acc;
}

// Geometrically spaced edges from a to b (a > 0), n_panels+1 entries.
std::vector<double> geom_edges(double a, double b, int n_panels);

// Tunable accuracy knobs, threaded through every quadrature in the library.
// strict() doubles every cutoff and halves every tolerance; the acceptance
// suite asserts that switching to it moves no reported number by more than
// its stated tolerance.
struct QuadCfg {
  int gl_order = 96;        // smooth panels
  int gl_order_minor = 24;  // oscillatory / tail panels
  double xi_cut_factor = 40.0;   // imaginary-axis cutoff, times max(w_a, c/L)
  int xi_panels = 40;            // geometric panels for the T=0 integral
  double k_cut_over_L = 25.0;    // plasmon k-integral cutoff numerator
  double k_floor_factor = 20.0;  // times Omega_P/c
  double matsubara_reltol = 1e-12;
  int tail_panels = 26;          // vertical-contour tail of the real-axis Delta
  double pole_window = 0.10;     // near-pole panel half-width, fraction of w_a
  double ev_cut_over_L = 45.0;   // evanescent kappa cutoff, units of 1/L

  static QuadCfg strict();
};

}  // namespace cpneq
