#include "atom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "constants.hpp"
#include "errors.hpp"

namespace cpneq {

TwoLevelAtom atom_from_volume(double omega_a, double alpha0_volume_m3) {
  if (!(omega_a > 0.0)) throw DomainError("atom_from_volume: omega_a must be > 0");
  if (!(alpha0_volume_m3 > 0.0))
    throw DomainError("atom_from_volume: alpha0 must be > 0");
  return {omega_a, alpha0_volume_m3 * four_pi_eps0};
}

double thermal_static(const TwoLevelAtom& a, double T) {
  if (T < 0.0) throw DomainError("thermal_static: T < 0");
  if (T == 0.0) return a.alpha0_si;
  return std::tanh(hbar * a.omega_a / (2.0 * k_B * T)) * a.alpha0_si;
}

double two_level_polarizability(const TwoLevelAtom& a, double w) {
  const double wa2 = a.omega_a * a.omega_a;
  const double den = wa2 - w * w;
  if (den == 0.0) throw PoleError("two_level_polarizability: w on resonance");
  return a.alpha0_si * wa2 / den;
}

double two_level_polarizability_imag_axis(const TwoLevelAtom& a, double xi) {
  const double wa2 = a.omega_a * a.omega_a;
  return a.alpha0_si * wa2 / (wa2 + xi * xi);
}

double resonance_weight(const TwoLevelAtom& a, double T) {
  return 0.5 * pi * a.omega_a * thermal_static(a, T);
}

PolarizabilityValue thermal_polarizability(const TwoLevelAtom& a, double w,
                                           double T) {
  const double scale = (T == 0.0)
                           ? 1.0
                           : std::tanh(hbar * a.omega_a / (2.0 * k_B * T));
  return {scale * two_level_polarizability(a, w), resonance_weight(a, T)};
}

void validate_atom(const MultilevelAtom& a, Warnings* warnings) {
  if (a.level_energies.empty())
    throw DomainError("validate_atom: no levels");
  for (const Transition& t : a.transitions) {
    if (t.lower >= a.level_energies.size() || t.upper >= a.level_energies.size())
      throw DomainError("validate_atom: transition level index out of range");
    const double dE = a.level_energies[t.upper] - a.level_energies[t.lower];
    if (!(dE > 0.0))
      throw DomainError("validate_atom: upper level not above lower");
    if (!(t.dipole > 0.0)) throw DomainError("validate_atom: dipole must be > 0");
    if (t.gamma < 0.0) throw DomainError("validate_atom: gamma < 0");
    const double w0 = dE / hbar;
    if (warnings && t.gamma > 1e-3 * w0) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "transition at %.6g rad/s has gamma/omega = %.3g; "
                    "line-shape treatment assumes gamma << omega",
                    w0, t.gamma / w0);
      warnings->push_back(buf);
    }
  }
}

namespace {

// alpha^{(n)}(w) for one level: + for transitions upward, - downward.
complex level_polarizability(const MultilevelAtom& a, std::size_t n, double w) {
  complex out(0.0, 0.0);
  for (const Transition& t : a.transitions) {
    if (t.lower != n && t.upper != n) continue;
    const double w0 =
        (a.level_energies[t.upper] - a.level_energies[t.lower]) / hbar;
    const complex shifted(w, t.gamma);
    const complex den = w0 * w0 - shifted * shifted;
    if (std::abs(den) == 0.0)
      throw PoleError("multilevel polarizability: w on an undamped line");
    const complex term = (2.0 / (3.0 * hbar)) * w0 * t.dipole * t.dipole / den;
    out += (t.lower == n) ? term : -term;
  }
  return out;
}

}  // namespace

complex multilevel_thermal_polarizability(const MultilevelAtom& a, double w,
                                          double T) {
  if (T < 0.0) throw DomainError("multilevel_thermal_polarizability: T < 0");
  const double e_min =
      *std::min_element(a.level_energies.begin(), a.level_energies.end());
  complex num(0.0, 0.0);
  double z = 0.0;
  for (std::size_t n = 0; n < a.level_energies.size(); ++n) {
    double wB;
    if (T == 0.0) {
      wB = (a.level_energies[n] == e_min) ? 1.0 : 0.0;
    } else {
      wB = std::exp(-(a.level_energies[n] - e_min) / (k_B * T));
    }
    if (wB == 0.0) continue;
    num += wB * level_polarizability(a, n, w);
    z += wB;
  }
  return num / z;
}

std::array<RbLine, 2> rb_lines() {
  return {{{23.6943e14, 25.377e-30, 36.1283e6},
           {24.1419e14, 35.842e-30, 38.1201e6}}};
}

complex rb_polarizability_si(double w) {
  complex out(0.0, 0.0);
  for (const RbLine& L : rb_lines()) {
    const complex shifted(w, L.gamma);
    out += (2.0 / (3.0 * hbar)) * L.omega * L.dipole * L.dipole /
           (L.omega * L.omega - shifted * shifted);
  }
  return out;
}

complex rb_polarizability_volume(double w) {
  return rb_polarizability_si(w) / four_pi_eps0;
}

double rb_polarizability_imag_axis_si(double xi) {
  double out = 0.0;
  for (const RbLine& L : rb_lines()) {
    const double s = xi + L.gamma;
    out += (2.0 / (3.0 * hbar)) * L.omega * L.dipole * L.dipole /
           (L.omega * L.omega + s * s);
  }
  return out;
}

double rb_static_si() { return rb_polarizability_imag_axis_si(0.0); }

double rb_static_volume() { return rb_static_si() / four_pi_eps0; }

}  // namespace cpneq
