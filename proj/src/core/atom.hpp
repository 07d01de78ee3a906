#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cpneq {

using complex = std::complex<double>;
using Warnings = std::vector<std::string>;

struct TwoLevelAtom {
  double omega_a;    // transition frequency, rad/s
  double alpha0_si;  // static polarizability, C^2 m^2 / J
};

// alpha0 given as a volume (m^3, i.e. alpha/4 pi eps0).
TwoLevelAtom atom_from_volume(double omega_a, double alpha0_volume_m3);

// alpha^{(T)}(0) = tanh(hbar omega_a / 2 k_B T) alpha0; T = 0 returns alpha0
// exactly.
double thermal_static(const TwoLevelAtom& a, double T);

// alpha(w) = alpha0 omega_a^2 / (omega_a^2 - w^2); real, even in w.
// Throws PoleError exactly on resonance.
double two_level_polarizability(const TwoLevelAtom& a, double w);

// alpha(i xi) = alpha0 omega_a^2 / (omega_a^2 + xi^2).
double two_level_polarizability_imag_axis(const TwoLevelAtom& a, double xi);

// Thermal polarizability split into the principal-value (smooth) part and the
// weight of the delta spike sitting at w = omega_a. The weight
// (pi omega_a / 2) alpha^{(T)}(0) is carried symbolically; it never enters a
// quadrature as a sampled value.
struct PolarizabilityValue {
  double smooth;
  double resonance_weight;
};
PolarizabilityValue thermal_polarizability(const TwoLevelAtom& a, double w,
                                           double T);
double resonance_weight(const TwoLevelAtom& a, double T);

// Dipole-allowed transition between two levels of a multilevel atom.
struct Transition {
  std::size_t lower;
  std::size_t upper;
  double dipole;  // C m
  double gamma;   // linewidth, 1/s
};

struct MultilevelAtom {
  std::vector<double> level_energies;  // J, any order; ground = minimum
  std::vector<Transition> transitions;
};

// Sanity checks (indices in range, upper above lower, positive dipoles);
// appends a note per transition with gamma > 1e-3 omega, where the
// perturbative line shape stops being trustworthy.
void validate_atom(const MultilevelAtom& a, Warnings* warnings);

// Boltzmann-weighted polarizability Z^{-1} sum_n e^{-E_n/kT} alpha^{(n)}(w).
// alpha^{(n)} carries +(-) signed terms for transitions with n as the
// lower (upper) state. T = 0 selects the ground manifold.
complex multilevel_thermal_polarizability(const MultilevelAtom& a, double w,
                                          double T);

// Rb ground-state polarizability from the two D lines.
struct RbLine {
  double omega;   // rad/s
  double dipole;  // C m
  double gamma;   // 1/s
};
std::array<RbLine, 2> rb_lines();

complex rb_polarizability_si(double w);          // real axis, +i gamma poles
complex rb_polarizability_volume(double w);      // same / 4 pi eps0, m^3
double rb_polarizability_imag_axis_si(double xi);
double rb_static_si();
double rb_static_volume();

}  // namespace cpneq
