#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "core/atom.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"

using namespace cpneq;
using doctest::Approx;

namespace {
const TwoLevelAtom kAtom = atom_from_volume(2.4e15, 46e-30);
}

TEST_CASE("atom_from_volume converts volume polarizability to SI") {
  CHECK(kAtom.alpha0_si == Approx(46e-30 * four_pi_eps0).epsilon(1e-14));
  CHECK_THROWS_AS(atom_from_volume(-1.0, 46e-30), DomainError);
  CHECK_THROWS_AS(atom_from_volume(2.4e15, 0.0), DomainError);
}

TEST_CASE("thermal static polarizability limits") {
  CHECK(thermal_static(kAtom, 0.0) == kAtom.alpha0_si);
  // hbar w_a >> k_B T at room temperature: tanh factor is 1 to ~1e-26
  CHECK(thermal_static(kAtom, 300.0) ==
        Approx(kAtom.alpha0_si).epsilon(1e-12));
  // classical limit: tanh(x) ~ x
  const double T = 1e9;
  const double x = hbar * kAtom.omega_a / (2 * k_B * T);
  CHECK(thermal_static(kAtom, T) ==
        Approx(kAtom.alpha0_si * std::tanh(x)).epsilon(1e-12));
  CHECK(thermal_static(kAtom, T) < kAtom.alpha0_si);
  CHECK_THROWS_AS(thermal_static(kAtom, -1.0), DomainError);
}

TEST_CASE("two-level polarizability: symmetry, poles, special points") {
  const double wa = kAtom.omega_a;
  CHECK(two_level_polarizability(kAtom, 0.0) == kAtom.alpha0_si);
  // alpha(sqrt(2) w_a) = -alpha0
  CHECK(two_level_polarizability(kAtom, std::sqrt(2.0) * wa) ==
        Approx(-kAtom.alpha0_si).epsilon(1e-12));
  // even in w
  CHECK(two_level_polarizability(kAtom, 0.3 * wa) ==
        two_level_polarizability(kAtom, -0.3 * wa));
  CHECK_THROWS_AS(two_level_polarizability(kAtom, wa), PoleError);
  // imaginary axis: monotone decreasing, no pole
  const double a1 = two_level_polarizability_imag_axis(kAtom, 0.5 * wa);
  const double a2 = two_level_polarizability_imag_axis(kAtom, wa);
  CHECK(a1 > a2);
  CHECK(a2 == Approx(0.5 * kAtom.alpha0_si).epsilon(1e-14));
}

TEST_CASE("thermal polarizability separates smooth part and resonance weight") {
  const double wa = kAtom.omega_a;
  const double T = 300.0;
  const PolarizabilityValue v = thermal_polarizability(kAtom, 0.5 * wa, T);
  // smooth part at 0.5 w_a: alpha0 wa^2/(wa^2 - w^2) = alpha0 / 0.75
  CHECK(v.smooth == Approx(kAtom.alpha0_si / 0.75).epsilon(1e-12));
  CHECK(v.resonance_weight ==
        Approx(0.5 * pi * wa * thermal_static(kAtom, T)).epsilon(1e-12));
  CHECK(resonance_weight(kAtom, 0.0) ==
        Approx(0.5 * pi * wa * kAtom.alpha0_si).epsilon(1e-14));
}

TEST_CASE("Rb line data reproduces the static polarizability") {
  const auto lines = rb_lines();
  CHECK(lines[0].omega == Approx(23.6943e14).epsilon(1e-12));
  CHECK(lines[1].omega == Approx(24.1419e14).epsilon(1e-12));
  CHECK(rb_static_volume() == Approx(4.567565e-29).epsilon(1e-6));
  CHECK(rb_static_si() == Approx(rb_static_volume() * four_pi_eps0).epsilon(1e-14));
}

TEST_CASE("Rb polarizability pins at the two drive frequencies") {
  // blue drive sits above both D lines: strong negative response
  const complex blue = rb_polarizability_volume(24.6e14);
  CHECK(blue.real() == Approx(-9.873704378458377e-28).epsilon(1e-12));
  CHECK(blue.imag() == Approx(7.434098681711378e-34).epsilon(1e-9));
  // the absorptive part is negligible in the trap model
  CHECK(std::abs(blue.imag()) < 1e-4 * std::abs(blue.real()));

  // red drive below both lines: positive response
  const complex red = rb_polarizability_volume(24.0e14);
  CHECK(red.real() == Approx(1.9848172901833327e-27).epsilon(1e-12));
  CHECK(red.real() > 0.0);

  // crossing symmetry alpha(-w) = conj(alpha(w))
  const complex p = rb_polarizability_si(24.6e14);
  const complex q = rb_polarizability_si(-24.6e14);
  CHECK(std::abs(q - std::conj(p)) < 1e-12 * std::abs(p));

  // imaginary axis: real, positive, monotone decreasing
  const double i1 = rb_polarizability_imag_axis_si(1e14);
  const double i2 = rb_polarizability_imag_axis_si(1e15);
  CHECK(i1 > i2);
  CHECK(i2 > 0.0);
}

TEST_CASE("multilevel thermal polarizability reduces to tanh for two levels") {
  // one transition, dipole chosen to reproduce kAtom's alpha0
  const double wa = kAtom.omega_a;
  const double d = std::sqrt(kAtom.alpha0_si * hbar * wa / 2.0);
  MultilevelAtom a;
  a.level_energies = {0.0, hbar * wa};
  a.transitions = {{0, 1, d, 0.0}};
  Warnings w;
  validate_atom(a, &w);
  CHECK(w.empty());

  for (double T : {0.0, 300.0, 5e4, 2e5}) {
    const complex got = multilevel_thermal_polarizability(a, 0.37 * wa, T);
    const double smooth = thermal_polarizability(kAtom, 0.37 * wa, T).smooth;
    CHECK(got.real() == Approx(smooth).epsilon(1e-12));
    CHECK(got.imag() == Approx(0.0).scale(smooth));
  }
}

TEST_CASE("multilevel validation catches malformed atoms") {
  MultilevelAtom a;
  CHECK_THROWS_AS(validate_atom(a, nullptr), DomainError);
  a.level_energies = {0.0, 1e-19};
  a.transitions = {{0, 5, 1e-29, 0.0}};
  CHECK_THROWS_AS(validate_atom(a, nullptr), DomainError);
  a.transitions = {{1, 0, 1e-29, 0.0}};
  CHECK_THROWS_AS(validate_atom(a, nullptr), DomainError);
  a.transitions = {{0, 1, -1e-29, 0.0}};
  CHECK_THROWS_AS(validate_atom(a, nullptr), DomainError);

  // an overdamped line is allowed but flagged
  a.transitions = {{0, 1, 1e-29, 1e13}};
  Warnings w;
  validate_atom(a, &w);
  CHECK(w.size() == 1);
}

TEST_CASE("undamped multilevel line on resonance is a pole") {
  MultilevelAtom a;
  a.level_energies = {0.0, hbar * 2.4e15};
  a.transitions = {{0, 1, 1e-29, 0.0}};
  CHECK_THROWS_AS(multilevel_thermal_polarizability(a, 2.4e15, 300.0),
                  PoleError);
  CHECK_THROWS_AS(multilevel_thermal_polarizability(a, 2.4e15, -5.0),
                  DomainError);
}
