#pragma once

#include <complex>

#include "atom.hpp"
#include "materials.hpp"
#include "quad.hpp"

namespace cpneq {

// Lossless surface-plasmon branch of a Drude half-space. All members treat
// the metal as nondissipative regardless of the gamma the caller holds.
struct PlasmonBranch {
  double omega_p;

  double band_edge() const;          // Omega_P / sqrt(2)
  double omega_sp(double k) const;   // dispersion, strictly increasing
  double omega_minus(double k) const;  // vacuum-side decay frequency c*kappa
  double omega_plus(double k) const;   // metal-side decay frequency
  double k_sp(double u) const;         // inverse dispersion, 0 < u < band edge
  double ksp_prime(double u) const;    // dk_sp/du
};

struct PlasmonPoint {
  double k;
  double omega_sp;
  double residue;  // J m per unit k; < 0
};

// Closed-form residue of the TM pole folded with the Green-trace prefactor.
// Returns 0 once the e^{-2 L omega_-/c} factor underflows.
double plasmon_residue(const PlasmonBranch& b, double k, double L);

PlasmonPoint plasmon_point(const PlasmonBranch& b, double k, double L);

// Independent route to the residue: numerator over the centered finite
// difference of the dispersion denominator at omega_sp(k).
double plasmon_residue_numeric(const PlasmonBranch& b, double k, double L,
                               double h_rel = 1e-6);

// Trace of the reflected-Green k-integrand at (w, k), lossless metal:
// (k kappa / 4 pi eps0) [ (w^2/c^2 kappa^2) rTE + (1 + k^2/kappa^2) rTM ]
// e^{-2 kappa L}.
complex mode_integrand_Fk(double L, double w, double k, double omega_p);

// coth(hbar w / 2 k_B T); T = 0 gives exactly 1.
double coth_half(double w, double T);

// coth(hbar u/2 k_B T1) - coth(hbar u/2 k_B T2) without cancellation; exact 0
// when T1 == T2.
double dcoth_half(double u, double T1, double T2);

// Plasmon-branch parts of the field / atom energies, principal value over
// u = omega_sp(k):
//   U_f,sp = (hbar w_a/2) a^(Ta)(0) P int coth(hbar u/2kT_sp) w_a R k' /
//            (w_a^2 - u^2) du
//   U_a,sp = -(hbar w_a/2) a^(Ta)(0) coth(hbar w_a/2kT_a) P int u R k' /
//            (w_a^2 - u^2) du
double plasmonic_Uf(const TwoLevelAtom& atom, double L, double T_sp,
                    double T_a, double omega_p, const QuadCfg& cfg = {});
double plasmonic_Ua(const TwoLevelAtom& atom, double L, double T_a,
                    double omega_p, const QuadCfg& cfg = {});

// U_f,sp(T_sp) - U_f,sp(T_ref) with the coth difference evaluated through
// expm1; the only viable route when both occupations are frozen out.
double plasmonic_dUf(const TwoLevelAtom& atom, double L, double T_sp,
                     double T_ref, double omega_p, const QuadCfg& cfg = {},
                     double kmax_factor = 40.0);

}  // namespace cpneq
