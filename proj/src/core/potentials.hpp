#pragma once

#include <functional>

#include "atom.hpp"
#include "greens.hpp"
#include "materials.hpp"
#include "quad.hpp"

namespace cpneq {

// U_field = U_total/2 + delta, U_atom = U_total/2 - delta, by construction.
struct EnergySplit {
  double U_total;
  double U_field;
  double U_atom;
  double delta;
};

struct NonretardedSplit {
  double U_f;
  double U_a;
};

// Imaginary-axis polarizability plus the frequency scale steering quadrature
// cutoffs and the Matsubara head/tail split.
struct AlphaModel {
  std::function<double(double)> alpha_iw_si;  // xi >= 0
  double omega_ref;
};
AlphaModel alpha_model(const TwoLevelAtom& a);
AlphaModel rb_alpha_model();

// U(L) = -(hbar/2 pi) int_0^inf alpha(i xi) Tr G(i xi) d xi, zero temperature.
double equilibrium_U_T0(const AlphaModel& am, double L, const DrudeMetal& m,
                        const QuadCfg& cfg = {});
double equilibrium_U_T0(const TwoLevelAtom& a, double L, const DrudeMetal& m,
                        const QuadCfg& cfg = {});

// Matsubara sum, n = 0 halved (static Drude: rTE -> 0, rTM -> 1). Below
// xi_1 ~ omega_ref/200 the tail of the sum is replaced by a midpoint
// integral; T = 0 falls through to equilibrium_U_T0.
double equilibrium_U_finiteT(const AlphaModel& am, double L, double T,
                             const DrudeMetal& m, const QuadCfg& cfg = {});
double equilibrium_U_finiteT(const TwoLevelAtom& a, double L, double T,
                             const DrudeMetal& m, const QuadCfg& cfg = {});

// Delta = U_T0/2 + (hbar alpha0 w_a/4) Re Tr G(L, w_a); equilibrium, T = 0.
double delta_rotated(const TwoLevelAtom& a, double L, const DrudeMetal& m,
                     const QuadCfg& cfg = {});

// Real-axis route: -(hbar/4 pi) P int coth(hbar w/2kT) Im[alpha G] dw with
// the alpha pole handled as principal value plus resonance weight, the far
// oscillatory tail traded for a vertical contour. T = 0 is the dual-formula
// partner of delta_rotated.
double delta_real_axis(const TwoLevelAtom& a, double L, double T,
                       const DrudeMetal& m, const QuadCfg& cfg = {});

// Two-temperature field / atom parts on the real axis. The atom part is the
// resonance term alone (two-level alpha has no other absorption); its
// coth(T_a) cancels the thermal tanh of alpha^(Ta), as in the closed forms.
double field_energy_real_axis(const TwoLevelAtom& a, double L, double T_f,
                              double T_a, const DrudeMetal& m,
                              const QuadCfg& cfg = {});
double atom_energy_real_axis(const TwoLevelAtom& a, double L, double T_a,
                             const DrudeMetal& m, const QuadCfg& cfg = {});

// U(T) with the T = 0 rotated Delta (thermal corrections to Delta are frozen
// out at optical w_a; the real-axis route stays available separately).
EnergySplit split_energies(const TwoLevelAtom& a, double L, double T,
                           const DrudeMetal& m, const QuadCfg& cfg = {});

// Closed nonretarded forms. PoleError when w_a hits omega_sp exactly.
NonretardedSplit nonretarded_split(const TwoLevelAtom& a, double L, double T_f,
                                   double T_a, double omega_sp);

// Constant-permittivity surface: the field term vanishes, the atom term
// carries r = (eps - 1)/(eps + 1).
NonretardedSplit nonretarded_split_const_eps(const TwoLevelAtom& a, double L,
                                             double T_a, double eps_const);

// U_oe(T, T_sp) = U(T) - U_f,sp(T) + U_f,sp(T_sp), the plasmon-branch swap.
// The branch uses the lossless dispersion of m.omega_p.
double imbalanced_total(const TwoLevelAtom& a, double L, double T, double T_sp,
                        const DrudeMetal& m, const QuadCfg& cfg = {});

}  // namespace cpneq
