#include "core/laser.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/quad.hpp"

namespace cpneq {

namespace {

void warn(Warnings* warnings, const char* msg) {
  if (warnings) warnings->push_back(msg);
}

// Squared evanescent field amplitude (in the units in which U = -alpha A^2)
// on the vacuum side at height L.
double amp_sq(const LayerStack& stack, const BeamParts& p, const LaserBeam& b,
              double L, double n) {
  (void)stack;
  return 2.0 * b.power / (c_light * n * b.waist * b.waist) * p.t_factor *
         std::exp(-2.0 * p.kappa * L);
}

}  // namespace

void validate_beam(const LayerStack& stack, const LaserBeam& b,
                   Warnings* warnings) {
  if (!(b.omega > 0.0)) throw DomainError("drive frequency must be positive");
  if (!(b.waist > 0.0)) throw DomainError("beam waist must be positive");
  if (b.power < 0.0) throw DomainError("beam power must be nonnegative");
  if (b.direction != 1 && b.direction != -1)
    throw DomainError("beam direction must be +1 or -1");
  if (!(b.theta > 0.0) || !(b.theta < 0.5 * pi))
    throw DomainError("incidence angle must lie in (0, pi/2)");

  for (const RbLine& line : rb_lines()) {
    if (std::abs(b.omega - line.omega) < 100.0 * line.gamma) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "drive at %.6e rad/s is within 100 linewidths of the "
                    "atomic line at %.6e rad/s",
                    b.omega, line.omega);
      throw DomainError(msg);
    }
  }

  const double theta_t = tir_angle(stack.glass, b.omega);
  if (b.theta <= theta_t) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "incidence angle %.4f deg does not exceed the total "
                  "internal reflection angle %.4f deg",
                  b.theta * 180.0 / pi, theta_t * 180.0 / pi);
    throw DomainError(msg);
  }

  const complex a = rb_polarizability_volume(b.omega);
  if (std::abs(a.imag()) > 1e-4 * std::abs(a.real()))
    warn(warnings,
         "absorptive part of the polarizability exceeds 1e-4 of the "
         "dispersive part; heating is not modeled");
}

BeamParts beam_parts(const LayerStack& stack, const LaserBeam& b,
                     Warnings* warnings) {
  validate_beam(stack, b, warnings);
  const double n = stack.glass.n(b.omega);
  const double s = std::sin(b.theta);
  const double k_par = n * b.omega * s / c_light;
  const double koc = b.omega / c_light;
  // theta > theta_T guarantees k_par > omega/c
  const double kappa = std::sqrt(k_par * k_par - koc * koc);
  const complex t = multilayer_t_str(stack, b.omega, k_par);
  // |E_vac|^2 / |E_inc|^2 for a TM wave, including the longitudinal
  // component of the evanescent field: n^2 (2 n^2 sin^2 theta - 1)
  const double conv = n * n * (2.0 * n * n * s * s - 1.0);
  const double t_factor = std::norm(t) * conv;
  const double alpha_vol = rb_polarizability_volume(b.omega).real();
  return {alpha_vol, t_factor, kappa, k_par, std::arg(t)};
}

double one_laser_potential(const LayerStack& stack, const LaserBeam& b,
                           double L, Warnings* warnings) {
  if (L < 0.0) throw DomainError("height L must be nonnegative");
  const BeamParts p = beam_parts(stack, b, warnings);
  const double n = stack.glass.n(b.omega);
  return -p.alpha_vol * amp_sq(stack, p, b, L, n);
}

double two_laser_potential(const LayerStack& stack, const LaserBeam& b1,
                           const LaserBeam& b2, double x, double L, double t,
                           Warnings* warnings) {
  if (L < 0.0) throw DomainError("height L must be nonnegative");
  const BeamParts p1 = beam_parts(stack, b1, warnings);
  const BeamParts p2 = beam_parts(stack, b2, warnings);
  const double n1 = stack.glass.n(b1.omega);
  const double n2 = stack.glass.n(b2.omega);
  const double a1 = p1.alpha_vol, a2 = p2.alpha_vol;
  const double A1sq = amp_sq(stack, p1, b1, L, n1);
  const double A2sq = amp_sq(stack, p2, b2, L, n2);
  // TM polarization overlap of the two evanescent fields
  const double e12 = std::sin(b1.theta) * std::sin(b2.theta) +
                     std::cos(b1.theta) * std::cos(b2.theta) *
                         (b1.direction * b2.direction);
  const double phase = (b1.direction * p1.k_parallel -
                        b2.direction * p2.k_parallel) * x +
                       (b1.phase - b2.phase) + (p1.zeta - p2.zeta) -
                       (b1.omega - b2.omega) * t;
  const double cross =
      (a1 + a2) * std::sqrt(A1sq * A2sq) * e12 * std::cos(phase);
  return -(a1 * A1sq + a2 * A2sq + cross);
}

double two_laser_potential_avg(const LayerStack& stack, const LaserBeam& b1,
                               const LaserBeam& b2, double L,
                               Warnings* warnings) {
  if (L < 0.0) throw DomainError("height L must be nonnegative");
  if (b1.omega == b2.omega)
    throw DomainError(
        "beat averaging needs distinct drive frequencies; use the "
        "time-resolved form for a degenerate pair");
  const BeamParts p1 = beam_parts(stack, b1, warnings);
  const BeamParts p2 = beam_parts(stack, b2, warnings);
  const double A1sq = amp_sq(stack, p1, b1, L, stack.glass.n(b1.omega));
  const double A2sq = amp_sq(stack, p2, b2, L, stack.glass.n(b2.omega));
  return -(p1.alpha_vol * A1sq + p2.alpha_vol * A2sq);
}

double counterprop_lattice(const LayerStack& stack, const LaserBeam& b,
                           double x, double L, double delta_zeta,
                           Warnings* warnings) {
  if (L < 0.0) throw DomainError("height L must be nonnegative");
  const BeamParts p = beam_parts(stack, b, warnings);
  const double n = stack.glass.n(b.omega);
  const double envelope = p.alpha_vol * amp_sq(stack, p, b, L, n);
  const double modulation =
      1.0 - std::cos(2.0 * b.theta) *
                std::cos(2.0 * p.k_parallel * x + delta_zeta);
  return -2.0 * envelope * modulation;
}

DecouplingMoments thermal_decoupling_moments(std::complex<double> beta,
                                             double nu, int gh_order) {
  if (nu < 0.0) throw DomainError("thermal occupation must be nonnegative");
  const Rule& r = gauss_hermite(gh_order);
  const double root_nu = std::sqrt(nu);
  double abs_sq = 0.0;
  std::complex<double> mean{0.0, 0.0};
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      const std::complex<double> a =
          beta + root_nu * std::complex<double>(r.x[i], r.x[j]);
      const double w = r.w[i] * r.w[j];
      abs_sq += w * std::norm(a);
      mean += w * a;
    }
  }
  const double inv_pi = 1.0 / pi;
  return {abs_sq * inv_pi + 0.5, mean * inv_pi};
}

}  // namespace cpneq
