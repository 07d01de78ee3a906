#pragma once

#include <complex>

#include "atom.hpp"
#include "materials.hpp"

namespace cpneq {

// theta is the incidence angle inside the glass, radians; direction is the
// sign of the in-plane wavevector component along x.
struct LaserBeam {
  double omega;
  double theta;
  double power;
  double waist;
  double phase = 0.0;
  int direction = +1;
};

// Rejects geometries the evanescent-wave model cannot describe: incidence
// outside (0, pi/2) or below the total-internal-reflection angle, drive
// within 100 linewidths of an atomic line, nonpositive waist, negative
// power. Appends a note when the neglected absorptive part of the
// polarizability is not utterly negligible.
void validate_beam(const LayerStack& stack, const LaserBeam& b,
                   Warnings* warnings = nullptr);

struct BeamParts {
  double alpha_vol;   // Re alpha/(4 pi eps0) at the drive frequency, m^3
  double t_factor;    // evanescent intensity enhancement behind the film
  double kappa;       // vacuum-side decay constant, 1/m
  double k_parallel;  // in-plane wavenumber, 1/m
  double zeta;        // transmission phase arg t_str, radians
};
BeamParts beam_parts(const LayerStack& stack, const LaserBeam& b,
                     Warnings* warnings = nullptr);

// U = -(2 P / (c n w^2)) alpha_vol T e^{-2 kappa L}. The glass-side beam
// intensity convention is I_gl = P/(2 pi w^2).
double one_laser_potential(const LayerStack& stack, const LaserBeam& b,
                           double L, Warnings* warnings = nullptr);

// Instantaneous bichromatic potential at lateral position x and time t; the
// cross term beats at omega_1 - omega_2.
double two_laser_potential(const LayerStack& stack, const LaserBeam& b1,
                           const LaserBeam& b2, double x, double L, double t,
                           Warnings* warnings = nullptr);

// Beat-averaged form: the cross term integrates to zero. Only meaningful
// when the two drive frequencies actually differ.
double two_laser_potential_avg(const LayerStack& stack, const LaserBeam& b1,
                               const LaserBeam& b2, double L,
                               Warnings* warnings = nullptr);

// Two counterpropagating copies of the same beam: a standing evanescent
// lattice of period pi / k_parallel. delta_zeta is the relative drive phase;
// it translates the pattern without changing its envelope.
double counterprop_lattice(const LayerStack& stack, const LaserBeam& b,
                           double x, double L, double delta_zeta = 0.0,
                           Warnings* warnings = nullptr);

// Gauss-Hermite moments of a displaced thermal field state: amplitude beta,
// thermal occupation nu. For the factorization check <|a|^2> = |beta|^2 +
// nu + 1/2 and <a> = beta; the vacuum half quantum is added analytically.
struct DecouplingMoments {
  double mean_abs_sq;
  std::complex<double> mean_alpha;
};
DecouplingMoments thermal_decoupling_moments(std::complex<double> beta,
                                             double nu, int gh_order = 40);

}  // namespace cpneq
