#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cpneq {

using complex = std::complex<double>;

struct DrudeMetal {
  double omega_p;  // plasma frequency, rad/s
  double gamma;    // relaxation rate, rad/s

  double omega_sp() const;  // asymptotic surface-plasmon frequency Omega_P/sqrt(2)
  double lambda_p() const;  // plasma wavelength 2 pi c / Omega_P
  DrudeMetal lossless() const { return {omega_p, 0.0}; }
};

// Gold parameters used throughout: Omega_P = 9 eV, Gamma = 35 meV.
DrudeMetal gold_drude();

// eps(w) = 1 - Omega_P^2 / [w (w + i Gamma)], w > 0.
complex drude_permittivity(double w, const DrudeMetal& m);

// eps(i xi) = 1 + Omega_P^2 / [xi (xi + Gamma)], real and > 1.
double drude_permittivity_imag_axis(double xi, const DrudeMetal& m);

// Branch of sqrt applied to kappa^2: Re kappa >= 0 and, on the purely
// propagating ray (Re kappa = 0), Im kappa <= 0. Makes e^{-2 kappa z}
// decaying or outgoing for z > 0.
complex kappa_branch_of(complex kappa_squared);

// kappa = sqrt(k^2 - eps w^2/c^2) on that branch.
complex kappa(double w, double k, complex eps);

enum class Polarization { TE, TM };

// Vacuum-side reflection off a half-space of permittivity eps.
// Throws PoleError if the TM denominator vanishes (lossless plasmon hit).
complex fresnel(double w, double k, complex eps, Polarization pol);

// TM reflection/transmission between two half-spaces, magnetic-field
// amplitude convention: r = (e_j k_i - e_i k_j)/D, t = 2 e_j k_i / D,
// D = e_j kappa_i + e_i kappa_j.
struct InterfaceTM {
  complex r;
  complex t;
};
InterfaceTM interface_tm(double w, double k, complex eps_i, complex eps_j);

class TabulatedDielectric {
 public:
  // Grid strictly increasing, >= 2 points, Im eps >= 0 everywhere.
  TabulatedDielectric(std::vector<double> omega, std::vector<complex> eps);

  // Plain text, three columns (omega rad/s, Re eps, Im eps), '#' comments.
  static TabulatedDielectric from_file(const std::string& path);

  // Sapphire model shipped with the library; identical content to
  // data/sapphire_eps.dat.
  static TabulatedDielectric builtin_sapphire();

  // Linear interpolation on Re and Im independently. Queries outside the
  // grid throw DomainError, never extrapolate.
  complex eps(double w) const;

  // Refractive index sqrt(Re eps); requires near-lossless data at w.
  double n(double w) const;

  double omega_min() const { return w_.front(); }
  double omega_max() const { return w_.back(); }
  std::size_t size() const { return w_.size(); }

 private:
  std::vector<double> w_;
  std::vector<complex> e_;
};

struct LayerStack {
  TabulatedDielectric glass;
  DrudeMetal film;
  double thickness;  // metal film thickness delta, m

  LayerStack(TabulatedDielectric g, DrudeMetal f, double delta);
};

// Transmission coefficient of glass / metal film / vacuum:
// t_str = t_gl/m t_m/v e^{-kappa_m delta} / (1 + r_gl/m r_m/v e^{-2 kappa_m delta}).
// Requires 0 <= k <= n_gl w / c (the wave must exist in the glass).
complex multilayer_t_str(const LayerStack& s, double w, double k);

// arcsin(1/n_gl); DomainError when n_gl <= 1.
double tir_angle(const TabulatedDielectric& glass, double w);

}  // namespace cpneq
