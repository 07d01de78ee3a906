#include "materials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "constants.hpp"
#include "errors.hpp"

namespace cpneq {

double DrudeMetal::omega_sp() const { return omega_p / std::sqrt(2.0); }

double DrudeMetal::lambda_p() const { return 2.0 * pi * c_light / omega_p; }

DrudeMetal gold_drude() {
  return {9.0 * electron_volt / hbar, 0.035 * electron_volt / hbar};
}

complex drude_permittivity(double w, const DrudeMetal& m) {
  if (w <= 0.0) throw DomainError("drude_permittivity: w must be > 0");
  return 1.0 - m.omega_p * m.omega_p / (w * complex(w, m.gamma));
}

double drude_permittivity_imag_axis(double xi, const DrudeMetal& m) {
  if (xi <= 0.0) throw DomainError("drude_permittivity_imag_axis: xi must be > 0");
  return 1.0 + m.omega_p * m.omega_p / (xi * (xi + m.gamma));
}

complex kappa_branch_of(complex kappa_squared) {
  complex v = std::sqrt(kappa_squared);
  // Principal sqrt already has Re >= 0; pin the two edge cases.
  if (v.real() < 0.0) v = -v;
  if (v.real() == 0.0 && v.imag() > 0.0) v = -v;
  return v;
}

complex kappa(double w, double k, complex eps) {
  const double wc = w / c_light;
  return kappa_branch_of(complex(k * k, 0.0) - eps * wc * wc);
}

complex fresnel(double w, double k, complex eps, Polarization pol) {
  const complex kv = kappa(w, k, complex(1.0, 0.0));
  const complex km = kappa(w, k, eps);
  if (pol == Polarization::TE) {
    const complex den = kv + km;
    if (std::abs(den) == 0.0) throw PoleError("fresnel: TE denominator vanished");
    return (kv - km) / den;
  }
  const complex den = eps * kv + km;
  // A true zero only happens for lossless eps exactly on the plasmon
  // dispersion; flag it instead of returning inf.
  if (std::abs(den) < 1e-14 * (std::abs(eps * kv) + std::abs(km)))
    throw PoleError("fresnel: TM surface-mode pole");
  return (eps * kv - km) / den;
}

InterfaceTM interface_tm(double w, double k, complex eps_i, complex eps_j) {
  const complex ki = kappa(w, k, eps_i);
  const complex kj = kappa(w, k, eps_j);
  const complex den = eps_j * ki + eps_i * kj;
  if (std::abs(den) < 1e-14 * (std::abs(eps_j * ki) + std::abs(eps_i * kj)))
    throw PoleError("interface_tm: denominator vanished");
  return {(eps_j * ki - eps_i * kj) / den, 2.0 * eps_j * ki / den};
}

TabulatedDielectric::TabulatedDielectric(std::vector<double> omega,
                                         std::vector<complex> eps)
    : w_(std::move(omega)), e_(std::move(eps)) {
  if (w_.size() != e_.size())
    throw DomainError("TabulatedDielectric: column length mismatch");
  if (w_.size() < 2) throw DomainError("TabulatedDielectric: need >= 2 points");
  for (std::size_t i = 0; i + 1 < w_.size(); ++i)
    if (!(w_[i] < w_[i + 1]))
      throw DomainError("TabulatedDielectric: grid must be strictly increasing");
  for (const complex& e : e_)
    if (e.imag() < 0.0)
      throw DomainError("TabulatedDielectric: Im eps < 0 violates passivity");
}

TabulatedDielectric TabulatedDielectric::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("TabulatedDielectric: cannot open " + path);
  std::vector<double> w;
  std::vector<complex> e;
  std::string line;
  while (std::getline(in, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    double om, re, im;
    if (ss >> om >> re >> im) {
      w.push_back(om);
      e.emplace_back(re, im);
    } else {
      ss.clear();
      std::string junk;
      if (ss >> junk)
        throw DomainError("TabulatedDielectric: malformed line in " + path);
    }
  }
  return TabulatedDielectric(std::move(w), std::move(e));
}

TabulatedDielectric TabulatedDielectric::builtin_sapphire() {
  // e(w) = 2.92323 + 0.039218 (w / 1e15)^2 over 19.0e14 .. 26.0e14.
  std::vector<double> w;
  std::vector<complex> e;
  for (int i = 0; i <= 140; ++i) {
    const double om = 19.0e14 + 0.05e14 * i;
    const double x = om / 1.0e15;
    w.push_back(om);
    e.emplace_back(2.92323 + 0.039218 * x * x, 0.0);
  }
  return TabulatedDielectric(std::move(w), std::move(e));
}

complex TabulatedDielectric::eps(double w) const {
  if (w < w_.front() || w > w_.back()) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "TabulatedDielectric: w = %.6g outside [%.6g, %.6g]", w,
                  w_.front(), w_.back());
    throw DomainError(buf);
  }
  const auto it = std::upper_bound(w_.begin(), w_.end(), w);
  if (it == w_.end()) return e_.back();
  const std::size_t j = static_cast<std::size_t>(it - w_.begin());
  if (j == 0) return e_.front();
  const double t = (w - w_[j - 1]) / (w_[j] - w_[j - 1]);
  return e_[j - 1] + t * (e_[j] - e_[j - 1]);
}

double TabulatedDielectric::n(double w) const {
  const complex e = eps(w);
  if (e.imag() > 1e-6 * std::abs(e.real()))
    throw DomainError("TabulatedDielectric::n: material is lossy at this w");
  if (e.real() <= 0.0)
    throw DomainError("TabulatedDielectric::n: Re eps <= 0");
  return std::sqrt(e.real());
}

LayerStack::LayerStack(TabulatedDielectric g, DrudeMetal f, double delta)
    : glass(std::move(g)), film(f), thickness(delta) {
  if (!(thickness >= 0.0)) throw DomainError("LayerStack: thickness < 0");
}

complex multilayer_t_str(const LayerStack& s, double w, double k) {
  const complex eg = s.glass.eps(w);
  const double ng = s.glass.n(w);
  if (k < 0.0 || k > ng * w / c_light * (1.0 + 1e-12))
    throw DomainError("multilayer_t_str: k outside glass light cone");
  const complex em = drude_permittivity(w, s.film);
  const InterfaceTM gm = interface_tm(w, k, eg, em);
  const InterfaceTM mv = interface_tm(w, k, em, complex(1.0, 0.0));
  const complex km = kappa(w, k, em);
  const complex decay = std::exp(-km * s.thickness);
  return gm.t * mv.t * decay / (1.0 + gm.r * mv.r * decay * decay);
}

double tir_angle(const TabulatedDielectric& glass, double w) {
  const double ng = glass.n(w);
  if (ng <= 1.0) throw DomainError("tir_angle: n_glass <= 1, no TIR");
  return std::asin(1.0 / ng);
}

}  // namespace cpneq
