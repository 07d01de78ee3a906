#include "core/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>

#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/spectral.hpp"

namespace cpneq {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

double cp_exact(const TrapSetup& s, double L) {
  if (s.two_level) {
    double u = equilibrium_U_finiteT(*s.two_level, L, s.T, s.stack.film, s.quad);
    if (s.T_sp != s.T)
      u += plasmonic_dUf(*s.two_level, L, s.T_sp, s.T, s.stack.film.omega_p,
                         s.quad);
    return u;
  }
  if (s.T_sp != s.T)
    throw DomainError(
        "plasmon-bath imbalance requires the two-level atom model");
  return equilibrium_U_finiteT(rb_alpha_model(), L, s.T, s.stack.film, s.quad);
}

// Natural cubic spline second derivatives on knots (t, y).
std::vector<double> spline_coeffs(const std::vector<double>& t,
                                  const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> y2(n, 0.0), u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (t[i] - t[i - 1]) / (t[i + 1] - t[i - 1]);
    const double p = sig * y2[i - 1] + 2.0;
    y2[i] = (sig - 1.0) / p;
    u[i] = (y[i + 1] - y[i]) / (t[i + 1] - t[i]) -
           (y[i] - y[i - 1]) / (t[i] - t[i - 1]);
    u[i] = (6.0 * u[i] / (t[i + 1] - t[i - 1]) - sig * u[i - 1]) / p;
  }
  for (std::size_t k = n - 1; k-- > 1;) y2[k] = y2[k] * y2[k + 1] + u[k];
  y2[0] = 0.0;
  return y2;
}

struct Extremum {
  double x;
  double f;
};

Extremum golden_section(const std::function<double(double)>& f, double a,
                        double b, bool maximize, double rtol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double sgn = maximize ? 1.0 : -1.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > rtol * 0.5 * (a + b)) {
    if (sgn * f1 >= sgn * f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

FeatureReport analyze(const PotentialCurve& c, bool with_well) {
  const std::size_t n = c.L.size();
  if (n < 50 || c.U.size() != n)
    throw DomainError("feature search needs at least 50 grid points");
  FeatureReport rep;
  const std::size_t i_max =
      std::max_element(c.U.begin(), c.U.end()) - c.U.begin();
  const bool has_barrier = i_max > 0 && i_max + 1 < n && c.U[i_max] > 0.0;
  if (has_barrier) {
    const Extremum e = golden_section(c.evaluate, c.L[i_max - 1],
                                      c.L[i_max + 1], true, 1e-3);
    rep.barrier = Feature{e.x, e.f};
  }
  if (!with_well) return rep;
  // Deepest interior local minimum past the barrier. A global minimum would
  // land on the left grid edge whenever the attractive divergence is not
  // fenced off by a positive barrier, hiding genuine metastable dips.
  const std::size_t j_first = has_barrier ? i_max + 1 : 1;
  std::size_t j_best = 0;
  double best_depth = 0.0;
  for (std::size_t j = j_first; j + 1 < n; ++j) {
    if (c.U[j] <= c.U[j - 1] && c.U[j] <= c.U[j + 1]) {
      const double depth = c.U[n - 1] - c.U[j];
      if (depth > 0.0 && (j_best == 0 || depth > best_depth)) {
        j_best = j;
        best_depth = depth;
      }
    }
  }
  if (j_best != 0) {
    const Extremum e = golden_section(c.evaluate, c.L[j_best - 1],
                                      c.L[j_best + 1], false, 1e-3);
    rep.well = Feature{e.x, c.U[n - 1] - e.f};
  }
  return rep;
}

std::size_t beam_by_omega(const TrapSetup& s, bool reddest) {
  if (s.beams.empty()) throw DomainError("sweep axis refers to a beam");
  std::size_t best = 0;
  for (std::size_t i = 1; i < s.beams.size(); ++i) {
    const bool better = reddest ? s.beams[i].omega < s.beams[best].omega
                                : s.beams[i].omega > s.beams[best].omega;
    if (better) best = i;
  }
  return best;
}

TrapSetup apply_axis(TrapSetup s, SweepAxis ax, double v) {
  switch (ax) {
    case SweepAxis::ThetaI:
      if (s.beams.empty()) throw DomainError("sweep axis refers to a beam");
      s.beams[0].theta = v;
      break;
    case SweepAxis::ThetaR:
      s.beams[beam_by_omega(s, true)].theta = v;
      break;
    case SweepAxis::ThetaB:
      s.beams[beam_by_omega(s, false)].theta = v;
      break;
    case SweepAxis::PowerR:
      s.beams[beam_by_omega(s, true)].power = v;
      break;
    case SweepAxis::PowerB:
      s.beams[beam_by_omega(s, false)].power = v;
      break;
    case SweepAxis::OmegaL:
      if (s.beams.empty()) throw DomainError("sweep axis refers to a beam");
      s.beams[0].omega = v;
      break;
    case SweepAxis::X:
      s.x = v;
      break;
    case SweepAxis::L:
      s.height = v;
      break;
  }
  return s;
}

void check_axis_values(const AxisSpec& ax) {
  if (ax.values.empty()) throw DomainError("empty sweep axis");
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("grid bounds must satisfy 0 < lo < hi");
  if (n < 2) throw DomainError("grid needs at least two points");
  std::vector<double> g(n);
  const double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i);
  g.back() = hi;
  return g;
}

CpCurve::CpCurve(const TrapSetup& s, std::vector<double> grid, int threads)
    : grid_(std::move(grid)) {
  const std::size_t n = grid_.size();
  if (n < 2) throw DomainError("CP curve needs at least two grid points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw DomainError("CP grid must be strictly increasing");
  t_.resize(n);
  val_.resize(n);
  std::vector<std::exception_ptr> errs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    t_[i] = std::log(grid_[i]);
    try {
      val_[i] = cp_exact(s, grid_[i]);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  });
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
  y2_ = spline_coeffs(t_, val_);
}

double CpCurve::operator()(double L) const {
  if (!(L >= grid_.front()) || !(L <= grid_.back()))
    throw DomainError("height outside the CP curve grid");
  const double tt = std::log(L);
  std::size_t hi =
      std::upper_bound(t_.begin(), t_.end(), tt) - t_.begin();
  hi = std::clamp<std::size_t>(hi, 1, t_.size() - 1);
  const std::size_t lo = hi - 1;
  const double h = t_[hi] - t_[lo];
  const double a = (t_[hi] - tt) / h;
  const double b = (tt - t_[lo]) / h;
  return a * val_[lo] + b * val_[hi] +
         ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * h * h / 6.0;
}

double laser_potential(const TrapSetup& s, double L, double x,
                       Warnings* warnings) {
  switch (s.beams.size()) {
    case 0:
      return 0.0;
    case 1:
      return one_laser_potential(s.stack, s.beams[0], L, warnings);
    case 2: {
      const LaserBeam& b1 = s.beams[0];
      const LaserBeam& b2 = s.beams[1];
      if (std::abs(b1.omega - b2.omega) > 1e9)
        return two_laser_potential_avg(s.stack, b1, b2, L, warnings);
      return two_laser_potential(s.stack, b1, b2, x, L, s.time, warnings);
    }
    default:
      throw DomainError("at most two beams are supported");
  }
}

double surface_potential(const TrapSetup& s, double L) { return cp_exact(s, L); }

double total_potential(const TrapSetup& s, double L, Warnings* warnings) {
  return total_potential(s, L, s.x, warnings);
}

double total_potential(const TrapSetup& s, double L, double x,
                       Warnings* warnings) {
  return cp_exact(s, L) + laser_potential(s, L, x, warnings);
}

PotentialCurve trap_curve(const TrapSetup& s, const CpCurve& cp) {
  PotentialCurve c;
  c.L = cp.grid();
  c.U.resize(c.L.size());
  for (std::size_t i = 0; i < c.L.size(); ++i)
    c.U[i] = cp.values()[i] + laser_potential(s, c.L[i], s.x);
  // capture copies: the curve must outlive both arguments
  c.evaluate = [s, cp](double L) {
    return cp(L) + laser_potential(s, L, s.x);
  };
  return c;
}

FeatureReport find_barrier(const PotentialCurve& curve) {
  return analyze(curve, false);
}

FeatureReport find_well(const PotentialCurve& curve) {
  return analyze(curve, true);
}

PotentialMap sweep_1d(const TrapSetup& s, const AxisSpec& axis,
                      SweepQuantity quantity, int threads) {
  check_axis_values(axis);
  const std::size_t n = axis.values.size();
  PotentialMap map{axis, std::nullopt, std::vector<SweepPoint>(n)};

  if (quantity == SweepQuantity::Features) {
    if (axis.axis == SweepAxis::L)
      throw DomainError("L is the feature-search variable; sweep another axis");
    const CpCurve cp(s, log_grid(20e-9, 5e-6, 160), threads);
    parallel_for(n, threads, [&](std::size_t i) {
      SweepPoint& pt = map.points[i];
      try {
        const TrapSetup si = apply_axis(s, axis.axis, axis.values[i]);
        pt.features = analyze(trap_curve(si, cp), true);
        pt.value = pt.features.well ? pt.features.well->U : 0.0;
      } catch (const std::exception& e) {
        pt.error = e.what();
        pt.value = quiet_nan;
      }
    });
    return map;
  }

  if (axis.axis == SweepAxis::L) {
    parallel_for(n, threads, [&](std::size_t i) {
      SweepPoint& pt = map.points[i];
      try {
        const TrapSetup si = apply_axis(s, axis.axis, axis.values[i]);
        pt.value = total_potential(si, si.height, si.x);
      } catch (const std::exception& e) {
        pt.error = e.what();
        pt.value = quiet_nan;
      }
    });
    return map;
  }

  const double cp0 = cp_exact(s, s.height);
  parallel_for(n, threads, [&](std::size_t i) {
    SweepPoint& pt = map.points[i];
    try {
      const TrapSetup si = apply_axis(s, axis.axis, axis.values[i]);
      pt.value = cp0 + laser_potential(si, si.height, si.x);
    } catch (const std::exception& e) {
      pt.error = e.what();
      pt.value = quiet_nan;
    }
  });
  return map;
}

PotentialMap sweep_2d(const TrapSetup& s, const AxisSpec& axis1,
                      const AxisSpec& axis2, SweepQuantity quantity,
                      int threads) {
  check_axis_values(axis1);
  check_axis_values(axis2);
  if (axis1.axis == axis2.axis)
    throw DomainError("the two sweep axes must differ");
  const std::size_t n1 = axis1.values.size();
  const std::size_t n2 = axis2.values.size();
  const std::size_t n = n1 * n2;
  PotentialMap map{axis1, axis2, std::vector<SweepPoint>(n)};
  const auto setup_at = [&](std::size_t flat) {
    const std::size_t i1 = flat / n2;
    const std::size_t i2 = flat % n2;
    return apply_axis(apply_axis(s, axis1.axis, axis1.values[i1]), axis2.axis,
                      axis2.values[i2]);
  };

  if (quantity == SweepQuantity::Features) {
    if (axis1.axis == SweepAxis::L || axis2.axis == SweepAxis::L)
      throw DomainError("L is the feature-search variable; sweep another axis");
    const CpCurve cp(s, log_grid(20e-9, 5e-6, 160), threads);
    parallel_for(n, threads, [&](std::size_t i) {
      SweepPoint& pt = map.points[i];
      try {
        pt.features = analyze(trap_curve(setup_at(i), cp), true);
        pt.value = pt.features.well ? pt.features.well->U : 0.0;
      } catch (const std::exception& e) {
        pt.error = e.what();
        pt.value = quiet_nan;
      }
    });
    return map;
  }

  // surface part depends only on the height; precompute it per distinct L
  const bool l1 = axis1.axis == SweepAxis::L;
  const bool l2 = axis2.axis == SweepAxis::L;
  std::vector<double> cp_v;
  std::vector<std::string> cp_err;
  if (l1 || l2) {
    const std::vector<double>& ls = l1 ? axis1.values : axis2.values;
    cp_v.assign(ls.size(), quiet_nan);
    cp_err.assign(ls.size(), {});
    parallel_for(ls.size(), threads, [&](std::size_t i) {
      try {
        cp_v[i] = cp_exact(s, ls[i]);
      } catch (const std::exception& e) {
        cp_err[i] = e.what();
      }
    });
  } else {
    cp_v.assign(1, cp_exact(s, s.height));
    cp_err.assign(1, {});
  }

  parallel_for(n, threads, [&](std::size_t i) {
    SweepPoint& pt = map.points[i];
    const std::size_t iL = l1 ? i / n2 : (l2 ? i % n2 : 0);
    if (!cp_err[iL].empty()) {
      pt.error = cp_err[iL];
      pt.value = quiet_nan;
      return;
    }
    try {
      const TrapSetup si = setup_at(i);
      pt.value = cp_v[iL] + laser_potential(si, si.height, si.x);
    } catch (const std::exception& e) {
      pt.error = e.what();
      pt.value = quiet_nan;
    }
  });
  return map;
}

}  // namespace cpneq
