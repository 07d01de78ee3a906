#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "core/atom.hpp"
#include "core/constants.hpp"
#include "core/errors.hpp"
#include "core/landscape.hpp"
#include "core/laser.hpp"
#include "core/materials.hpp"

using namespace cpneq;
using doctest::Approx;

namespace {

constexpr double w_red = 21.0e14;
constexpr double w_blue = 24.6e14;

LayerStack kretschmann() {
  return LayerStack{TabulatedDielectric::builtin_sapphire(), gold_drude(),
                    50e-9};
}

LaserBeam offset_beam(const LayerStack& s, double omega, double offset_deg,
                      double power) {
  const double theta = tir_angle(s.glass, omega) + offset_deg * pi / 180.0;
  return LaserBeam{omega, theta, power, 180e-6};
}

TrapSetup rb_setup(std::vector<LaserBeam> beams) {
  TrapSetup s{kretschmann(), std::nullopt, 300.0, 300.0, std::move(beams),
              0.0,           0.0,          200e-9, QuadCfg{}};
  return s;
}

// Synthetic curve over an analytic shape; evaluate is the shape itself, so
// golden refinement converges to the true extremum.
PotentialCurve synthetic(const std::vector<double>& L,
                         std::function<double(double)> f) {
  PotentialCurve c;
  c.L = L;
  c.U.reserve(L.size());
  for (double x : L) c.U.push_back(f(x));
  c.evaluate = std::move(f);
  return c;
}

}  // namespace

TEST_CASE("log grid construction and guards") {
  const std::vector<double> g = log_grid(20e-9, 5e-6, 160);
  REQUIRE(g.size() == 160);
  CHECK(g.front() == Approx(20e-9).epsilon(1e-15));
  CHECK(g.back() == 5e-6);
  // constant ratio between neighbors
  const double r0 = g[1] / g[0];
  for (std::size_t i = 1; i + 1 < g.size(); ++i)
    CHECK(g[i + 1] / g[i] == Approx(r0).epsilon(1e-12));
  // the frozen sample indices used below
  CHECK(g[40] == Approx(8.0220e-8).epsilon(1e-4));
  CHECK(g[80] == Approx(3.2177e-7).epsilon(1e-4));
  CHECK(g[120] == Approx(1.2906e-6).epsilon(1e-4));

  CHECK_THROWS_AS(log_grid(0.0, 1e-6, 10), DomainError);
  CHECK_THROWS_AS(log_grid(1e-6, 1e-6, 10), DomainError);
  CHECK_THROWS_AS(log_grid(1e-6, 1e-7, 10), DomainError);
  CHECK_THROWS_AS(log_grid(1e-9, 1e-6, 1), DomainError);
}

TEST_CASE("finder: monotone attraction has no features") {
  const std::vector<double> L = log_grid(20e-9, 5e-6, 80);
  const PotentialCurve c =
      synthetic(L, [](double x) { return -1e-45 / (x * x * x); });
  const FeatureReport rep = find_well(c);
  CHECK(!rep.barrier);
  CHECK(!rep.well);
}

TEST_CASE("finder: hump and dip at known positions") {
  const std::vector<double> L = log_grid(20e-9, 5e-6, 160);
  // gaussian hump in ln L at 80 nm, gaussian dip at 600 nm
  auto shape = [](double x) {
    const double u = std::log(x);
    const double hump = std::exp(-std::pow((u - std::log(80e-9)) / 0.25, 2));
    const double dip = std::exp(-std::pow((u - std::log(600e-9)) / 0.25, 2));
    return 3e-27 * hump - 1e-27 * dip;
  };
  const PotentialCurve c = synthetic(L, shape);
  const FeatureReport rep = find_well(c);
  REQUIRE(rep.barrier);
  REQUIRE(rep.well);
  CHECK(rep.barrier->L == Approx(80e-9).epsilon(5e-3));
  CHECK(rep.barrier->U == Approx(3e-27).epsilon(1e-6));
  CHECK(rep.well->L == Approx(600e-9).epsilon(5e-3));
  // depth referenced to the last grid point, which is essentially 0 here
  CHECK(rep.well->U == Approx(1e-27).epsilon(1e-4));
  CHECK(rep.barrier->L < rep.well->L);

  // find_barrier alone reports no well
  const FeatureReport b = find_barrier(c);
  CHECK(b.barrier);
  CHECK(!b.well);
}

TEST_CASE("finder: edge extrema are not features") {
  const std::vector<double> L = log_grid(20e-9, 5e-6, 60);
  // strictly decreasing: maximum on the left edge, minimum on the right edge
  const PotentialCurve down =
      synthetic(L, [](double x) { return 1e-27 * (5e-6 - x) / 5e-6; });
  const FeatureReport rep = find_well(down);
  CHECK(!rep.barrier);
  CHECK(!rep.well);

  // interior maximum but nonpositive: still no barrier
  const PotentialCurve neg = synthetic(L, [](double x) {
    const double u = std::log(x / 300e-9);
    return -1e-27 * (1.0 + u * u);
  });
  const FeatureReport rep2 = find_barrier(neg);
  CHECK(!rep2.barrier);
}

TEST_CASE("finder: dip behind the attractive edge is still a well") {
  // no positive barrier anywhere, curve plunges at the left edge; the
  // interior metastable dip must win over the edge minimum
  const std::vector<double> L = log_grid(20e-9, 5e-6, 160);
  // the edge value (-1.25e-26 at 20 nm) undercuts the dip, but the dive is
  // only ~0.1% of the dip amplitude out at 333 nm
  auto shape = [](double x) {
    const double dive = -1e-49 / (x * x * x);
    const double u = std::log(x);
    const double dip = std::exp(-std::pow((u - std::log(333e-9)) / 0.3, 2));
    return dive - 2.5e-27 * dip;
  };
  const PotentialCurve c = synthetic(L, shape);
  const FeatureReport rep = find_well(c);
  CHECK(!rep.barrier);
  REQUIRE(rep.well);
  CHECK(rep.well->L == Approx(333e-9).epsilon(1e-2));
  CHECK(rep.well->U == Approx(2.5e-27).epsilon(1e-2));
}

TEST_CASE("finder: the deeper of two dips wins in either order") {
  const std::vector<double> L = log_grid(20e-9, 5e-6, 160);
  auto two_dips = [&](double d1, double d2) {
    return synthetic(L, [d1, d2](double x) {
      const double u = std::log(x);
      const double a = std::exp(-std::pow((u - std::log(100e-9)) / 0.2, 2));
      const double b = std::exp(-std::pow((u - std::log(900e-9)) / 0.2, 2));
      return -d1 * a - d2 * b;
    });
  };
  const FeatureReport deep_far = find_well(two_dips(1e-27, 3e-27));
  REQUIRE(deep_far.well);
  CHECK(deep_far.well->L == Approx(900e-9).epsilon(1e-2));
  const FeatureReport deep_near = find_well(two_dips(3e-27, 1e-27));
  REQUIRE(deep_near.well);
  CHECK(deep_near.well->L == Approx(100e-9).epsilon(1e-2));
}

TEST_CASE("finder rejects short grids") {
  const std::vector<double> L = log_grid(20e-9, 5e-6, 40);
  const PotentialCurve c = synthetic(L, [](double) { return 0.0; });
  CHECK_THROWS_AS(find_well(c), DomainError);
}

TEST_CASE("center-dot two-laser landscape") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({offset_beam(st, w_red, 0.502, 1.2),
                          offset_beam(st, w_blue, 0.691, 1.2)});
  const CpCurve cp(s, log_grid(20e-9, 5e-6, 160));
  const PotentialCurve c = trap_curve(s, cp);
  REQUIRE(c.L.size() == 160);

  // curve samples frozen against an independent implementation
  CHECK(c.L[40] == Approx(8.0220e-8).epsilon(1e-4));
  CHECK(c.U[40] == Approx(5.4945686749e-26).epsilon(5e-3));
  CHECK(c.U[80] == Approx(2.5090427572e-26).epsilon(5e-3));
  CHECK(c.U[120] == Approx(6.7213738054e-28).epsilon(5e-3));
  CHECK(c.U[159] == Approx(-2.3841208170e-31).epsilon(5e-3));

  // knot values are exact: spline interpolates only between knots
  for (std::size_t i : {0ul, 59ul, 159ul})
    CHECK(c.evaluate(c.L[i]) == Approx(c.U[i]).epsilon(1e-12));

  const FeatureReport rep = find_well(c);
  REQUIRE(rep.barrier);
  REQUIRE(rep.well);
  CHECK(rep.barrier->L == Approx(62.91e-9).epsilon(4e-2));
  CHECK(rep.barrier->U / k_B * 1e6 == Approx(4078.99).epsilon(1.5e-2));
  CHECK(rep.well->L == Approx(2249.56e-9).epsilon(4e-2));
  CHECK(rep.well->U / k_B * 1e6 == Approx(2.3504).epsilon(1.5e-2));
  CHECK(rep.barrier->L < rep.well->L);

  // feature stability under grid refinement
  const CpCurve cp2(s, log_grid(20e-9, 5e-6, 320));
  const FeatureReport rep2 = find_well(trap_curve(s, cp2));
  REQUIRE(rep2.barrier);
  REQUIRE(rep2.well);
  CHECK(rep.barrier->L == Approx(rep2.barrier->L).epsilon(1e-2));
  CHECK(rep.barrier->U == Approx(rep2.barrier->U).epsilon(5e-3));
  CHECK(rep.well->L == Approx(rep2.well->L).epsilon(1e-2));
  CHECK(rep.well->U == Approx(rep2.well->U).epsilon(5e-3));
}

TEST_CASE("detuned offsets: barrierless well at 333 nm") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({offset_beam(st, w_red, 0.510, 1.2),
                          offset_beam(st, w_blue, 0.770, 1.2)});
  const CpCurve cp(s, log_grid(20e-9, 5e-6, 160));
  const FeatureReport rep = find_well(trap_curve(s, cp));
  CHECK(!rep.barrier);
  REQUIRE(rep.well);
  CHECK(rep.well->L == Approx(333e-9).epsilon(5e-2));
  CHECK(rep.well->U / k_B * 1e6 == Approx(180.71).epsilon(1.5e-2));
}

TEST_CASE("one-blue-laser pipeline point") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({offset_beam(st, w_blue, 0.700, 0.2)});
  const double L = 200e-9;

  const double u_cp = surface_potential(s, L);
  const double u_l = laser_potential(s, L, s.x);
  const double u = total_potential(s, L);
  CHECK(u_cp == Approx(-7.0747603182e-29).epsilon(1e-9));
  CHECK(u_l == Approx(7.7065660073e-27).epsilon(1e-9));
  CHECK(u == Approx(u_cp + u_l).epsilon(1e-13));
  CHECK(u / k_B * 1e6 == Approx(553.0601).epsilon(1e-6));

  // the x-overload matches at the setup's lateral position
  CHECK(total_potential(s, L, 0.0) == Approx(u).epsilon(1e-13));
}

TEST_CASE("CpCurve spline accuracy between knots") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({});
  const CpCurve cp(s, log_grid(20e-9, 5e-6, 160));
  for (double L : {31e-9, 107e-9, 480e-9, 2.1e-6}) {
    const double exact = surface_potential(s, L);
    CHECK(cp(L) == Approx(exact).epsilon(1e-4));
  }
}

TEST_CASE("laser term dispatch by beam count") {
  const LayerStack st = kretschmann();
  const LaserBeam red = offset_beam(st, w_red, 0.502, 1.2);
  const LaserBeam blue = offset_beam(st, w_blue, 0.691, 1.2);
  const double L = 150e-9;

  TrapSetup none = rb_setup({});
  CHECK(laser_potential(none, L, 0.0) == 0.0);

  TrapSetup one = rb_setup({blue});
  CHECK(laser_potential(one, L, 0.0) ==
        Approx(one_laser_potential(st, blue, L)).epsilon(1e-13));

  // distinct frequencies: beat-averaged
  TrapSetup pair = rb_setup({red, blue});
  CHECK(laser_potential(pair, L, 0.0) ==
        Approx(two_laser_potential_avg(st, red, blue, L)).epsilon(1e-13));

  // degenerate pair: time-resolved standing pattern at the setup's x
  LaserBeam back = blue;
  back.direction = -1;
  back.phase = blue.phase - 0.4;
  TrapSetup latt = rb_setup({blue, back});
  latt.x = 53e-9;
  CHECK(laser_potential(latt, L, latt.x) ==
        Approx(two_laser_potential(st, blue, back, latt.x, L, 0.0))
            .epsilon(1e-13));
  CHECK(laser_potential(latt, L, latt.x) ==
        Approx(counterprop_lattice(st, blue, latt.x, L, 0.4)).epsilon(1e-13));
}

TEST_CASE("rubidium refuses a plasmon-bath imbalance") {
  TrapSetup s = rb_setup({});
  s.T_sp = 1000.0;
  CHECK_THROWS_AS(surface_potential(s, 200e-9), DomainError);

  // the two-level model carries the imbalance swap instead
  s.two_level = atom_from_volume(0.9 * gold_drude().omega_sp(), 46e-30);
  CHECK(std::isfinite(surface_potential(s, 200e-9)));
}

TEST_CASE("sweeps are deterministic across thread counts") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({offset_beam(st, w_blue, 0.691, 0.2)});

  const double thT = tir_angle(st.glass, w_blue);
  AxisSpec theta{SweepAxis::ThetaB, {}};
  for (int i = 0; i < 5; ++i)
    theta.values.push_back(thT + (0.4 + 0.1 * i) * pi / 180.0);

  const PotentialMap a = sweep_1d(s, theta, SweepQuantity::Features, 1);
  const PotentialMap b = sweep_1d(s, theta, SweepQuantity::Features, 4);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].value == b.points[i].value);
    CHECK(a.points[i].error == b.points[i].error);
    CHECK(a.points[i].features.barrier.has_value() ==
          b.points[i].features.barrier.has_value());
    if (a.points[i].features.barrier)
      CHECK(a.points[i].features.barrier->L ==
            b.points[i].features.barrier->L);
  }

  AxisSpec xs{SweepAxis::X, {0.0, 50e-9, 100e-9}};
  AxisSpec ls{SweepAxis::L, {100e-9, 200e-9, 400e-9, 800e-9}};
  const PotentialMap m1 = sweep_2d(s, xs, ls, SweepQuantity::Potential, 1);
  const PotentialMap m3 = sweep_2d(s, xs, ls, SweepQuantity::Potential, 3);
  REQUIRE(m1.points.size() == 12);
  for (std::size_t i = 0; i < m1.points.size(); ++i)
    CHECK(m1.points[i].value == m3.points[i].value);
}

TEST_CASE("sweep records per-point failures and continues") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({offset_beam(st, w_blue, 0.691, 0.2)});
  const double thT = tir_angle(st.glass, w_blue);

  AxisSpec theta{SweepAxis::ThetaB,
                 {thT - 0.1 * pi / 180.0, thT + 0.5 * pi / 180.0}};
  const PotentialMap m = sweep_1d(s, theta, SweepQuantity::Potential, 2);
  REQUIRE(m.points.size() == 2);
  CHECK(std::isnan(m.points[0].value));
  CHECK(m.points[0].error.find("total internal reflection") !=
        std::string::npos);
  CHECK(m.points[1].error.empty());
  CHECK(std::isfinite(m.points[1].value));
}

TEST_CASE("sweep axis guards") {
  const LayerStack st = kretschmann();
  TrapSetup s = rb_setup({offset_beam(st, w_blue, 0.691, 0.2)});

  AxisSpec ls{SweepAxis::L, {100e-9, 200e-9}};
  CHECK_THROWS_AS(sweep_1d(s, ls, SweepQuantity::Features, 1), DomainError);
  CHECK_THROWS_AS(sweep_1d(s, AxisSpec{SweepAxis::X, {}},
                           SweepQuantity::Potential, 1),
                  DomainError);
  CHECK_THROWS_AS(sweep_2d(s, ls, ls, SweepQuantity::Potential, 1),
                  DomainError);

  // a beam axis on a beam-free setup fails per point, not wholesale
  TrapSetup bare = rb_setup({});
  AxisSpec theta{SweepAxis::ThetaI, {0.7}};
  const PotentialMap m = sweep_1d(bare, theta, SweepQuantity::Potential, 1);
  REQUIRE(m.points.size() == 1);
  CHECK(std::isnan(m.points[0].value));
  CHECK(m.points[0].error.find("beam") != std::string::npos);

  // an L-axis potential sweep evaluates the total at each height
  AxisSpec one_l{SweepAxis::L, {200e-9}};
  const PotentialMap ml = sweep_1d(s, one_l, SweepQuantity::Potential, 1);
  CHECK(ml.points[0].value ==
        Approx(total_potential(s, 200e-9, s.x)).epsilon(1e-13));
}
