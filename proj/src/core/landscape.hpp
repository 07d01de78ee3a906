#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "laser.hpp"
#include "materials.hpp"
#include "potentials.hpp"
#include "quad.hpp"

namespace cpneq {

// One trap scenario: surface stack, atom model, temperatures, drive beams.
// An empty two_level means the tabulated Rb two-line atom. A plasmon bath
// temperature different from T adds the imbalance swap (two-level only).
struct TrapSetup {
  LayerStack stack;
  std::optional<TwoLevelAtom> two_level;
  double T = 300.0;
  double T_sp = 300.0;
  std::vector<LaserBeam> beams;  // 0, 1, or 2
  double x = 0.0;                // lateral position, m
  double time = 0.0;             // for the time-resolved bichromatic case
  double height = 200e-9;        // L used when the sweep axis is not L
  QuadCfg quad;
};

std::vector<double> log_grid(double lo, double hi, int n);

// Surface part (equilibrium + imbalance swap) sampled exactly on a fixed
// log grid, with a natural cubic spline in ln L as continuous evaluator.
// Feature refinement between knots runs on the spline; its interpolation
// error is orders of magnitude below the feature-stability tolerances.
class CpCurve {
 public:
  CpCurve(const TrapSetup& s, std::vector<double> grid, int threads = 0);
  double operator()(double L) const;
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return val_; }

 private:
  std::vector<double> grid_, t_, val_, y2_;
};

// Laser terms alone; 0, 1, or 2 beams. A bichromatic pair is beat-averaged
// when the frequencies differ by more than 1e9 rad/s, time-resolved
// otherwise.
double laser_potential(const TrapSetup& s, double L, double x,
                       Warnings* warnings = nullptr);

// Surface part alone: equilibrium + imbalance swap, no beams.
double surface_potential(const TrapSetup& s, double L);

// Surface part (exact, no spline) plus laser terms.
double total_potential(const TrapSetup& s, double L,
                       Warnings* warnings = nullptr);
double total_potential(const TrapSetup& s, double L, double x,
                       Warnings* warnings = nullptr);

struct PotentialCurve {
  std::vector<double> L;
  std::vector<double> U;
  std::function<double(double)> evaluate;  // continuous in [L.front, L.back]
};
PotentialCurve trap_curve(const TrapSetup& s, const CpCurve& cp);

struct Feature {
  double L;
  double U;  // height (J) for a barrier, depth (J) for a well
};

// Barrier: global grid maximum, present when interior and positive. Well:
// deepest interior local minimum beyond the barrier (from the left edge when
// no barrier exists), present when its depth, referenced to the last grid
// point, is positive. Extrema are refined by golden section on the
// continuous evaluator to 1e-3 relative in L. When both exist the barrier
// sits at smaller L by construction.
struct FeatureReport {
  std::optional<Feature> barrier;
  std::optional<Feature> well;
};
FeatureReport find_barrier(const PotentialCurve& curve);
FeatureReport find_well(const PotentialCurve& curve);

enum class SweepAxis { ThetaI, ThetaR, ThetaB, PowerR, PowerB, OmegaL, X, L };
enum class SweepQuantity { Potential, Features };

struct AxisSpec {
  SweepAxis axis;
  std::vector<double> values;  // radians / watts / rad s^-1 / m
};

// value: total potential (J) in Potential mode; well depth or 0 (J) in
// Features mode, with the full report alongside. A failed point carries its
// error text and a NaN value; the sweep continues.
struct SweepPoint {
  double value = 0.0;
  std::string error;
  FeatureReport features;
};

struct PotentialMap {
  AxisSpec axis1;
  std::optional<AxisSpec> axis2;
  std::vector<SweepPoint> points;  // row-major over (axis1, axis2)
};

// Points are independent and run on a small thread pool (threads <= 0 uses
// the hardware count); results are merged in grid order, so the output is
// identical for any thread count.
PotentialMap sweep_1d(const TrapSetup& s, const AxisSpec& axis,
                      SweepQuantity quantity, int threads = 0);
PotentialMap sweep_2d(const TrapSetup& s, const AxisSpec& axis1,
                      const AxisSpec& axis2, SweepQuantity quantity,
                      int threads = 0);

}  // namespace cpneq
