#pragma once

#include <complex>

#include "materials.hpp"
#include "quad.hpp"

namespace cpneq {

// Trace of the reflected (scattering) part of the Green tensor at the atom
// position, height L above the surface, SI units.

// Imaginary axis, omega = i xi: real, positive-decaying integrand.
double green_trace_imag(double L, double xi, const DrudeMetal& m,
                        const QuadCfg& cfg = {});

// Film-thickness variant: metal film of stack.thickness backed by vacuum.
// The glass table covers only the laser band and is never continued off the
// real axis; the dominant finite-thickness correction is what this keeps.
double green_trace_imag(double L, double xi, const LayerStack& stack,
                        const QuadCfg& cfg = {});

// Real frequency: evanescent (decaying) plus propagating (oscillatory)
// sectors. Panels follow the surface-plasmon pole below Omega_sp and the
// metal-side branch cusp above Omega_P.
complex green_trace_real(double L, double w, const DrudeMetal& m,
                         const QuadCfg& cfg = {});

// Analytic continuation to complex frequency, Im w >= 0; used by the
// vertical-contour tail of the real-axis Delta integral.
complex green_trace_complex(double L, complex w, const DrudeMetal& m,
                            const QuadCfg& cfg = {});

}  // namespace cpneq
