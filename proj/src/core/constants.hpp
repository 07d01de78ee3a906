#pragma once

namespace cpneq {

// CODATA 2018 exact/recommended values, SI throughout.
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_B = 1.380649e-23;       // J/K
inline constexpr double c_light = 2.99792458e8;   // m/s
inline constexpr double eps0 = 8.8541878128e-12;  // F/m
inline constexpr double electron_volt = 1.602176634e-19;  // J

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double four_pi_eps0 = 4.0 * pi * eps0;

}  // namespace cpneq
