#pragma once

// Shared independent oracles for the test suites. Everything here is
// deliberately simple and separate from the library's computational paths.

#include <cmath>
#include <functional>

#include "sps/quad.hpp"

namespace oracles {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.5772156649015328606;

// E1(x) = -Ei(-x); std::expint is Ei.
inline double e1(double x) { return -std::expint(-x); }

// Newtonian log potential of the unit Gaussian density rho = e^{-r^2}:
//   w(r) = pi ln r + (pi/2) E1(r^2),  w(0) = -(pi/2) gammaE.
inline double gaussian_log_potential(double r) {
  if (r == 0.0) return -0.5 * kPi * kEulerGamma;
  return kPi * std::log(r) + 0.5 * kPi * e1(r * r);
}

// V of the unit-amplitude, unit-width Gaussian u = e^{-|x|^2/2}:
// (pi^2/2)(ln 2 - gammaE).
inline double gaussian_V() {
  return 0.5 * kPi * kPi * (std::log(2.0) - kEulerGamma);
}

// ||e^{-|x|^2/2}||_*^2 = 2 pi int ln(1+r) e^{-r^2} r dr
inline double gaussian_star_norm_sq() {
  return 2.0 * kPi *
         sps::integrate_panels(
             [](double r) { return std::log1p(r) * std::exp(-r * r) * r; },
             0.0, 30.0, 1e-12, 64);
}

}  // namespace oracles
