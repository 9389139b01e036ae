#pragma once

#include <complex>
#include <numbers>

namespace kntorus {

/// (1/2 pi i) * contour integral of f over |z - center| = radius, counter-
/// clockwise, by the periodic trapezoid rule. Exponentially convergent for
/// integrands analytic in an annulus around the circle.
template <class F>
std::complex<double> circle_residue(F&& f, std::complex<double> center, double radius, int nodes) {
  std::complex<double> acc{};
  for (int n = 0; n < nodes; ++n) {
    const double theta = 2.0 * std::numbers::pi * n / nodes;
    const std::complex<double> dz = radius * std::complex<double>(std::cos(theta), std::sin(theta));
    acc += f(center + dz) * dz;
  }
  return acc / static_cast<double>(nodes);
}

/// Integral of f along start + s*step, s in [0, 1), for integrands that are
/// periodic under z -> z + step (closed cycles on the torus).
template <class F>
std::complex<double> cycle_integral(F&& f, std::complex<double> start, std::complex<double> step, int nodes) {
  std::complex<double> acc{};
  for (int n = 0; n < nodes; ++n) acc += f(start + (static_cast<double>(n) / nodes) * step);
  return acc * step / static_cast<double>(nodes);
}

}  // namespace kntorus
