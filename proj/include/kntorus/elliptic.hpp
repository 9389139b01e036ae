#pragma once

#include <complex>

#include "kntorus/errors.hpp"

namespace kntorus {

using cplx = std::complex<double>;

/// Geometry of the punctured torus C/L, L = Z + tau Z, with markings at
/// 0 and 1/2 +- q.
struct TorusConfig {
  cplx tau{0.0, 1.0};
  cplx q{0.2, 0.0};
  double tol = 1e-10;
  int series_cutoff = 64;
  // Two-point mode: the out-points merge at 1/2. q is ignored (treated as 0).
  bool two_point = false;
  // Radius (in units of the real period) of the disks around poles where
  // evaluation is refused.
  double exclusion_radius = 1e-4;

  /// Throws ConfigError on Im(tau) <= 0, a non-positive tolerance, or a
  /// puncture offset congruent to 0 or 1/2 outside two-point mode.
  void validate() const;

  /// Effective puncture offset (0 in two-point mode).
  cplx offset() const { return two_point ? cplx{0.0, 0.0} : q; }
};

struct HalfPeriodValues {
  cplx e1;  // wp(1/2)
  cplx e2;  // wp(1/2 + tau/2)
  cplx e3;  // wp(tau/2)
  cplx g2;
  cplx g3;
};

struct WpPair {
  cplx value;
  cplx derivative;
};

/// z' = a + b tau congruent to z with a, b in [-1/2, 1/2).
cplx reduce_to_fundamental(cplx z, cplx tau);
cplx reduce_to_fundamental(cplx z, const TorusConfig& cfg);

/// Distance from z to the nearest lattice point.
double lattice_distance(cplx z, cplx tau);

/// Weierstrass wp for the lattice Z + tau Z, evaluated as a quotient of Jacobi
/// theta functions in the nome exp(i pi tau). Construction precomputes the
/// theta constants and the half-period values; evaluation is const and
/// thread-safe.
class Weierstrass {
 public:
  explicit Weierstrass(const TorusConfig& cfg);

  /// (wp(z), wp'(z)). Throws PoleProximity within the exclusion radius of a
  /// lattice point.
  WpPair operator()(cplx z) const;

  /// wp'' expressed through wp: 6 wp^2 - g2/2.
  cplx second_derivative_from_value(cplx wp) const { return 6.0 * wp * wp - 0.5 * half_.g2; }

  const HalfPeriodValues& half_periods() const { return half_; }
  cplx tau() const { return tau_; }
  cplx nome() const { return nome_; }
  const TorusConfig& config() const { return cfg_; }

 private:
  struct ThetaPair {
    cplx theta1, dtheta1, theta4, dtheta4;
  };
  ThetaPair thetas(cplx v) const;
  WpPair evaluate_reduced(cplx z) const;

  TorusConfig cfg_;
  cplx tau_;
  cplx nome_;
  cplx scale_;   // (pi theta2(0) theta3(0))^2
  cplx shift_;   // -(pi^2/3)(theta2(0)^4 + theta3(0)^4)
  HalfPeriodValues half_{};
};

WpPair wp_pair(cplx z, const TorusConfig& cfg);
HalfPeriodValues half_period_values(const TorusConfig& cfg);

}  // namespace kntorus
