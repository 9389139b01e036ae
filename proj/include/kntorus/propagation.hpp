#pragma once

#include <array>
#include <vector>

#include "kntorus/elliptic.hpp"
#include "kntorus/exec.hpp"

namespace kntorus {

/// Markings P1 = 0, Q1 = 1/2 + q, Q2 = 1/2 - q (reduced to the fundamental
/// domain) together with p_q = wp(1/2 + q) and wp'(1/2 + q).
struct PunctureSet {
  cplx p_in;
  cplx q_out_1;
  cplx q_out_2;
  cplx p_q;
  cplx dp_q;
};

struct LevelLineSample {
  double u = 0.0;
  std::vector<cplx> points;
};

/// Real parts of the omega_q periods over the two offset cycles
/// a: [offset*tau, offset*tau + 1] and b: [offset, offset + tau].
struct PeriodParts {
  double re_a = 0.0;
  double re_b = 0.0;
  double im_a = 0.0;
  double im_b = 0.0;
  double offset = 0.17;
  int nodes_a = 0;
  int nodes_b = 0;
};

struct Moduli {
  cplx mu;
  double abs_mu = 0.0;
  /// -(1/2) ln|mu|, which equals the two-point separation time.
  double separation_time_two_point = 0.0;
};

inline constexpr double kDefaultCycleOffset = 0.17;
inline constexpr int kDefaultContourNodes = 256;

/// The propagation differential omega_q = omega_hat(z) dz with
/// omega_hat = -(1/2) wp'(z) / (wp(z) - wp(1/2 + q)).
class PropagationDifferential {
 public:
  explicit PropagationDifferential(const TorusConfig& cfg);

  const Weierstrass& wp() const { return wp_; }
  const TorusConfig& config() const { return wp_.config(); }
  const PunctureSet& punctures() const { return punctures_; }

  /// Distinct pole locations in the fundamental domain (two in two-point mode).
  std::vector<cplx> poles() const;
  std::vector<double> pole_residues() const;

  /// Distance from z to the nearest puncture modulo the lattice.
  double puncture_distance(cplx z) const;
  void require_regular(cplx z) const;

  cplx omega_hat(cplx z) const;
  /// Closed form d(omega_hat)/dz via wp'' = 6 wp^2 - g2/2.
  cplx omega_hat_derivative(cplx z) const;

  /// Harmonic time function t(z) = -(1/2) ln|wp(z) - p_q| + C with C chosen so
  /// that t((1 + tau)/4) = 0.
  double time(cplx z) const;

 private:
  Weierstrass wp_;
  PunctureSet punctures_{};
  double time_offset_ = 0.0;
};

PunctureSet puncture_set(const TorusConfig& cfg);
cplx omega_hat(cplx z, const TorusConfig& cfg);

/// (1/2 pi i) contour integral of omega_q around a circle. The circle must
/// enclose exactly one pole and keep clear of all others; BadContour otherwise.
cplx residue_at(cplx center, double radius, const TorusConfig& cfg, int nodes = kDefaultContourNodes);

PeriodParts period_real_parts(const TorusConfig& cfg, double offset = kDefaultCycleOffset,
                              int min_nodes = kDefaultContourNodes);

double time_coordinate(cplx z, const TorusConfig& cfg);

/// Re of the integral of omega_q from tau/2 to (1 + tau)/2.
double separation_time(const TorusConfig& cfg);

/// mu = (e2 - e1) / (e3 - e1).
Moduli mu_modulus(const TorusConfig& cfg);

/// Points where t crosses u on a resolution x resolution cell-centred grid over
/// the fundamental domain, located by bisection along grid edges. Output is in
/// row-major scan order for either execution mode.
LevelLineSample level_line_samples(const TorusConfig& cfg, double u, int resolution, Exec exec = Exec::serial);

}  // namespace kntorus
