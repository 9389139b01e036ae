#pragma once

#include <array>
#include <string>

#include "kntorus/propagation.hpp"

namespace kntorus {

enum class Provenance { derived, formal };

/// The four scalars from which every structure constant is built. Labels follow
/// the cocycle tables: lam4 multiplies the leading term, lam7 the farthest.
///   omega_hat^2 = lam4 A_{-2} + lam5 A_0 + lam6 A_2 + lam7 A_4
struct AlgebraParams {
  cplx lam4{1.0, 0.0};
  cplx lam5{};
  cplx lam6{};
  cplx lam7{};
  Provenance provenance = Provenance::formal;

  /// e1 = e2 = e3 = 0: the centerless Virasoro (Witt) limit.
  static AlgebraParams witt() { return {}; }
  static AlgebraParams formal(cplx lam5, cplx lam6, cplx lam7) {
    return {cplx{1.0, 0.0}, lam5, lam6, lam7, Provenance::formal};
  }

  std::array<cplx, 4> as_array() const { return {lam4, lam5, lam6, lam7}; }
  /// lam4..lam7 by label; 0 gives 1.
  cplx label(int n) const;
  /// Largest |lam|, at least 1.
  double scale() const;
};

std::string to_string(Provenance p);

/// Taylor coefficients of (X - e1)(X - e2)(X - e3) at X = p_q, in the closed
/// forms lam5 = 3 p_q, lam6 = 3 p_q^2 - (e2^2 + e2 e3 + e3^2),
/// lam7 = wp'(1/2 + q)^2 / 4.
AlgebraParams lambda_from_values(cplx e1, cplx e2, cplx e3, cplx p_q, cplx dp_q);
AlgebraParams lambda_coefficients(const TorusConfig& cfg);

struct OrderTriple {
  int at_in = 0;
  int at_out_1 = 0;
  int at_out_2 = 0;
  friend bool operator==(const OrderTriple&, const OrderTriple&) = default;
};

/// Basis functions A_k: A_n = (wp - p_q)^{-n/2} for even n and
/// A_a = omega_hat * A_{a+1} for odd a.
class Basis {
 public:
  explicit Basis(const TorusConfig& cfg) : omega_(cfg) {}

  const PropagationDifferential& omega() const { return omega_; }

  cplx value(int k, cplx z) const;
  cplx derivative(int k, cplx z) const;
  /// A_k'/A_k, the integrand of the argument principle.
  cplx log_derivative(int k, cplx z) const;

 private:
  struct Local {
    cplx y;       // wp(z) - p_q
    cplx w;       // omega_hat
    cplx dw;      // omega_hat'
  };
  Local local(cplx z) const;

  PropagationDifferential omega_;
};

cplx basis_value(int k, cplx z, const TorusConfig& cfg);
cplx basis_derivative(int k, cplx z, const TorusConfig& cfg);

/// (ord_0, ord_{1/2+q}, ord_{1/2-q}) from the closed formulas. In two-point
/// mode the merged out-point is reported in both out slots.
OrderTriple order_triple(int k, const TorusConfig& cfg);

/// Rounded (1/2 pi i) contour integral of A_k'/A_k around a circle.
/// Throws NonIntegerWinding if the quadrature is farther than 1e-3 from an
/// integer.
int winding_order(int k, cplx center, double radius, const TorusConfig& cfg, int nodes = kDefaultContourNodes);

/// Integer power by repeated squaring (negative exponents invert).
cplx int_power(cplx base, int exponent);

}  // namespace kntorus
