#include "kntorus/knbasis.hpp"

#include <algorithm>
#include <cmath>

#include "kntorus/quadrature.hpp"

namespace kntorus {

namespace {

bool is_even(int k) { return k % 2 == 0; }

}  // namespace

double AlgebraParams::scale() const {
  double s = 1.0;
  for (const cplx v : as_array()) s = std::max(s, std::abs(v));
  return s;
}

cplx AlgebraParams::label(int n) const {
  switch (n) {
    case 0:
      return 1.0;
    case 4:
      return lam4;
    case 5:
      return lam5;
    case 6:
      return lam6;
    case 7:
      return lam7;
    default:
      throw Error("no lambda with label " + std::to_string(n));
  }
}

std::string to_string(Provenance p) { return p == Provenance::derived ? "derived" : "formal"; }

AlgebraParams lambda_from_values(cplx e1, cplx e2, cplx e3, cplx p_q, cplx dp_q) {
  (void)e1;
  AlgebraParams out;
  out.lam4 = 1.0;
  out.lam5 = 3.0 * p_q;
  out.lam6 = 3.0 * p_q * p_q - (e2 * e2 + e2 * e3 + e3 * e3);
  out.lam7 = 0.25 * dp_q * dp_q;
  out.provenance = Provenance::derived;
  return out;
}

AlgebraParams lambda_coefficients(const TorusConfig& cfg) {
  const PropagationDifferential omega(cfg);
  const HalfPeriodValues& h = omega.wp().half_periods();
  const PunctureSet& p = omega.punctures();
  return lambda_from_values(h.e1, h.e2, h.e3, p.p_q, p.dp_q);
}

cplx int_power(cplx base, int exponent) {
  if (exponent < 0) return 1.0 / int_power(base, -exponent);
  cplx result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Basis::Local Basis::local(cplx z) const {
  omega_.require_regular(z);
  const WpPair v = omega_.wp()(z);
  Local l;
  l.y = v.value - omega_.punctures().p_q;
  l.w = -0.5 * v.derivative / l.y;
  const cplx wpp = omega_.wp().second_derivative_from_value(v.value);
  l.dw = -0.5 * (wpp * l.y - v.derivative * v.derivative) / (l.y * l.y);
  return l;
}

cplx Basis::value(int k, cplx z) const {
  const Local l = local(z);
  if (is_even(k)) return int_power(l.y, -k / 2);
  return l.w * int_power(l.y, -(k + 1) / 2);
}

cplx Basis::derivative(int k, cplx z) const {
  const Local l = local(z);
  if (is_even(k)) return double(k) * l.w * int_power(l.y, -k / 2);
  const cplx next = int_power(l.y, -(k + 1) / 2);
  return l.dw * next + double(k + 1) * l.w * l.w * next;
}

cplx Basis::log_derivative(int k, cplx z) const {
  const Local l = local(z);
  if (is_even(k)) return double(k) * l.w;
  return l.dw / l.w + double(k + 1) * l.w;
}

cplx basis_value(int k, cplx z, const TorusConfig& cfg) { return Basis(cfg).value(k, z); }
cplx basis_derivative(int k, cplx z, const TorusConfig& cfg) { return Basis(cfg).derivative(k, z); }

OrderTriple order_triple(int k, const TorusConfig& cfg) {
  if (cfg.two_point) {
    // wp - e1 has a double zero at 1/2; omega_hat a simple pole there.
    const int at_half = is_even(k) ? -k : -k - 2;
    return {k, at_half, at_half};
  }
  const int at_out = is_even(k) ? -k / 2 : (-k - 3) / 2;
  return {k, at_out, at_out};
}

int winding_order(int k, cplx center, double radius, const TorusConfig& cfg, int nodes) {
  if (k == 0) return 0;
  const Basis basis(cfg);
  const cplx w = circle_residue([&](cplx z) { return basis.log_derivative(k, z); }, center, radius, nodes);
  const double nearest = std::round(w.real());
  if (std::abs(w - nearest) > 1e-3) throw NonIntegerWinding("argument-principle integral is not an integer");
  return static_cast<int>(nearest);
}

}  // namespace kntorus
