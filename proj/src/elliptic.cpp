#include "kntorus/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kntorus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Relative size below which a series term no longer matters.
constexpr double kSeriesEps = 1e-18;

}  // namespace

void TorusConfig::validate() const {
  if (!(tau.imag() > 0.0)) throw ConfigError("Im(tau) must be positive");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (series_cutoff < 4) throw ConfigError("series cutoff must be at least 4");
  if (!(exclusion_radius > 0.0)) throw ConfigError("exclusion radius must be positive");
  if (!two_point) {
    if (lattice_distance(q, tau) <= exclusion_radius)
      throw ConfigError("q is congruent to 0 modulo the lattice; use two-point mode");
    if (lattice_distance(q - 0.5, tau) <= exclusion_radius)
      throw ConfigError("q is congruent to 1/2 modulo the lattice");
  }
}

cplx reduce_to_fundamental(cplx z, cplx tau) {
  const double b = z.imag() / tau.imag();
  const double a = z.real() - b * tau.real();
  const double br = b - std::floor(b + 0.5);
  const double ar = a - std::floor(a + 0.5);
  return cplx{ar, 0.0} + br * tau;
}

cplx reduce_to_fundamental(cplx z, const TorusConfig& cfg) { return reduce_to_fundamental(z, cfg.tau); }

double lattice_distance(cplx z, cplx tau) {
  const cplx r = reduce_to_fundamental(z, tau);
  double best = std::abs(r);
  for (int m = -1; m <= 1; ++m)
    for (int n = -1; n <= 1; ++n) best = std::min(best, std::abs(r - (double(m) + double(n) * tau)));
  return best;
}

Weierstrass::Weierstrass(const TorusConfig& cfg) : cfg_(cfg), tau_(cfg.tau) {
  if (!(tau_.imag() > 0.0)) throw ConfigError("Im(tau) must be positive");
  nome_ = std::exp(kI * kPi * tau_);

  // theta2(0) = 2 sum nome^{(n+1/2)^2}, theta3(0) = 1 + 2 sum nome^{n^2}
  cplx theta2{0.0, 0.0};
  cplx theta3{1.0, 0.0};
  for (int n = 0;; ++n) {
    if (n > cfg_.series_cutoff) throw Error("theta constant series did not converge within the cutoff");
    const double h = n + 0.5;
    const cplx t2 = 2.0 * std::exp(kI * kPi * tau_ * (h * h));
    const cplx t3 = n == 0 ? cplx{} : 2.0 * std::exp(kI * kPi * tau_ * double(n * n));
    theta2 += t2;
    theta3 += t3;
    if (n > 0 && std::abs(t2) + std::abs(t3) < kSeriesEps * (std::abs(theta2) + std::abs(theta3))) break;
  }
  const cplx prod = kPi * theta2 * theta3;
  scale_ = prod * prod;
  const cplx t2sq = theta2 * theta2;
  const cplx t3sq = theta3 * theta3;
  shift_ = -(kPi * kPi / 3.0) * (t2sq * t2sq + t3sq * t3sq);

  half_.e1 = evaluate_reduced(reduce_to_fundamental(cplx{0.5, 0.0}, tau_)).value;
  half_.e2 = evaluate_reduced(reduce_to_fundamental(0.5 + 0.5 * tau_, tau_)).value;
  half_.e3 = evaluate_reduced(reduce_to_fundamental(0.5 * tau_, tau_)).value;
  half_.g2 = -4.0 * (half_.e1 * half_.e2 + half_.e1 * half_.e3 + half_.e2 * half_.e3);
  half_.g3 = 4.0 * half_.e1 * half_.e2 * half_.e3;
}

Weierstrass::ThetaPair Weierstrass::thetas(cplx v) const {
  // theta1(v) = 2 sum (-1)^n nome^{(n+1/2)^2} sin((2n+1)v)
  // theta4(v) = 1 + 2 sum_{n>=1} (-1)^n nome^{n^2} cos(2nv)
  ThetaPair out{cplx{}, cplx{}, cplx{1.0, 0.0}, cplx{}};
  for (int n = 0;; ++n) {
    if (n > cfg_.series_cutoff) throw Error("theta series did not converge within the cutoff");
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    const double h = n + 0.5;
    const double odd = 2.0 * n + 1.0;
    const cplx w1 = 2.0 * sgn * std::exp(kI * kPi * tau_ * (h * h));
    const cplx s1 = w1 * std::sin(odd * v);
    const cplx d1 = w1 * odd * std::cos(odd * v);
    out.theta1 += s1;
    out.dtheta1 += d1;
    cplx s4{}, d4{};
    if (n > 0) {
      const double even = 2.0 * n;
      const cplx w4 = 2.0 * sgn * std::exp(kI * kPi * tau_ * double(n * n));
      s4 = w4 * std::cos(even * v);
      d4 = -w4 * even * std::sin(even * v);
      out.theta4 += s4;
      out.dtheta4 += d4;
    }
    if (n > 0) {
      const double scale = std::abs(out.theta1) + std::abs(out.dtheta1) + std::abs(out.theta4) + std::abs(out.dtheta4);
      if (std::abs(s1) + std::abs(d1) + std::abs(s4) + std::abs(d4) < kSeriesEps * scale) break;
    }
  }
  return out;
}

WpPair Weierstrass::evaluate_reduced(cplx z) const {
  // wp(z) = (pi theta2 theta3 theta4(pi z) / theta1(pi z))^2 - (pi^2/3)(theta2^4 + theta3^4)
  const ThetaPair t = thetas(kPi * z);
  const cplx f = t.theta4 / t.theta1;
  const cplx df = kPi * (t.dtheta4 * t.theta1 - t.theta4 * t.dtheta1) / (t.theta1 * t.theta1);
  return {scale_ * f * f + shift_, 2.0 * scale_ * f * df};
}

WpPair Weierstrass::operator()(cplx z) const {
  const cplx r = reduce_to_fundamental(z, tau_);
  if (lattice_distance(r, tau_) < cfg_.exclusion_radius)
    throw PoleProximity("wp evaluated within the exclusion radius of a lattice point");
  return evaluate_reduced(r);
}

WpPair wp_pair(cplx z, const TorusConfig& cfg) { return Weierstrass(cfg)(z); }

HalfPeriodValues half_period_values(const TorusConfig& cfg) { return Weierstrass(cfg).half_periods(); }

}  // namespace kntorus
