#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kntorus/cocycle.hpp"

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

WpLambert wp_lambert(cplx z, cplx tau, int terms) {
  // shift z into |Im z| <= Im tau / 2 so every series term stays small
  const double b = std::round(z.imag() / tau.imag());
  z -= b * tau;
  const cplx x = std::exp(kTwoPiI * z);
  const cplx Q = std::exp(kTwoPiI * tau);
  cplx sum = x / ((1.0 - x) * (1.0 - x));
  cplx dsum = kTwoPiI * x * (1.0 + x) / std::pow(1.0 - x, 3);
  cplx eis{};
  cplx Qn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    Qn *= Q;
    const cplx w = Qn * x;  // Q^n x
    const cplx y = Qn / x;  // (Q^{-n} x)^{-1}
    sum += w / ((1.0 - w) * (1.0 - w)) + y / ((1.0 - y) * (1.0 - y));
    dsum += kTwoPiI * w * (1.0 + w) / std::pow(1.0 - w, 3) - kTwoPiI * y * (1.0 + y) / std::pow(1.0 - y, 3);
    eis += double(n) * Qn / (1.0 - Qn);
  }
  const cplx c = kTwoPiI * kTwoPiI;
  return {c * (1.0 / 12.0 + sum - 2.0 * eis), c * dsum};
}

cplx line_integral(const std::function<cplx(cplx)>& f, cplx a, cplx b, int panels, int order) {
  std::vector<double> x, w;
  gauss_legendre(order, x, w);
  cplx acc{};
  for (int p = 0; p < panels; ++p) {
    const double s0 = double(p) / panels, s1 = double(p + 1) / panels;
    for (int n = 0; n < order; ++n) {
      const double s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * x[n];
      acc += 0.5 * (s1 - s0) * w[n] * f(a + s * (b - a));
    }
  }
  return acc * (b - a);
}

cplx derivative(const std::function<cplx(cplx)>& f, cplx z, double h) {
  return (-f(z + 2.0 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2.0 * h)) / (12.0 * h);
}

BoxSum chi_box(int i, int j, const kntorus::AlgebraParams& params, int box) {
  std::complex<long double> total{};
  double magnitude = 0.0;
  for (int k = -box; k <= box; ++k) {
    for (const auto& [l, c1] : kntorus::shifted_constants(i, k, params)) {
      const cplx c2 = kntorus::shifted_constants(j, l, params).at(k);
      const auto prod = std::complex<long double>(c1) * std::complex<long double>(c2);
      if (k < -1 && l >= -1) total += prod;
      if (k >= -1 && l < -1) total -= prod;
      if ((k < -1) != (l < -1)) magnitude += std::abs(c1 * c2);
    }
  }
  return {cplx(total), magnitude};
}

TruncatedWedge truncate(const kntorus::WedgeState& w, int floor) {
  TruncatedWedge t;
  for (int x = w.occ.empty() ? -1 : std::max(-1, w.occ.front()); x >= floor; --x)
    if (w.is_occupied(x)) t.occupied.push_back(x);
  return t;
}

// Moving Om^i to its slot passes every occupied index above it, including
// none from the untouched tail below the floor.
TruncatedWedge apply_c(int i, TruncatedWedge w) {
  if (w.zero) return w;
  auto it = std::find(w.occupied.begin(), w.occupied.end(), i);
  if (it != w.occupied.end()) {
    w.zero = true;
    return w;
  }
  auto pos = std::find_if(w.occupied.begin(), w.occupied.end(), [&](int x) { return x < i; });
  const long above = pos - w.occupied.begin();
  w.occupied.insert(pos, i);
  if (above % 2 == 1) w.sign = -w.sign;
  return w;
}

TruncatedWedge apply_b(int k, TruncatedWedge w) {
  if (w.zero) return w;
  auto it = std::find(w.occupied.begin(), w.occupied.end(), k);
  if (it == w.occupied.end()) {
    w.zero = true;
    return w;
  }
  const long above = it - w.occupied.begin();
  w.occupied.erase(it);
  if (above % 2 == 1) w.sign = -w.sign;
  return w;
}

kntorus::WedgeState untruncate(const TruncatedWedge& w, int floor) {
  kntorus::WedgeState out;
  for (int x : w.occupied)
    if (x >= -1) out.occ.push_back(x);
  for (int x = -2; x >= floor; --x)
    if (std::find(w.occupied.begin(), w.occupied.end(), x) == w.occupied.end()) out.vac.push_back(x);
  return out;
}

kntorus::WedgeState random_wedge(std::mt19937_64& rng, int lo, int hi, int max_exceptions) {
  std::uniform_int_distribution<int> slot(lo, hi);
  std::uniform_int_distribution<int> count(0, max_exceptions);
  std::vector<int> occ, vac;
  const int n = count(rng);
  for (int t = 0; t < n; ++t) {
    const int x = slot(rng);
    auto& target = x >= -1 ? occ : vac;
    if (std::find(target.begin(), target.end(), x) == target.end()) target.push_back(x);
  }
  std::sort(occ.rbegin(), occ.rend());
  std::sort(vac.rbegin(), vac.rend());
  return {occ, vac};
}

cplx random_point(std::mt19937_64& rng, const kntorus::PropagationDifferential& omega, double clearance) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (;;) {
    const cplx z = cplx{u(rng), 0.0} + u(rng) * omega.config().tau;
    if (omega.puncture_distance(z) > clearance) return z;
  }
}

cplx random_complex(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  const double re = u(rng);
  return {re, u(rng)};
}

const std::vector<FrozenFit>& frozen_fits() {
  // From a sympy expansion of the double sum with symbolic lam5, lam6, lam7;
  // x = j - level / 2.
  static const std::vector<FrozenFit> fits = {
      {true, 16, {13.0 / 6, 0, -13.0 / 6, 0}},
      {true, 20, {13.0 / 6, 0, -2.0 / 3, 0}},
      {true, 24, {13.0 / 6, 0, -25.0 / 6, 0}},
      {true, 28, {13.0 / 6, 0, -38.0 / 3, 0}},
      {false, 16, {13.0 / 6, 0, -13.0 / 6, 0}},
      {false, 20, {13.0 / 3, 0, 11.0 / 3, 0}},
      {false, 24, {13.0 / 3, 0, 59.0 / 3, 0}},
      {false, 25, {13.0 / 6, 0, -2.0 / 3, 0}},
      {false, 28, {13.0 / 3, 0, 131.0 / 3, 0}},
      {false, 30, {13.0 / 3, 0, 5.0 / 3, 0}},
      {false, 35, {13.0 / 3, 0, 38.0 / 3, 0}},
      {false, 36, {13.0 / 6, 0, -25.0 / 6, 0}},
      {false, 42, {13.0 / 3, 0, -31.0 / 3, 0}},
      {false, 49, {13.0 / 6, 0, -38.0 / 3, 0}},
  };
  return fits;
}

}  // namespace oracle
