#include "kntorus/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kntorus/quadrature.hpp"

namespace kntorus {

namespace {

bool is_even(int k) { return k % 2 == 0; }

// Radius for residue circles: well inside the smallest separation between
// distinct punctures (and between a puncture and its own lattice images).
double pairing_radius(const PropagationDifferential& omega) {
  const cplx tau = omega.config().tau;
  double sep = std::numeric_limits<double>::infinity();
  for (int m = -2; m <= 2; ++m)
    for (int n = -2; n <= 2; ++n)
      if (m != 0 || n != 0) sep = std::min(sep, std::abs(double(m) + double(n) * tau));
  const auto poles = omega.poles();
  for (std::size_t a = 0; a < poles.size(); ++a)
    for (std::size_t b = a + 1; b < poles.size(); ++b) sep = std::min(sep, lattice_distance(poles[a] - poles[b], tau));
  return std::min(0.1, 0.3 * sep);
}

// Rounding error of a trapezoid residue is about eps * radius * max|f| on the
// circle: large circles see the neighbouring punctures, small ones the pole
// itself. Probe a ladder of radii and integrate on the one with the smallest
// bound.
struct CircleResult {
  cplx value;
  double radius;
  double bound;
};

template <class F>
CircleResult best_circle(const F& f, cplx center, double max_radius, int nodes) {
  constexpr int probe = 32;
  double best_radius = max_radius;
  double best_bound = std::numeric_limits<double>::infinity();
  for (double r = max_radius; r >= 0.1 * max_radius; r *= 0.8) {
    double peak = 0.0;
    for (int n = 0; n < probe; ++n) {
      const double theta = 2.0 * std::numbers::pi * (n + 0.5) / probe;
      peak = std::max(peak, std::abs(f(center + std::polar(r, theta))));
    }
    if (r * peak < best_bound) {
      best_bound = r * peak;
      best_radius = r;
    }
  }
  return {circle_residue(f, center, best_radius, nodes), best_radius,
          std::numeric_limits<double>::epsilon() * best_bound};
}

struct PrintedTerm {
  bool odd_pair;
  int level;
  int q_key;
  double cubic;
  double linear;
};

// Closed-form cocycle tables. Each term is (cubic x^3 + linear x) Q_key at
// the given level, x = j - level/2.
const std::vector<PrintedTerm>& printed_terms() {
  static const std::vector<PrintedTerm> terms = {
      // odd-odd pairs
      {true, 0, 16, 13.0 / 6, -13.0 / 6},
      {true, -2, 20, 13.0 / 6, -2.0 / 3},
      {true, -4, 24, 13.0 / 6, -25.0 / 6},
      {true, -6, 28, 13.0 / 6, -76.0 / 6},
      // even-even pairs
      {false, 0, 16, 13.0 / 6, -13.0 / 6},
      {false, -2, 20, 13.0 / 3, 5.0 / 3},
      {false, -4, 24, 13.0 / 3, 11.0 / 3},
      {false, -4, 25, 13.0 / 6, -2.0 / 3},
      {false, -6, 28, 13.0 / 3, 5.0 / 3},
      {false, -6, 30, 13.0 / 3, -25.0 / 3},
      {false, -8, 35, 13.0 / 3, -58.0 / 3},
      {false, -8, 36, 13.0 / 6, -73.0 / 6},
      {false, -10, 42, 13.0 / 3, -133.0 / 3},
      {false, -12, 49, 13.0 / 6, -110.0 / 3},
  };
  return terms;
}

// (a, b) label pair with a * b = key, a <= b, labels in {4, 5, 6, 7}.
std::pair<int, int> key_labels(int key) {
  for (int a = 4; a <= 7; ++a)
    for (int b = a; b <= 7; ++b)
      if (a * b == key) return {a, b};
  throw Error("unknown Q key");
}

// Level at which lam_a lam_b enters: every label step above 4 moves the level
// down by 2.
int key_level(int key) {
  const auto [a, b] = key_labels(key);
  return -2 * ((a - 4) + (b - 4));
}

// Solve the 4x4 Vandermonde system for a cubic through (x_n, y_n); returns
// coefficients of x^3, x^2, x, 1.
std::array<double, 4> fit_cubic(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  double m[4][5];
  for (int r = 0; r < 4; ++r) {
    m[r][0] = x[r] * x[r] * x[r];
    m[r][1] = x[r] * x[r];
    m[r][2] = x[r];
    m[r][3] = 1.0;
    m[r][4] = y[r];
  }
  for (int c = 0; c < 4; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    for (int k = 0; k < 5; ++k) std::swap(m[c][k], m[pivot][k]);
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 5; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r) out[r] = m[r][4] / m[r][r];
  return out;
}

// Coefficient of the monomial lam_a lam_b (lam4 = 1) in chi_sum(i, j).
double monomial_coefficient(int i, int j, int key) {
  const auto chi_at = [&](double l5, double l6, double l7) {
    return chi_sum(i, j, AlgebraParams::formal(l5, l6, l7)).real();
  };
  const auto unit = [](int label, double t) {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    if (label >= 5) v[label - 5] = t;
    return v;
  };
  const auto eval = [&](const std::array<double, 3>& v) { return chi_at(v[0], v[1], v[2]); };
  const double c0 = chi_at(0.0, 0.0, 0.0);
  const auto linear_and_square = [&](int label) {
    const double plus = eval(unit(label, 1.0));
    const double minus = eval(unit(label, -1.0));
    return std::pair{(plus - minus) / 2.0, (plus + minus) / 2.0 - c0};
  };
  const auto [a, b] = key_labels(key);
  if (a == 4 && b == 4) return c0;
  if (a == 4) return linear_and_square(b).first;
  if (a == b) return linear_and_square(a).second;
  const auto [ca, caa] = linear_and_square(a);
  const auto [cb, cbb] = linear_and_square(b);
  std::array<double, 3> v = unit(a, 1.0);
  v[b - 5] = 1.0;
  return eval(v) - c0 - ca - cb - caa - cbb;
}

}  // namespace

// ---------------------------------------------------------------------------

PairingDetail pairing_detail(int j, int k, const Basis& basis, int nodes) {
  const PropagationDifferential& omega = basis.omega();
  const auto integrand = [&](cplx z) { return basis.value(j + 1, z) * basis.value(-k - 2, z); };

  const double max_radius = pairing_radius(omega);
  const auto poles = omega.poles();

  PairingDetail d;
  d.j = j;
  d.k = k;
  const CircleResult in = best_circle(integrand, poles[0], max_radius, nodes);
  d.at_in_point = in.value;
  cplx out{};
  double out_bound = 0.0;
  double out_radius = max_radius;
  for (std::size_t p = 1; p < poles.size(); ++p) {
    const CircleResult c = best_circle(integrand, poles[p], max_radius, nodes);
    out += c.value;
    out_bound += c.bound;
    out_radius = std::min(out_radius, c.radius);
  }
  d.at_out_points = -out;
  d.route = in.bound <= out_bound ? PairingRoute::in_point : PairingRoute::out_points;
  d.value = d.route == PairingRoute::in_point ? d.at_in_point : d.at_out_points;
  d.radius = d.route == PairingRoute::in_point ? in.radius : out_radius;
  d.error_bound = d.route == PairingRoute::in_point ? in.bound : out_bound;
  return d;
}

cplx pairing(int j, int k, const TorusConfig& cfg) { return pairing_detail(j, k, Basis(cfg)).value; }

std::vector<PairingDetail> pairing_matrix(const TorusConfig& cfg, int lo, int hi, Exec exec) {
  if (hi < lo) throw ConfigError("empty pairing range");
  const Basis basis(cfg);
  const int width = hi - lo + 1;
  std::vector<PairingDetail> out(static_cast<std::size_t>(width) * width);
  const auto fill = [&](int row) {
    for (int col = 0; col < width; ++col)
      out[static_cast<std::size_t>(row) * width + col] = pairing_detail(lo + row, lo + col, basis);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int row = 0; row < width; ++row) fill(row);
  } else {
    for (int row = 0; row < width; ++row) fill(row);
  }
  return out;
}

// ---------------------------------------------------------------------------

BracketTerms shifted_constants(int i, int j, const AlgebraParams& params) {
  return bracket(i + 1, j + 1, params).shifted(-1);
}

std::vector<SymbolicTerm> shifted_symbolic(int i, int j) {
  std::vector<SymbolicTerm> out = bracket_symbolic(i + 1, j + 1);
  for (SymbolicTerm& t : out) t.k -= 1;
  return out;
}

std::vector<WideTerm> shifted_constants_wide(int i, int j, const AlgebraParams& params) {
  std::vector<WideTerm> out;
  for (const SymbolicTerm& t : shifted_symbolic(i, j))
    out.push_back({t.k, static_cast<long double>(t.factor) * WideScalar(params.label(t.label))});
  return out;
}

cplx chi_sum(int i, int j, const AlgebraParams& params) {
  // C_ik^l != 0 needs l in [i+k, i+k+6].
  //   A: k < -1 and l >= -1  =>  k in [-7-i, -2]
  //   B: k >= -1 and l < -1  =>  k in [-1, -2-i]
  const int a_lo = -7 - i, a_hi = -2;
  const int b_lo = -1, b_hi = -2 - i;
  constexpr int guard = 4;
  const int scan_lo = std::min(a_lo, b_lo) - guard;
  const int scan_hi = std::max(a_hi, b_hi) + guard;

  // individual products reach ~1e7 for geometric parameters
  WideScalar total{};
  for (int k = scan_lo; k <= scan_hi; ++k) {
    for (const auto& [l, c1] : shifted_constants_wide(i, k, params)) {
      const bool in_a = k < -1 && l >= -1;
      const bool in_b = k >= -1 && l < -1;
      if (!in_a && !in_b) continue;
      WideScalar c2{};
      for (const auto& t : shifted_constants_wide(j, l, params))
        if (t.k == k) c2 = t.c;
      if (c2 == WideScalar{}) continue;
      if (in_a && (k < a_lo || k > a_hi)) throw WindowViolation("chi_sum: set A term outside the derived k-range");
      if (in_b && (k < b_lo || k > b_hi)) throw WindowViolation("chi_sum: set B term outside the derived k-range");
      total += in_a ? c1 * c2 : -c1 * c2;
    }
  }
  return cplx(total);
}

std::string to_string(QConvention c) {
  return c == QConvention::unordered_pairs ? "unordered_pairs" : "ordered_pairs";
}

cplx QValues::operator[](int key) const {
  auto it = values.find(key);
  if (it == values.end()) throw Error("unknown Q key " + std::to_string(key));
  return it->second;
}

const std::vector<int>& starred_q_keys() {
  static const std::vector<int> keys = {28, 35, 42, 49};
  return keys;
}

QValues q_values(const AlgebraParams& params, QConvention convention) {
  const std::array<cplx, 4> lam = params.as_array();
  QValues q;
  q.convention = convention;
  for (int a = 4; a <= 7; ++a) {
    for (int b = a; b <= 7; ++b) {
      const cplx prod = lam[a - 4] * lam[b - 4];
      const double mult = (convention == QConvention::ordered_pairs && a != b) ? 2.0 : 1.0;
      q.values[a * b] += mult * prod;
    }
  }
  return q;
}

cplx chi_closed(int i, int j, const AlgebraParams& params, QConvention convention) {
  if (!is_even(i - j)) return {};
  const bool odd_pair = !is_even(i);
  const int level = i + j;
  const QValues q = q_values(params, convention);
  cplx total{};
  for (const PrintedTerm& t : printed_terms()) {
    if (t.odd_pair != odd_pair || t.level != level) continue;
    const double x = j - level / 2;
    total += (t.cubic * x * x * x + t.linear * x) * q[t.q_key];
  }
  return total;
}

double cocycle_identity_residual(int i, int j, int k, const AlgebraParams& params, const CocycleFn& chi) {
  cplx sum{};
  double magnitude = 0.0;
  const int triple[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
  for (const auto& t : triple) {
    for (const auto& [m, c] : shifted_constants(t[1], t[2], params)) {
      const cplx term = c * chi(t[0], m);
      sum += term;
      magnitude += std::abs(term);
    }
  }
  return std::abs(sum) / std::max(1.0, magnitude);
}

double cocycle_identity_residual(int i, int j, int k, const AlgebraParams& params) {
  return cocycle_identity_residual(i, j, k, params, [&](int a, int b) { return chi_sum(a, b, params); });
}

std::string to_string(CocycleMethod m) { return m == CocycleMethod::sum ? "sum" : "closed_form"; }

CocycleTable cocycle_table(const AlgebraParams& params, int window, CocycleMethod method, Exec exec,
                           int bracket_sign) {
  if (window < 1) throw ConfigError("window must be at least 1");
  CocycleTable table;
  table.window = window;
  table.params = params;
  table.method = method;
  table.bracket_sign = bracket_sign;
  const int width = 2 * window + 1;
  std::vector<cplx> cells(static_cast<std::size_t>(width) * width);
  const auto fill = [&](int row) {
    const int i = row - window;
    for (int col = 0; col < width; ++col) {
      const int j = col - window;
      cells[static_cast<std::size_t>(row) * width + col] =
          method == CocycleMethod::sum ? chi_sum(i, j, params) : chi_closed(i, j, params);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int row = 0; row < width; ++row) fill(row);
  } else {
    for (int row = 0; row < width; ++row) fill(row);
  }
  for (int row = 0; row < width; ++row)
    for (int col = 0; col < width; ++col)
      table.entries.emplace(std::pair{row - window, col - window}, cells[static_cast<std::size_t>(row) * width + col]);
  return table;
}

// ---------------------------------------------------------------------------

std::vector<TermFit> closed_form_term_fits() {
  static const std::vector<int> keys = {16, 20, 24, 25, 28, 30, 35, 36, 42, 49};
  std::vector<TermFit> fits;
  for (const bool odd_pair : {true, false}) {
    for (const int key : keys) {
      TermFit f;
      f.odd_pair = odd_pair;
      f.q_key = key;
      f.level = key_level(key);
      const int shift = -f.level / 2;
      for (const PrintedTerm& t : printed_terms()) {
        if (t.odd_pair == odd_pair && t.q_key == key) {
          f.printed = true;
          f.printed_cubic = t.cubic;
          f.printed_linear = t.linear;
        }
      }
      std::array<double, 4> xs{}, ys{};
      for (int n = 0; n < 4; ++n) {
        const int j = (odd_pair ? 1 : 2) + 2 * n;
        xs[n] = j + shift;
        ys[n] = monomial_coefficient(f.level - j, j, key);
      }
      f.oracle = fit_cubic(xs, ys);
      for (double& c : f.oracle)
        if (std::abs(c) < 1e-9) c = 0.0;
      const bool oracle_zero = std::all_of(f.oracle.begin(), f.oracle.end(), [](double c) { return c == 0.0; });
      if (!f.printed && oracle_zero) continue;
      f.matches = f.printed && std::abs(f.oracle[0] - f.printed_cubic) < 1e-9 && f.oracle[1] == 0.0 &&
                  std::abs(f.oracle[2] - f.printed_linear) < 1e-9 && f.oracle[3] == 0.0;
      fits.push_back(f);
    }
  }
  return fits;
}

ReconciliationReport reconcile(const AlgebraParams& params, int window, double rel_tol, QConvention convention,
                               Exec exec) {
  ReconciliationReport r;
  r.window = window;
  r.rel_tol = rel_tol;
  r.convention = convention;
  const CocycleTable sums = cocycle_table(params, window, CocycleMethod::sum, exec);

  const auto agrees = [&](cplx a, cplx b) {
    return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  for (const QConvention c : {QConvention::unordered_pairs, QConvention::ordered_pairs}) {
    int count = 0;
    for (const auto& [ij, s] : sums.entries)
      if (agrees(s, chi_closed(ij.first, ij.second, params, c))) ++count;
    r.agreement_by_convention[c] = count;
  }
  for (const auto& [ij, s] : sums.entries) {
    const cplx c = chi_closed(ij.first, ij.second, params, convention);
    ++r.compared;
    if (agrees(s, c)) {
      ++r.agreed;
    } else {
      r.discrepancies.push_back({ij.first, ij.second, s, c, std::abs(s - c)});
    }
  }

  const CocycleFn closed = [&](int a, int b) { return chi_closed(a, b, params, convention); };
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      for (int k = -4; k <= 4; ++k)
        r.closed_form_cocycle_residual =
            std::max(r.closed_form_cocycle_residual, cocycle_identity_residual(i, j, k, params, closed));

  r.two_point_params = params.lam7 == cplx{};
  const QValues q = q_values(params, convention);
  r.starred_q_vanish = std::all_of(starred_q_keys().begin(), starred_q_keys().end(),
                                   [&](int key) { return q[key] == cplx{}; });
  // Levels populated only by starred terms: odd pairs at -6, even pairs at -10 and -12.
  r.starred_levels_vanish_in_sum = true;
  for (const auto& [ij, s] : sums.entries) {
    const int level = ij.first + ij.second;
    const bool odd_pair = !is_even(ij.first) && !is_even(ij.second);
    const bool even_pair = is_even(ij.first) && is_even(ij.second);
    const bool starred_only = (odd_pair && level == -6) || (even_pair && (level == -10 || level == -12));
    if (starred_only && std::abs(s) > rel_tol) r.starred_levels_vanish_in_sum = false;
  }
  r.term_fits = closed_form_term_fits();
  return r;
}

}  // namespace kntorus
