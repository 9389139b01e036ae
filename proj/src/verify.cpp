#include "kntorus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "kntorus/cocycle.hpp"
#include "kntorus/fock.hpp"

namespace kntorus {

namespace {

using Rng = std::mt19937_64;

// Tracks the worst residual of one check.
struct Tally {
  Tally(std::string n, double t) : name(std::move(n)), threshold(t) {}

  std::string name;
  double threshold;
  double worst = 0.0;
  std::string detail;

  void see(double r) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    worst = std::max(worst, r);
  }
  Check done() const { return {name, worst <= threshold, worst, threshold, detail}; }
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

cplx random_point(Rng& rng, const PropagationDifferential& omega, double clearance) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (;;) {
    const cplx z = cplx{u(rng), 0.0} + u(rng) * omega.config().tau;
    if (omega.puncture_distance(z) > clearance) return z;
  }
}

double pole_radius(const PropagationDifferential& omega) {
  const cplx tau = omega.config().tau;
  double sep = std::min(1.0, std::abs(tau));
  const auto poles = omega.poles();
  for (std::size_t a = 0; a < poles.size(); ++a)
    for (std::size_t b = a + 1; b < poles.size(); ++b) sep = std::min(sep, lattice_distance(poles[a] - poles[b], tau));
  return std::min(0.1, 0.3 * sep);
}

WedgeState random_wedge(Rng& rng, int lo, int hi, int max_exceptions) {
  std::uniform_int_distribution<int> slot(lo, hi);
  std::uniform_int_distribution<int> count(0, max_exceptions);
  WedgeState w;
  const int n = count(rng);
  for (int t = 0; t < n; ++t) {
    const int x = slot(rng);
    if (x >= WedgeState::stable_below) {
      if (std::find(w.occ.begin(), w.occ.end(), x) == w.occ.end()) w.occ.push_back(x);
    } else if (std::find(w.vac.begin(), w.vac.end(), x) == w.vac.end()) {
      w.vac.push_back(x);
    }
  }
  std::sort(w.occ.rbegin(), w.occ.rend());
  std::sort(w.vac.rbegin(), w.vac.rend());
  return w;
}

AlgebraParams algebra_params(const VerifyOptions& opts) {
  return opts.params ? *opts.params : lambda_coefficients(opts.cfg);
}

// ---------------------------------------------------------------------------

std::vector<Check> elliptic_suite(const VerifyOptions& opts) {
  const TorusConfig& cfg = opts.cfg;
  const Weierstrass wp(cfg);
  const PropagationDifferential omega(cfg);
  const HalfPeriodValues& h = wp.half_periods();
  Rng rng(opts.seed);
  std::uniform_int_distribution<int> shift(-3, 3);

  Tally period{"periodicity", 10.0 * cfg.tol};
  Tally parity{"parity", cfg.tol};
  Tally ode{"differential_equation", cfg.tol};
  Tally reduce{"reduction_consistency", cfg.tol};
  for (int n = 0; n < 100; ++n) {
    const cplx z = random_point(rng, omega, 0.05);
    const WpPair v = wp(z);
    const double scale = std::max(1.0, std::abs(v.value));
    const cplx moved = z + double(shift(rng)) + double(shift(rng)) * cfg.tau;
    const WpPair w = wp(moved);
    period.see(std::abs(w.value - v.value) / scale);
    const WpPair m = wp(-z);
    parity.see(std::max(std::abs(m.value - v.value) / scale,
                        std::abs(m.derivative + v.derivative) / std::max(1.0, std::abs(v.derivative))));
    const cplx rhs = 4.0 * (v.value - h.e1) * (v.value - h.e2) * (v.value - h.e3);
    ode.see(std::abs(v.derivative * v.derivative - rhs) / (1.0 + std::pow(std::abs(v.value), 3)));
    reduce.see(lattice_distance(reduce_to_fundamental(moved, cfg.tau) - z, cfg.tau));
  }
  Tally sum{"half_period_sum", cfg.tol};
  sum.see(std::abs(h.e1 + h.e2 + h.e3) / (1.0 + std::abs(h.e1) + std::abs(h.e2) + std::abs(h.e3)));
  return {period.done(), parity.done(), ode.done(), reduce.done(), sum.done()};
}

std::vector<Check> differential_suite(const VerifyOptions& opts) {
  const TorusConfig& cfg = opts.cfg;
  const PropagationDifferential omega(cfg);
  Rng rng(opts.seed + 1);

  Tally anti{"antisymmetry", cfg.tol};
  for (int n = 0; n < 50; ++n) {
    const cplx w = random_point(rng, omega, 0.05);
    const cplx a = omega.omega_hat(w), b = omega.omega_hat(-w);
    anti.see(std::abs(a + b) / std::max(1.0, std::abs(a)));
    const cplx wr = 0.5 + w;
    const cplx wl = 0.5 - w;
    if (omega.puncture_distance(wr) > 0.05 && omega.puncture_distance(wl) > 0.05) {
      const cplx c = omega.omega_hat(wr), d = omega.omega_hat(wl);
      anti.see(std::abs(c + d) / std::max(1.0, std::abs(c)));
    }
  }

  Tally res{"residues", 1e-8};
  const double r = pole_radius(omega);
  const auto poles = omega.poles();
  const auto expected = omega.pole_residues();
  for (std::size_t p = 0; p < poles.size(); ++p)
    res.see(std::abs(residue_at(poles[p], r, cfg) - expected[p]));

  Tally periods{"period_real_parts", 1e-8};
  const PeriodParts pp = period_real_parts(cfg);
  periods.see(std::max(std::abs(pp.re_a), std::abs(pp.re_b)));

  // t(b) - t(a) against a Simpson line integral of Re(omega_hat dz).
  Tally line{"time_vs_line_integral", 1e-7};
  int pairs = 0;
  while (pairs < 20) {
    const cplx a = random_point(rng, omega, 0.1);
    const cplx b = random_point(rng, omega, 0.1);
    constexpr int intervals = 2000;
    bool clear = true;
    for (int s = 0; s <= intervals && clear; ++s)
      clear = omega.puncture_distance(a + (b - a) * (double(s) / intervals)) > 0.08;
    if (!clear) continue;
    ++pairs;
    double acc = 0.0;
    for (int s = 0; s <= intervals; ++s) {
      const double weight = (s == 0 || s == intervals) ? 1.0 : (s % 2 == 1 ? 4.0 : 2.0);
      acc += weight * (omega.omega_hat(a + (b - a) * (double(s) / intervals)) * (b - a)).real();
    }
    acc /= 3.0 * intervals;
    line.see(std::abs((omega.time(b) - omega.time(a)) - acc));
  }

  Tally ref{"reference_point", cfg.tol};
  ref.see(std::abs(omega.time(0.25 * (1.0 + cfg.tau))));
  return {anti.done(), res.done(), periods.done(), line.done(), ref.done()};
}

std::vector<Check> basis_suite(const VerifyOptions& opts) {
  const TorusConfig& cfg = opts.cfg;
  const Basis basis(cfg);
  const PropagationDifferential& omega = basis.omega();
  const AlgebraParams lam = lambda_coefficients(cfg);
  Rng rng(opts.seed + 2);
  std::uniform_int_distribution<int> idx(-6, 6);
  std::uniform_int_distribution<int> half(-3, 2);

  Tally even{"product_law_even", 1e-8};
  Tally odd{"product_law_odd", 1e-8};
  Tally parity{"parity", 1e-8};
  Tally expansion{"expansion", 1e-8};
  Tally deriv{"derivative", 1e-6};
  for (int n = 0; n < 100; ++n) {
    const cplx z = random_point(rng, omega, 0.1);
    const int i = 2 * half(rng), j = idx(rng);
    even.see(rel(basis.value(i, z) * basis.value(j, z), basis.value(i + j, z)));
    const int a = 2 * half(rng) + 1, b = 2 * half(rng) + 1;
    const int s = a + b;
    const cplx rhs = lam.lam4 * basis.value(s, z) + lam.lam5 * basis.value(s + 2, z) +
                     lam.lam6 * basis.value(s + 4, z) + lam.lam7 * basis.value(s + 6, z);
    odd.see(rel(basis.value(a, z) * basis.value(b, z), rhs));
    const int k = idx(rng);
    const cplx sym = (k % 2 == 0 ? 1.0 : -1.0) * basis.value(k, -z);
    parity.see(rel(basis.value(k, z), sym));
    if (n < 50) {
      const cplx w = omega.omega_hat(z);
      const cplx sq = lam.lam4 * basis.value(-2, z) + lam.lam5 * basis.value(0, z) + lam.lam6 * basis.value(2, z) +
                      lam.lam7 * basis.value(4, z);
      expansion.see(rel(w * w, sq));
    }
    const double hstep = 1e-5;
    const cplx fd = (basis.value(k, z + hstep) - basis.value(k, z - hstep)) / (2.0 * hstep);
    deriv.see(rel(basis.derivative(k, z), fd));
  }

  Tally orders{"order_vs_winding", 0.0};
  const double r = pole_radius(omega);
  const auto poles = omega.poles();
  for (int k = -6; k <= 6; ++k) {
    const OrderTriple t = order_triple(k, cfg);
    const std::vector<int> expected = cfg.two_point ? std::vector<int>{t.at_in, t.at_out_1}
                                                    : std::vector<int>{t.at_in, t.at_out_1, t.at_out_2};
    for (std::size_t p = 0; p < poles.size(); ++p)
      orders.see(std::abs(winding_order(k, poles[p], r, cfg) - expected[p]));
  }
  return {even.done(), odd.done(), parity.done(), expansion.done(), deriv.done(), orders.done()};
}

std::vector<Check> algebra_suite(const VerifyOptions& opts) {
  const TorusConfig& cfg = opts.cfg;
  const AlgebraParams params = algebra_params(opts);
  const AlgebraParams derived = lambda_coefficients(cfg);
  const Basis basis(cfg);
  Rng rng(opts.seed + 3);

  Tally oracle{"bracket_oracle", 1e-7};
  const int w = std::min(opts.window, 8);
  for (int i = -w; i <= w; ++i) {
    for (int j = -w; j <= w; ++j) {
      for (int n = 0; n < 2; ++n) {
        const cplx z = random_point(rng, basis.omega(), 0.1);
        const cplx numeric = bracket_numeric(i, j, z, basis);
        cplx expanded{};
        for (const auto& [k, c] : bracket(i, j, derived)) expanded += c * basis.value(k, z);
        oracle.see(std::abs(numeric - expanded) / std::max(1.0, std::abs(numeric)));
      }
    }
  }

  Tally jacobi{"jacobi", 1e-9};
  const int m = std::min(opts.window, 5);
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j)
      for (int k = -m; k <= m; ++k) jacobi.see(jacobi_residual(i, j, k, params));

  Tally anti{"antisymmetry", 1e-12};
  Tally grading{"almost_grading", 0.0};
  const StructureTable table = structure_table(params, opts.window, Indexing::original, Exec::parallel);
  for (const auto& [ij, terms] : table.entries) {
    const BracketTerms& other = table.entries.at({ij.second, ij.first});
    for (const auto& [k, c] : terms) {
      anti.see(std::abs(c + other.at(k)) / std::max(1.0, std::abs(c)));
      const int lo = ij.first + ij.second - 1;
      if (k < lo || k > lo + 6) grading.see(1.0);
    }
  }
  return {oracle.done(), jacobi.done(), anti.done(), grading.done()};
}

std::vector<Check> cocycle_suite(const VerifyOptions& opts) {
  const AlgebraParams params = algebra_params(opts);
  const CocycleTable table = cocycle_table(params, std::max(opts.window, 10), CocycleMethod::sum, Exec::parallel);

  Tally anti{"antisymmetry", 1e-12};
  Tally mixed{"mixed_parity", 0.0};
  Tally support{"support", 0.0};
  for (const auto& [ij, chi] : table.entries) {
    const auto [i, j] = ij;
    anti.see(std::abs(chi + table.entries.at({j, i})) / std::max(1.0, std::abs(chi)));
    if ((i - j) % 2 != 0) mixed.see(std::abs(chi));
    const int level = i + j;
    const bool allowed = level <= 0 && level >= -12 && level % 2 == 0;
    if (!allowed) support.see(std::abs(chi));
  }

  Tally identity{"cocycle_identity", 1e-9};
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j)
      for (int k = -4; k <= 4; ++k) identity.see(cocycle_identity_residual(i, j, k, params));

  // Centreless limit: chi(-m, m) = 13/6 (m^3 - m), i.e. the classical
  // Virasoro cocycle read in the second index.
  Tally virasoro{"virasoro_limit_second_index", 1e-9};
  const AlgebraParams witt = AlgebraParams::witt();
  for (int i = -8; i <= 8; ++i) {
    for (int j = -8; j <= 8; ++j) {
      const cplx expected = i + j == 0 ? 13.0 / 6.0 * (double(j) * j * j - j) : 0.0;
      virasoro.see(std::abs(chi_sum(i, j, witt) - expected));
    }
  }

  TorusConfig merged = opts.cfg;
  merged.two_point = true;
  merged.q = 0.0;
  Tally starred{"starred_q_vanish_two_point", 0.0};
  const QValues q = q_values(lambda_coefficients(merged));
  for (int key : starred_q_keys()) starred.see(std::abs(q[key]));

  const ReconciliationReport report = reconcile(params, std::min(opts.window, 8), 1e-8);
  Tally recon{"closed_form_reconciliation_reported", std::numeric_limits<double>::infinity()};
  double worst = 0.0;
  for (const auto& d : report.discrepancies) worst = std::max(worst, d.abs_diff);
  recon.see(worst);
  recon.detail = std::to_string(report.agreed) + "/" + std::to_string(report.compared) +
                 " entries agree; discrepancies listed in the reconciliation report";
  return {anti.done(), mixed.done(), support.done(), identity.done(), virasoro.done(), starred.done(), recon.done()};
}

std::vector<Check> fock_suite(const VerifyOptions& opts) {
  const AlgebraParams params = algebra_params(opts);
  Rng rng(opts.seed + 4);
  std::vector<WedgeState> states;
  for (int n = 0; n < 100; ++n) states.push_back(random_wedge(rng, -8, 8, 6));

  Tally clifford{"clifford_relations", 0.0};
  Tally text{"text_round_trip", 0.0};
  for (const WedgeState& w : states) {
    const FockVector v(w);
    for (int k = -8; k <= 8; ++k) {
      for (int j = -8; j <= 8; ++j) {
        const FockVector bc = contract_b(k, wedge_c(j, v)) + wedge_c(j, contract_b(k, v));
        clifford.see((bc - (k == j ? v : FockVector{})).max_norm());
        clifford.see((contract_b(k, contract_b(j, v)) + contract_b(j, contract_b(k, v))).max_norm());
        clifford.see((wedge_c(k, wedge_c(j, v)) + wedge_c(j, wedge_c(k, v))).max_norm());
      }
    }
    const SignedWedge back = parse_wedge(to_string(w, -1));
    text.see(back.state == w && back.sign == -1 ? 0.0 : 1.0);
  }

  Tally windows{"l_operator_windows", 0.0};
  for (std::size_t n = 0; n < 20; ++n) {
    for (int i = -8; i <= 8; ++i) {
      try {
        l_operator(i, FockVector(states[n]), params);
      } catch (const WindowViolation& e) {
        windows.see(1.0);
        windows.detail = e.what();
      }
    }
  }

  const int sign = determine_bracket_sign(params);
  Tally comm{"commutator", 1e-9};
  comm.detail = "bracket sign " + std::string(sign > 0 ? "+1" : "-1");
  std::uniform_int_distribution<int> idx(-4, 4);
  for (int n = 0; n < 20; ++n) {
    const int i = idx(rng), j = idx(rng);
    FockVector v(states[n]);
    v += FockVector(states[n + 20], cplx{0.5, -0.25});
    comm.see(commutator_residual(i, j, v, params, sign));
  }

  Tally vacuum{"vacuum_cocycle", 1e-9};
  for (int i = -5; i <= 5; ++i) {
    const VacuumCocycle vc = vacuum_cocycle(i, -i, params, sign);
    vacuum.see(std::max(std::abs(vc.chi - chi_sum(i, -i, params)), vc.off_vacuum));
  }
  return {clifford.done(), text.done(), windows.done(), comm.done(), vacuum.done()};
}

using SuiteFn = std::function<std::vector<Check>(const VerifyOptions&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"elliptic", elliptic_suite}, {"differential", differential_suite}, {"basis", basis_suite},
      {"algebra", algebra_suite},   {"cocycle", cocycle_suite},           {"fock", fock_suite},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"elliptic", "differential", "basis", "algebra", "cocycle", "fock"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& opts) {
  opts.cfg.validate();
  if (suite == "all") {
    std::vector<Check> out;
    for (const auto& name : suite_names()) {
      for (Check c : suites().at(name)(opts)) {
        c.name = name + "." + c.name;
        out.push_back(std::move(c));
      }
    }
    return out;
  }
  auto it = suites().find(suite);
  if (it == suites().end()) throw ConfigError("unknown suite '" + suite + "'");
  std::vector<Check> out = it->second(opts);
  for (Check& c : out) c.name = suite + "." + c.name;
  return out;
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

}  // namespace kntorus
