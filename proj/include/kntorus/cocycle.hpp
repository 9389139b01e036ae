#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kntorus/exec.hpp"
#include "kntorus/knalgebra.hpp"

namespace kntorus {

// ---------------------------------------------------------------------------
// Duality pairing between vector fields e_j = A_{j+1} d/dz and quadratic
// differentials Omega^k = A_{-k-2} dz^2.

enum class PairingRoute { in_point, out_points };

struct PairingDetail {
  int j = 0;
  int k = 0;
  cplx value;            // from the better-conditioned route
  cplx at_in_point;      // residue at P1
  cplx at_out_points;    // -(sum of residues at the out-points)
  PairingRoute route = PairingRoute::in_point;
  double radius = 0.0;       // circle radius used by the chosen route
  double error_bound = 0.0;  // rounding estimate eps * radius * max|f|
};

/// (1/2 pi i) integral of e_j . Omega^k over a level line. Both homologous
/// contours (around P1, and around the out-points with reversed orientation)
/// are evaluated; `value` comes from the side with the smaller rounding
/// estimate, the other is kept as a cross-check.
PairingDetail pairing_detail(int j, int k, const Basis& basis, int nodes = kDefaultContourNodes);
cplx pairing(int j, int k, const TorusConfig& cfg);

/// Row-major pairing matrix for j, k in [lo, hi].
std::vector<PairingDetail> pairing_matrix(const TorusConfig& cfg, int lo, int hi, Exec exec = Exec::serial);

// ---------------------------------------------------------------------------
// Structure constants C_ij^k of [e_i, e_j] = sum_k C_ij^k e_k, e_i = l_{i+1}.

BracketTerms shifted_constants(int i, int j, const AlgebraParams& params);
std::vector<SymbolicTerm> shifted_symbolic(int i, int j);

/// Structure constants in extended precision. Each one is an integer times a
/// lambda, so the products and sums built from them (chi_sum, the Fock
/// operators) keep the polynomial identities between them to ~1e-19 relative.
using WideScalar = std::complex<long double>;
struct WideTerm {
  int k;
  WideScalar c;
};
std::vector<WideTerm> shifted_constants_wide(int i, int j, const AlgebraParams& params);

/// chi_ij = (sum_A - sum_B) C_ik^l C_jl^k with A = {k < -1, l >= -1} and
/// B = {k >= -1, l < -1}. The k-ranges of A and B follow from the support
/// window l in [i+k, i+k+6]; a guard band around them is scanned and any
/// nonzero term found there raises WindowViolation.
cplx chi_sum(int i, int j, const AlgebraParams& params);

/// How the Q_k abbreviation of the closed-form tables combines lam_a lam_b with
/// a * b = k. `unordered_pairs` takes each product once (Q_20 = lam4 lam5);
/// `ordered_pairs` sums over I x I (Q_20 = 2 lam4 lam5).
enum class QConvention { unordered_pairs, ordered_pairs };

std::string to_string(QConvention c);

struct QValues {
  QConvention convention = QConvention::unordered_pairs;
  std::map<int, cplx> values;  // keys 16, 20, 24, 25, 28, 30, 35, 36, 42, 49
  cplx operator[](int key) const;
};

/// Keys whose product contains lam7; they vanish in the two-point limit.
const std::vector<int>& starred_q_keys();
QValues q_values(const AlgebraParams& params, QConvention convention = QConvention::unordered_pairs);

/// Closed-form cocycle tables: odd-odd pairs (levels 0..-6), even-even pairs
/// (levels 0..-12), zero for mixed parity. Coefficients are transcribed as
/// printed; see reconcile() for how they compare with chi_sum.
cplx chi_closed(int i, int j, const AlgebraParams& params, QConvention convention = QConvention::unordered_pairs);

using CocycleFn = std::function<cplx(int, int)>;

/// |sum over cyclic (a,b,c) of sum_m C_bc^m chi(a, m)|, normalised by
/// max(1, sum of |terms|). Zero for a Lie-algebra 2-cocycle.
double cocycle_identity_residual(int i, int j, int k, const AlgebraParams& params, const CocycleFn& chi);
double cocycle_identity_residual(int i, int j, int k, const AlgebraParams& params);

enum class CocycleMethod { sum, closed_form };
std::string to_string(CocycleMethod m);

struct CocycleTable {
  int window = 0;
  AlgebraParams params;
  CocycleMethod method = CocycleMethod::sum;
  /// sigma in [L_i, L_j] = sigma sum_k C_ij^k L_k + chi_ij, as realised by the
  /// b-c operators (see fock.hpp).
  int bracket_sign = +1;
  std::map<std::pair<int, int>, cplx> entries;
};

CocycleTable cocycle_table(const AlgebraParams& params, int window, CocycleMethod method = CocycleMethod::sum,
                           Exec exec = Exec::serial, int bracket_sign = +1);

// ---------------------------------------------------------------------------
// Reconciliation of the closed forms against the double sum.

struct Discrepancy {
  int i = 0;
  int j = 0;
  cplx from_sum;
  cplx from_closed;
  double abs_diff = 0.0;
};

/// One term of the closed-form tables compared with the polynomial the double
/// sum actually produces. The polynomial is in the shifted variable x = j + r
/// at level -2r; coefficients are extracted exactly by evaluating chi_sum at
/// formal parameters that isolate the monomial.
struct TermFit {
  bool odd_pair = false;
  int level = 0;
  int q_key = 0;
  bool printed = false;
  double printed_cubic = 0.0;
  double printed_linear = 0.0;
  std::array<double, 4> oracle{};  // x^3, x^2, x, 1
  bool matches = false;
};

struct ReconciliationReport {
  int window = 0;
  double rel_tol = 1e-8;
  QConvention convention = QConvention::unordered_pairs;
  int compared = 0;
  int agreed = 0;
  std::vector<Discrepancy> discrepancies;
  std::map<QConvention, int> agreement_by_convention;
  /// max cocycle-identity residual of chi_closed over [-4, 4]^3.
  double closed_form_cocycle_residual = 0.0;
  /// lam7 == 0, every starred Q vanishes and chi_sum is zero at the levels
  /// carried only by starred terms.
  bool two_point_params = false;
  bool starred_q_vanish = false;
  bool starred_levels_vanish_in_sum = false;
  std::vector<TermFit> term_fits;
  bool full_agreement() const { return discrepancies.empty(); }
};

ReconciliationReport reconcile(const AlgebraParams& params, int window, double rel_tol = 1e-8,
                               QConvention convention = QConvention::unordered_pairs, Exec exec = Exec::serial);

/// Term-by-term comparison of the printed tables with chi_sum. Parameter
/// independent.
std::vector<TermFit> closed_form_term_fits();

}  // namespace kntorus
