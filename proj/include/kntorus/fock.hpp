#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "kntorus/knalgebra.hpp"

namespace kntorus {

/// Semi-infinite wedge Om^{a1} ^ Om^{a2} ^ ... in descending order, differing
/// from the vacuum Om^{-2} ^ Om^{-3} ^ ... in finitely many slots. Stored in
/// the canonical frame s = -1: every index below s is occupied except `vac`,
/// every index at or above s is vacant except `occ`.
struct WedgeState {
  static constexpr int stable_below = -1;

  std::vector<int> occ;  // indices >= -1, descending
  std::vector<int> vac;  // indices <= -2, descending

  static WedgeState vacuum() { return {}; }

  bool is_vacuum() const { return occ.empty() && vac.empty(); }
  bool is_occupied(int i) const;
  /// Number of occupied slots with index > i.
  int count_above(int i) const;
  /// Number of slots differing from the vacuum.
  std::size_t exceptions() const { return occ.size() + vac.size(); }

  friend auto operator<=>(const WedgeState&, const WedgeState&) = default;
  friend bool operator==(const WedgeState&, const WedgeState&) = default;
};

/// A state with a sign relative to its descending normal form.
struct SignedWedge {
  WedgeState state;
  int sign = +1;
};

/// "s=-1; occ={0}; vac={-2}; sign=+1"
std::string to_string(const WedgeState& w, int sign = +1);
/// Parses the text form. Any s is accepted and rewritten into the s = -1
/// frame; throws ConfigError on malformed input.
SignedWedge parse_wedge(const std::string& text);

/// Finite linear combination of wedge states; zero coefficients are dropped.
/// Coefficients are carried in extended precision: products of L operators
/// reach magnitudes around 1e7 for geometric parameters, where double
/// rounding alone would be of order 1e-9.
class FockVector {
 public:
  using Scalar = std::complex<long double>;

  FockVector() = default;
  explicit FockVector(const WedgeState& w, cplx c = 1.0) { add(w, c); }
  FockVector(const WedgeState& w, Scalar c) { add(w, c); }

  void add(const WedgeState& w, cplx c) { add(w, Scalar(c)); }
  void add(const WedgeState& w, Scalar c);
  cplx coefficient(const WedgeState& w) const;

  FockVector& operator+=(const FockVector& other);
  FockVector& operator-=(const FockVector& other);
  FockVector scaled(double factor) const { return scaled(Scalar(factor)); }
  FockVector scaled(cplx factor) const { return scaled(Scalar(factor)); }
  FockVector scaled(Scalar factor) const;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  double max_norm() const;

  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  friend bool operator==(const FockVector&, const FockVector&) = default;

 private:
  std::map<WedgeState, Scalar> terms_;
};

FockVector operator+(FockVector a, const FockVector& b);
FockVector operator-(FockVector a, const FockVector& b);

/// c^i = Om^i ^ : zero if slot i is occupied, otherwise inserts i with sign
/// (-1)^(occupied slots above i).
FockVector wedge_c(int i, const WedgeState& state);
FockVector wedge_c(int i, const FockVector& v);

/// b_k, the anticommuting contraction dual to c^k: zero if slot k is vacant,
/// otherwise removes k with sign (-1)^(occupied slots above k).
FockVector contract_b(int k, const WedgeState& state);
FockVector contract_b(int k, const FockVector& v);

/// :b_k c^j: = b_k c^j for j < -1 and -c^j b_k for j >= -1, operators applied
/// right to left.
FockVector normal_ordered_bc(int k, int j, const FockVector& v);

/// L_i = sum_{j,k} C_ij^k :b_k c^j: with the shifted structure constants.
FockVector l_operator(int i, const FockVector& v, const AlgebraParams& params);

/// max-norm of (L_i L_j - L_j L_i) v - (sign * sum_k C_ij^k L_k v + chi_sum(i,j) v).
double commutator_residual(int i, int j, const FockVector& v, const AlgebraParams& params, int bracket_sign = +1);

struct VacuumCocycle {
  cplx chi;                 // vacuum coefficient of the commutator remainder
  double off_vacuum = 0.0;  // max-norm of everything else in the remainder
};

/// (L_i L_j - L_j L_i)|0> - sign * sum_k C_ij^k L_k |0>, split into its vacuum
/// coefficient and the rest.
VacuumCocycle vacuum_cocycle(int i, int j, const AlgebraParams& params, int bracket_sign = +1);

/// Picks sigma in {+1, -1} by comparing commutator residuals of both choices
/// on a fixed set of probe states.
int determine_bracket_sign(const AlgebraParams& params);

}  // namespace kntorus
