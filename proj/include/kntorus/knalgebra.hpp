#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kntorus/exec.hpp"
#include "kntorus/knbasis.hpp"

namespace kntorus {

/// Sparse coefficients of a bracket in the basis: target index -> coefficient.
/// Kept sorted by target index; zero coefficients are never stored.
class BracketTerms {
 public:
  using Term = std::pair<int, cplx>;

  void add(int k, cplx c);
  cplx at(int k) const;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Same coefficients with every target index moved by delta.
  BracketTerms shifted(int delta) const;
  BracketTerms scaled(cplx factor) const;

  friend bool operator==(const BracketTerms&, const BracketTerms&) = default;

 private:
  std::vector<Term> terms_;
};

/// One structure constant written as factor * lam_label; label 0 stands for
/// the constant 1.
struct SymbolicTerm {
  int k = 0;
  int factor = 0;
  int label = 0;
};

/// Targets of [l_i, l_j] with integer factors, ascending in k.
std::vector<SymbolicTerm> bracket_symbolic(int i, int j);

/// [l_i, l_j] in the original indexing l_k = A_k d/dz:
///   even-even  (m - n) l_{n+m-1}
///   odd-odd    (b - a)(lam4 l_{a+b-1} + lam5 l_{a+b+1} + lam6 l_{a+b+3} + lam7 l_{a+b+5})
///   odd-even   (n-a) lam4 l_{a+n-1} + (n-a-1) lam5 l_{a+n+1}
///              + (n-a-2) lam6 l_{a+n+3} + (n-a-3) lam7 l_{a+n+5}
/// and even-odd by antisymmetry.
BracketTerms bracket(int i, int j, const AlgebraParams& params);

/// A_i A_j' - A_j A_i' at z: the vector-field bracket evaluated pointwise.
cplx bracket_numeric(int i, int j, cplx z, const Basis& basis);
cplx bracket_numeric(int i, int j, cplx z, const TorusConfig& cfg);

/// Scale-normalised max-norm of [[i,j],k] + [[j,k],i] + [[k,i],j]: the largest
/// |sum| over target indices divided by max(1, largest sum of |contributions|).
double jacobi_residual(int i, int j, int k, const AlgebraParams& params);

enum class Indexing { original, shifted };
enum class Degeneration { three_point, two_point, witt };

struct StructureTable {
  int window = 0;
  Indexing indexing = Indexing::original;
  AlgebraParams params;
  std::map<std::pair<int, int>, BracketTerms> entries;
};

/// Brackets for all (i, j) with |i|, |j| <= window.
StructureTable structure_table(const AlgebraParams& params, int window, Indexing indexing = Indexing::original,
                               Exec exec = Exec::serial);

/// three_point: parameters derived from cfg; two_point: cfg with the out-points
/// merged (q = 0); witt: formal zero parameters.
StructureTable degeneration_table(Degeneration mode, int window, const TorusConfig& cfg,
                                  Indexing indexing = Indexing::original, Exec exec = Exec::serial);

std::string to_string(Indexing i);
std::string to_string(Degeneration d);

}  // namespace kntorus
