#include "kntorus/knalgebra.hpp"

#include <algorithm>
#include <cmath>

namespace kntorus {

namespace {

bool is_even(int k) { return k % 2 == 0; }

// odd a against even n, the only mixed ordering written out explicitly
void odd_even(int a, int n, int sign, std::vector<SymbolicTerm>& out) {
  const int d = n - a;
  for (int r = 0; r < 4; ++r) out.push_back({a + n - 1 + 2 * r, sign * (d - r), 4 + r});
}

}  // namespace

void BracketTerms::add(int k, cplx c) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, int key) { return t.first < key; });
  if (it != terms_.end() && it->first == k) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  } else if (c != cplx{}) {
    terms_.insert(it, {k, c});
  }
}

cplx BracketTerms::at(int k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, int key) { return t.first < key; });
  return (it != terms_.end() && it->first == k) ? it->second : cplx{};
}

BracketTerms BracketTerms::shifted(int delta) const {
  BracketTerms out = *this;
  for (auto& t : out.terms_) t.first += delta;
  return out;
}

BracketTerms BracketTerms::scaled(cplx factor) const {
  BracketTerms out;
  if (factor == cplx{}) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.second *= factor;
  return out;
}

std::vector<SymbolicTerm> bracket_symbolic(int i, int j) {
  std::vector<SymbolicTerm> out;
  if (i == j) return out;
  if (is_even(i) && is_even(j)) {
    out.push_back({i + j - 1, j - i, 0});
  } else if (!is_even(i) && !is_even(j)) {
    for (int r = 0; r < 4; ++r) out.push_back({i + j - 1 + 2 * r, j - i, 4 + r});
  } else if (!is_even(i)) {
    odd_even(i, j, 1, out);
  } else {
    odd_even(j, i, -1, out);
  }
  std::erase_if(out, [](const SymbolicTerm& t) { return t.factor == 0; });
  return out;
}

BracketTerms bracket(int i, int j, const AlgebraParams& params) {
  BracketTerms t;
  for (const SymbolicTerm& s : bracket_symbolic(i, j)) t.add(s.k, double(s.factor) * params.label(s.label));
  return t;
}

cplx bracket_numeric(int i, int j, cplx z, const Basis& basis) {
  return basis.value(i, z) * basis.derivative(j, z) - basis.value(j, z) * basis.derivative(i, z);
}

cplx bracket_numeric(int i, int j, cplx z, const TorusConfig& cfg) { return bracket_numeric(i, j, z, Basis(cfg)); }

double jacobi_residual(int i, int j, int k, const AlgebraParams& params) {
  std::map<int, cplx> sum;
  std::map<int, double> magnitude;
  const auto nest = [&](int a, int b, int c) {
    for (const auto& [m, cm] : bracket(a, b, params)) {
      for (const auto& [n, cn] : bracket(m, c, params)) {
        sum[n] += cm * cn;
        magnitude[n] += std::abs(cm * cn);
      }
    }
  };
  nest(i, j, k);
  nest(j, k, i);
  nest(k, i, j);
  double worst = 0.0;
  double scale = 1.0;
  for (const auto& [n, v] : sum) worst = std::max(worst, std::abs(v));
  for (const auto& [n, v] : magnitude) scale = std::max(scale, v);
  return worst / scale;
}

StructureTable structure_table(const AlgebraParams& params, int window, Indexing indexing, Exec exec) {
  if (window < 1) throw ConfigError("window must be at least 1");
  StructureTable table;
  table.window = window;
  table.indexing = indexing;
  table.params = params;
  const int width = 2 * window + 1;
  std::vector<BracketTerms> cells(static_cast<std::size_t>(width) * width);

  const auto fill_row = [&](int row) {
    const int i = row - window;
    for (int col = 0; col < width; ++col) {
      const int j = col - window;
      cells[static_cast<std::size_t>(row) * width + col] =
          indexing == Indexing::shifted ? bracket(i + 1, j + 1, params).shifted(-1) : bracket(i, j, params);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int row = 0; row < width; ++row) fill_row(row);
  } else {
    for (int row = 0; row < width; ++row) fill_row(row);
  }
  for (int row = 0; row < width; ++row)
    for (int col = 0; col < width; ++col)
      table.entries.emplace(std::pair{row - window, col - window},
                            std::move(cells[static_cast<std::size_t>(row) * width + col]));
  return table;
}

StructureTable degeneration_table(Degeneration mode, int window, const TorusConfig& cfg, Indexing indexing,
                                  Exec exec) {
  switch (mode) {
    case Degeneration::three_point:
      return structure_table(lambda_coefficients(cfg), window, indexing, exec);
    case Degeneration::two_point: {
      TorusConfig merged = cfg;
      merged.two_point = true;
      merged.q = 0.0;
      return structure_table(lambda_coefficients(merged), window, indexing, exec);
    }
    case Degeneration::witt:
      return structure_table(AlgebraParams::witt(), window, indexing, exec);
  }
  throw ConfigError("unknown degeneration mode");
}

std::string to_string(Indexing i) { return i == Indexing::shifted ? "shifted" : "original"; }

std::string to_string(Degeneration d) {
  switch (d) {
    case Degeneration::three_point:
      return "three_point";
    case Degeneration::two_point:
      return "two_point";
    case Degeneration::witt:
      return "witt";
  }
  return "unknown";
}

}  // namespace kntorus
