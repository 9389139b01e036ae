#include "kntorus/fock.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "kntorus/cocycle.hpp"

namespace kntorus {

namespace {

void insert_descending(std::vector<int>& v, int x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x, std::greater<>()), x);
}

void erase_value(std::vector<int>& v, int x) { v.erase(std::find(v.begin(), v.end(), x)); }

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t n = 0; n < v.size(); ++n) {
    if (n > 0) out += ',';
    out += std::to_string(v[n]);
  }
  return out;
}

std::vector<int> parse_list(const std::string& body) {
  std::vector<int> out;
  if (body.empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ConfigError("bad wedge index '" + item + "'");
    } catch (const std::logic_error&) {
      throw ConfigError("bad wedge index '" + item + "'");
    }
  }
  return out;
}

}  // namespace

bool WedgeState::is_occupied(int i) const {
  return i >= stable_below ? contains(occ, i) : !contains(vac, i);
}

int WedgeState::count_above(int i) const {
  if (i >= stable_below) return static_cast<int>(std::count_if(occ.begin(), occ.end(), [&](int x) { return x > i; }));
  // all of occ, plus the occupied part of the tail (i, -2]
  const int vacant = static_cast<int>(std::count_if(vac.begin(), vac.end(), [&](int x) { return x > i; }));
  return static_cast<int>(occ.size()) + (stable_below - 1 - i) - vacant;
}

std::string to_string(const WedgeState& w, int sign) {
  return "s=" + std::to_string(WedgeState::stable_below) + "; occ={" + join(w.occ) + "}; vac={" + join(w.vac) +
         "}; sign=" + (sign < 0 ? "-1" : "+1");
}

SignedWedge parse_wedge(const std::string& text) {
  static const std::regex form(R"(\s*s=(-?\d+);\s*occ=\{([-\d,]*)\};\s*vac=\{([-\d,]*)\};\s*sign=([+-]1)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) throw ConfigError("malformed wedge state: " + text);
  const int s = std::stoi(m[1]);
  const std::vector<int> occ = parse_list(m[2]);
  const std::vector<int> vac = parse_list(m[3]);
  const std::set<int> occ_set(occ.begin(), occ.end());
  const std::set<int> vac_set(vac.begin(), vac.end());
  if (occ_set.size() != occ.size() || vac_set.size() != vac.size())
    throw ConfigError("repeated index in wedge state: " + text);
  for (int x : occ)
    if (x < s) throw ConfigError("occupied exception below s: " + text);
  for (int x : vac)
    if (x >= s) throw ConfigError("vacant exception at or above s: " + text);

  const auto occupied = [&](int x) { return x >= s ? occ_set.count(x) > 0 : vac_set.count(x) == 0; };
  const int hi = std::max({s, WedgeState::stable_below, occ.empty() ? s : *occ_set.rbegin()});
  const int lo = std::min({s, WedgeState::stable_below - 1, vac.empty() ? s : *vac_set.begin()});
  SignedWedge out;
  out.sign = m[4] == "-1" ? -1 : 1;
  for (int x = hi; x >= WedgeState::stable_below; --x)
    if (occupied(x)) out.state.occ.push_back(x);
  for (int x = WedgeState::stable_below - 1; x >= lo; --x)
    if (!occupied(x)) out.state.vac.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------

void FockVector::add(const WedgeState& w, Scalar c) {
  if (c == Scalar{}) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Scalar{}) terms_.erase(it);
  }
}

cplx FockVector::coefficient(const WedgeState& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? cplx{} : cplx(it->second);
}

FockVector& FockVector::operator+=(const FockVector& other) {
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& other) {
  for (const auto& [w, c] : other.terms_) add(w, -c);
  return *this;
}

FockVector FockVector::scaled(Scalar factor) const {
  FockVector out;
  for (const auto& [w, c] : terms_) out.add(w, c * factor);
  return out;
}

double FockVector::max_norm() const {
  double best = 0.0;
  for (const auto& [w, c] : terms_) best = std::max(best, static_cast<double>(std::abs(c)));
  return best;
}

FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }

// ---------------------------------------------------------------------------

FockVector wedge_c(int i, const WedgeState& state) {
  if (state.is_occupied(i)) return {};
  WedgeState out = state;
  if (i >= WedgeState::stable_below)
    insert_descending(out.occ, i);
  else
    erase_value(out.vac, i);
  return FockVector(out, cplx(parity_sign(state.count_above(i))));
}

FockVector contract_b(int k, const WedgeState& state) {
  if (!state.is_occupied(k)) return {};
  WedgeState out = state;
  if (k >= WedgeState::stable_below)
    erase_value(out.occ, k);
  else
    insert_descending(out.vac, k);
  return FockVector(out, cplx(parity_sign(state.count_above(k))));
}

FockVector wedge_c(int i, const FockVector& v) {
  FockVector out;
  for (const auto& [w, c] : v) out += wedge_c(i, w).scaled(c);
  return out;
}

FockVector contract_b(int k, const FockVector& v) {
  FockVector out;
  for (const auto& [w, c] : v) out += contract_b(k, w).scaled(c);
  return out;
}

FockVector normal_ordered_bc(int k, int j, const FockVector& v) {
  if (j < WedgeState::stable_below) return contract_b(k, wedge_c(j, v));
  return wedge_c(j, contract_b(k, v)).scaled(-1.0);
}

// Which j can act on `state` inside L_i. C_ij^k needs k in [i+j, i+j+6].
//  - j < -1: c^j acts first and needs slot j vacant, so j is in vac.
//  - j >= -1: b_k acts first and needs k occupied with j in [k-i-6, k-i].
//    Since j >= -1 this forces k >= i-1, and occupied k >= i-1 are the entries
//    of occ together with the tail slots [i-1, -2] not listed in vac.
// Everything else vanishes; a guard band around this set is scanned as well
// and must come out zero.
FockVector l_operator(int i, const FockVector& v, const AlgebraParams& params) {
  constexpr int guard = 3;
  std::map<int, std::vector<WideTerm>> constants;
  const auto constants_for = [&](int j) -> const std::vector<WideTerm>& {
    auto it = constants.find(j);
    if (it == constants.end()) it = constants.emplace(j, shifted_constants_wide(i, j, params)).first;
    return it->second;
  };

  FockVector out;
  for (const auto& [w, coeff] : v) {
    std::set<int> active(w.vac.begin(), w.vac.end());
    const auto add_window = [&](int k) {
      for (int j = std::max(WedgeState::stable_below, k - i - 6); j <= k - i; ++j) active.insert(j);
    };
    for (int k : w.occ)
      if (k >= i - 1) add_window(k);
    for (int k = i - 1; k < WedgeState::stable_below; ++k)
      if (w.is_occupied(k)) add_window(k);

    const int lo = std::min(active.empty() ? WedgeState::stable_below : *active.begin(), WedgeState::stable_below - 1);
    const int hi = std::max(active.empty() ? WedgeState::stable_below : *active.rbegin(), WedgeState::stable_below);
    const FockVector single(w, coeff);
    for (int j = lo - guard; j <= hi + guard; ++j) {
      FockVector part;
      for (const auto& [k, c] : constants_for(j)) part += normal_ordered_bc(k, j, single).scaled(c);
      if (part.empty()) continue;
      if (!active.count(j))
        throw WindowViolation("L_" + std::to_string(i) + ": nonzero term at j = " + std::to_string(j) +
                              " outside the active window on " + to_string(w));
      out += part;
    }
  }
  return out;
}

namespace {

FockVector commutator_remainder(int i, int j, const FockVector& v, const AlgebraParams& params, int sign) {
  FockVector r = l_operator(i, l_operator(j, v, params), params) - l_operator(j, l_operator(i, v, params), params);
  for (const auto& [k, c] : shifted_constants_wide(i, j, params))
    r -= l_operator(k, v, params).scaled(static_cast<long double>(sign) * c);
  return r;
}

}  // namespace

double commutator_residual(int i, int j, const FockVector& v, const AlgebraParams& params, int bracket_sign) {
  FockVector r = commutator_remainder(i, j, v, params, bracket_sign);
  r -= v.scaled(chi_sum(i, j, params));
  return r.max_norm();
}

VacuumCocycle vacuum_cocycle(int i, int j, const AlgebraParams& params, int bracket_sign) {
  const WedgeState vac = WedgeState::vacuum();
  FockVector r = commutator_remainder(i, j, FockVector(vac), params, bracket_sign);
  VacuumCocycle out;
  out.chi = r.coefficient(vac);
  r.add(vac, -FockVector::Scalar(out.chi));
  out.off_vacuum = r.max_norm();
  return out;
}

int determine_bracket_sign(const AlgebraParams& params) {
  const std::vector<WedgeState> probes = {WedgeState::vacuum(), WedgeState{{1}, {-2}}, WedgeState{{2, -1}, {-3}},
                                          WedgeState{{0}, {-4}}};
  const std::vector<std::pair<int, int>> pairs = {{1, 2}, {2, -1}, {-3, 1}, {3, -1}};
  double plus = 0.0, minus = 0.0;
  for (const auto& w : probes) {
    for (const auto& [i, j] : pairs) {
      plus = std::max(plus, commutator_residual(i, j, FockVector(w), params, +1));
      minus = std::max(minus, commutator_residual(i, j, FockVector(w), params, -1));
    }
  }
  return plus <= minus ? +1 : -1;
}

}  // namespace kntorus
