#include "kntorus/serialize.hpp"

#include <charconv>
#include <sstream>

namespace kntorus {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const TorusConfig& cfg) {
  return Json{{"tau", to_json(cfg.tau)},
              {"q", to_json(cfg.q)},
              {"two_point", cfg.two_point},
              {"tol", cfg.tol},
              {"exclusion_radius", cfg.exclusion_radius}};
}

Json to_json(const HalfPeriodValues& h) {
  return Json{{"e1", to_json(h.e1)}, {"e2", to_json(h.e2)}, {"e3", to_json(h.e3)},
              {"g2", to_json(h.g2)}, {"g3", to_json(h.g3)}};
}

Json to_json(const AlgebraParams& p) {
  return Json{{"lam4", to_json(p.lam4)},
              {"lam5", to_json(p.lam5)},
              {"lam6", to_json(p.lam6)},
              {"lam7", to_json(p.lam7)},
              {"provenance", to_string(p.provenance)}};
}

Json to_json(const Moduli& m) {
  return Json{{"mu", to_json(m.mu)}, {"abs_mu", m.abs_mu}, {"separation_time_two_point", m.separation_time_two_point}};
}

Json to_json(const StructureTable& t) {
  Json entries = Json::array();
  for (const auto& [ij, terms] : t.entries) {
    Json coeffs = Json::array();
    for (const auto& [k, c] : terms) coeffs.push_back(Json{{"k", k}, {"c", to_json(c)}});
    entries.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"terms", coeffs}});
  }
  return Json{{"window", t.window}, {"indexing", to_string(t.indexing)}, {"params", to_json(t.params)},
              {"entries", entries}};
}

Json to_json(const CocycleTable& t) {
  Json entries = Json::array();
  for (const auto& [ij, chi] : t.entries)
    entries.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"chi", to_json(chi)}});
  return Json{{"window", t.window},       {"method", to_string(t.method)}, {"bracket_sign", t.bracket_sign},
              {"params", to_json(t.params)}, {"entries", entries}};
}

Json to_json(const ReconciliationReport& r) {
  Json discrepancies = Json::array();
  for (const auto& d : r.discrepancies)
    discrepancies.push_back(Json{{"i", d.i},
                                 {"j", d.j},
                                 {"chi_sum", to_json(d.from_sum)},
                                 {"chi_closed", to_json(d.from_closed)},
                                 {"abs_diff", d.abs_diff}});
  Json by_convention = Json::object();
  for (const auto& [c, n] : r.agreement_by_convention) by_convention[to_string(c)] = n;
  Json fits = Json::array();
  for (const auto& f : r.term_fits) {
    fits.push_back(Json{{"pair_parity", f.odd_pair ? "odd" : "even"},
                        {"level", f.level},
                        {"q_key", f.q_key},
                        {"printed", f.printed},
                        {"printed_cubic", f.printed_cubic},
                        {"printed_linear", f.printed_linear},
                        {"oracle", Json::array({f.oracle[0], f.oracle[1], f.oracle[2], f.oracle[3]})},
                        {"matches", f.matches}});
  }
  return Json{{"window", r.window},
              {"rel_tol", r.rel_tol},
              {"q_convention", to_string(r.convention)},
              {"compared", r.compared},
              {"agreed", r.agreed},
              {"full_agreement", r.full_agreement()},
              {"agreement_by_convention", by_convention},
              {"closed_form_cocycle_residual", r.closed_form_cocycle_residual},
              {"two_point_params", r.two_point_params},
              {"starred_q_vanish", r.starred_q_vanish},
              {"starred_levels_vanish_in_sum", r.starred_levels_vanish_in_sum},
              {"term_fits", fits},
              {"discrepancies", discrepancies}};
}

Json to_json(const LevelLineSample& s) {
  Json pts = Json::array();
  for (const cplx z : s.points) pts.push_back(to_json(z));
  return Json{{"u", s.u}, {"points", pts}};
}

Json to_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    Json j{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"max_residual", c.max_residual}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    out.push_back(j);
  }
  return out;
}

std::string to_csv(const StructureTable& t) {
  std::ostringstream out;
  out << "i,j,k,re,im\n";
  for (const auto& [ij, terms] : t.entries)
    for (const auto& [k, c] : terms)
      out << ij.first << ',' << ij.second << ',' << k << ',' << format_double(c.real()) << ','
          << format_double(c.imag()) << '\n';
  return out.str();
}

std::string to_csv(const CocycleTable& t) {
  std::ostringstream out;
  out << "i,j,re,im\n";
  for (const auto& [ij, chi] : t.entries)
    out << ij.first << ',' << ij.second << ',' << format_double(chi.real()) << ',' << format_double(chi.imag())
        << '\n';
  return out.str();
}

std::string to_csv(const std::vector<LevelLineSample>& samples) {
  std::ostringstream out;
  out << "u,re,im\n";
  for (const auto& s : samples)
    for (const cplx z : s.points)
      out << format_double(s.u) << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  return out.str();
}

}  // namespace kntorus
