#include "kntorus/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "kntorus/serialize.hpp"

namespace kntorus {

namespace {

void build_app(CLI::App& app, RunConfig& rc, std::vector<double>& lam5, std::vector<double>& lam6,
               std::vector<double>& lam7, bool& witt, double (&raw)[4]) {
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tau-re", raw[0], "real part of tau");
  app.add_option("--tau-im", raw[1], "imaginary part of tau");
  app.add_option("--q-re", raw[2], "real part of the puncture offset q");
  app.add_option("--q-im", raw[3], "imaginary part of q");
  app.add_flag("--two-point", rc.two_point, "merge the two out-points (q = 0)");
  app.add_option("--window", rc.window, "index window W");
  app.add_option("--tol", rc.tol, "numerical tolerance");
  app.add_option("--samples", rc.samples, "level-line grid resolution");
  app.add_option("-o,--output", rc.output, "output file (default stdout)");
  app.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--formal-witt", witt, "use the formal parameters lam5 = lam6 = lam7 = 0");
  app.add_option("--lam5", lam5, "formal lam5 as <re> <im>")->expected(2);
  app.add_option("--lam6", lam6, "formal lam6 as <re> <im>")->expected(2);
  app.add_option("--lam7", lam7, "formal lam7 as <re> <im>")->expected(2);
  app.add_flag("--shifted", rc.shifted, "structure constants in the shifted indexing e_i = l_{i+1}");

  app.add_subcommand("params", "half-period values, lambda coefficients, mu and separation time")
      ->callback([&] { rc.command = "params"; });
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", rc.subject, "elliptic|differential|basis|algebra|cocycle|fock|all")
      ->required()
      ->check(CLI::IsMember({"elliptic", "differential", "basis", "algebra", "cocycle", "fock", "all"}));
  verify->callback([&] { rc.command = "verify"; });
  auto* table = app.add_subcommand("table", "structure-constant or cocycle table");
  table->add_option("kind", rc.subject, "brackets|cocycle")->required()->check(CLI::IsMember({"brackets", "cocycle"}));
  table->callback([&] { rc.command = "table"; });
  auto* levels = app.add_subcommand("levellines", "sample level lines of the time function");
  levels->add_option("--u", rc.levels, "level value (repeatable)")->expected(1, -1);
  levels->callback([&] { rc.command = "levellines"; });
}

Json config_json(const RunConfig& rc) {
  Json j{{"command", rc.command},
         {"subject", rc.subject},
         {"tau", to_json(rc.tau)},
         {"q", to_json(rc.q)},
         {"two_point", rc.two_point},
         {"window", rc.window},
         {"tol", rc.tol},
         {"samples", rc.samples},
         {"format", rc.format},
         {"shifted", rc.shifted}};
  j["params_source"] = rc.formal ? "formal" : "derived";
  if (rc.command == "levellines") j["levels"] = rc.levels;
  return j;
}

AlgebraParams algebra_params(const RunConfig& rc) { return rc.formal ? *rc.formal : lambda_coefficients(rc.torus()); }

struct Output {
  std::string text;
  bool ok = true;
};

Output run_params(const RunConfig& rc) {
  const TorusConfig cfg = rc.torus();
  const PropagationDifferential omega(cfg);
  Json results;
  results["half_periods"] = to_json(omega.wp().half_periods());
  results["punctures"] = Json::array();
  for (const cplx p : omega.poles()) results["punctures"].push_back(to_json(p));
  results["p_q"] = to_json(omega.punctures().p_q);
  results["params"] = to_json(algebra_params(rc));
  results["moduli"] = to_json(mu_modulus(cfg));
  try {
    results["separation_time"] = separation_time(cfg);
  } catch (const DegenerateModuli& e) {
    results["separation_time"] = nullptr;
    results["separation_time_error"] = e.what();
  }
  if (rc.format == "csv") throw ConfigError("params has no csv form");
  Json doc{{"config", config_json(rc)}, {"results", results}, {"checks", Json::array()}};
  return {doc.dump(2) + "\n", true};
}

Output run_verify(const RunConfig& rc) {
  if (rc.format == "csv") throw ConfigError("verify has no csv form");
  VerifyOptions opts;
  opts.cfg = rc.torus();
  opts.window = rc.window;
  opts.params = rc.formal;
  const std::vector<Check> checks = run_suite(rc.subject, opts);
  const bool ok = all_passed(checks);
  Json results{{"suite", rc.subject}, {"passed", ok}};
  if (rc.subject == "fock" || rc.subject == "all")
    results["vacuum"] = to_string(WedgeState::vacuum());
  Json doc{{"config", config_json(rc)}, {"results", results}, {"checks", to_json(checks)}};
  return {doc.dump(2) + "\n", ok};
}

Output run_table(const RunConfig& rc) {
  const AlgebraParams params = algebra_params(rc);
  if (rc.subject == "brackets") {
    const StructureTable t =
        structure_table(params, rc.window, rc.shifted ? Indexing::shifted : Indexing::original, Exec::parallel);
    if (rc.format == "csv") return {to_csv(t), true};
    Json doc{{"config", config_json(rc)}, {"results", {{"structure_table", to_json(t)}}}, {"checks", Json::array()}};
    return {doc.dump(2) + "\n", true};
  }
  const int sign = determine_bracket_sign(params);
  const CocycleTable t = cocycle_table(params, rc.window, CocycleMethod::sum, Exec::parallel, sign);
  if (rc.format == "csv") return {to_csv(t), true};
  const ReconciliationReport report = reconcile(params, rc.window, 1e-8, QConvention::unordered_pairs, Exec::parallel);
  Json doc{{"config", config_json(rc)},
           {"results", {{"cocycle_table", to_json(t)}, {"reconciliation", to_json(report)}}},
           {"checks", Json::array()}};
  return {doc.dump(2) + "\n", true};
}

Output run_levellines(const RunConfig& rc) {
  const TorusConfig cfg = rc.torus();
  std::vector<LevelLineSample> samples;
  for (const double u : rc.levels) samples.push_back(level_line_samples(cfg, u, rc.samples, Exec::parallel));
  if (rc.format == "csv") return {to_csv(samples), true};
  Json lines = Json::array();
  for (const auto& s : samples) lines.push_back(to_json(s));
  Json doc{{"config", config_json(rc)}, {"results", {{"level_lines", lines}}}, {"checks", Json::array()}};
  return {doc.dump(2) + "\n", true};
}

}  // namespace

void RunConfig::validate() const {
  if (window < 1) throw ConfigError("--window must be at least 1");
  if (!(tol > 0.0 && tol <= 1e-4)) throw ConfigError("--tol must lie in (0, 1e-4]");
  if (!(tau.imag() > 0.0)) throw ConfigError("Im(tau) must be positive");
  if (samples < 16) throw ConfigError("--samples must be at least 16");
  torus().validate();
}

TorusConfig RunConfig::torus() const {
  TorusConfig cfg;
  cfg.tau = tau;
  cfg.q = two_point ? cplx{} : q;
  cfg.tol = tol;
  cfg.two_point = two_point;
  return cfg;
}

RunConfig parse_run_config(int argc, const char* const* argv) {
  RunConfig rc;
  std::vector<double> lam5, lam6, lam7;
  bool witt = false;
  double raw[4] = {rc.tau.real(), rc.tau.imag(), rc.q.real(), rc.q.imag()};
  CLI::App app{"Krichever-Novikov algebra of a three-punctured torus", "kntorus"};
  build_app(app, rc, lam5, lam6, lam7, witt, raw);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    rc.command = "help";
    rc.subject = app.help();
    return rc;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  rc.tau = {raw[0], raw[1]};
  rc.q = {raw[2], raw[3]};
  const auto pick = [](const std::vector<double>& v) { return v.empty() ? cplx{} : cplx{v[0], v[1]}; };
  if (witt || !lam5.empty() || !lam6.empty() || !lam7.empty())
    rc.formal = AlgebraParams::formal(pick(lam5), pick(lam6), pick(lam7));
  rc.validate();
  return rc;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  try {
    rc = parse_run_config(argc, argv);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (rc.command == "help") {
    out << rc.subject;
    return 0;
  }

  Output result;
  try {
    if (rc.command == "params")
      result = run_params(rc);
    else if (rc.command == "verify")
      result = run_verify(rc);
    else if (rc.command == "table")
      result = run_table(rc);
    else
      result = run_levellines(rc);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (rc.output.empty()) {
    out << result.text;
  } else {
    std::ofstream file(rc.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << rc.output << '\n';
      return 2;
    }
    file << result.text;
  }
  return result.ok ? 0 : 1;
}

}  // namespace kntorus
