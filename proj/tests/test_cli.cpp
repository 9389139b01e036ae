#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "kntorus/cli.hpp"
#include "kntorus/serialize.hpp"

using namespace kntorus;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "kntorus");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, ParamsTwoPointSquareLattice) {
  const CliRun r = run({"params", "--tau-re", "0", "--tau-im", "1", "--q-re", "0", "--q-im", "0", "--two-point"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["results"]["separation_time"].get<double>(), std::log(2.0) / 2.0, 1e-12);
  const cplx mu = complex_from_json(j["results"]["moduli"]["mu"]);
  EXPECT_NEAR(std::abs(mu - 0.5), 0.0, 1e-12);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_TRUE(j["checks"].is_array());
}

TEST(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"params", "--tau-im", "-1"},
           {"params", "--tol", "0.1"},
           {"table", "cocycle", "--window", "0"},
           {"verify", "nonsense"},
           {"params", "--q-re", "0"},
           {"levellines", "--samples", "4"},
           {"params", "--tau-im", "abc"}}) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  }
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, WittCocycleTable) {
  const CliRun r = run({"table", "cocycle", "--formal-witt", "--window", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  const Json& table = j["results"]["cocycle_table"];
  EXPECT_EQ(table["bracket_sign"], 1);
  for (const auto& e : table["entries"]) {
    const int i = e["i"], m = e["j"];
    const double expected = i + m == 0 ? 13.0 / 6.0 * (double(m) * m * m - m) : 0.0;
    EXPECT_NEAR(complex_from_json(e["chi"]).real(), expected, 1e-9);
  }
  EXPECT_TRUE(j["results"]["reconciliation"]["full_agreement"].get<bool>());
}

TEST(Cli, FormalParameterFlags) {
  const CliRun r = run({"table", "brackets", "--lam5", "1", "0", "--lam7", "0", "2", "--window", "2", "--shifted"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  const Json& params = j["results"]["structure_table"]["params"];
  EXPECT_EQ(params["provenance"], "formal");
  EXPECT_EQ(complex_from_json(params["lam7"]), cplx(0.0, 2.0));
  EXPECT_EQ(j["results"]["structure_table"]["indexing"], "shifted");
}

TEST(Cli, CsvOutput) {
  const CliRun r = run({"table", "cocycle", "--formal-witt", "--window", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 10), "i,j,re,im\n");
  const CliRun l = run({"levellines", "--u", "0.25", "--samples", "24", "--format", "csv"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(l.out.substr(0, 8), "u,re,im\n");
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"table", "cocycle", "--window", "6", "--tau-re", "0.3", "--tau-im", "1.1"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> lv = {"levellines", "--u", "0", "--u", "0.5", "--samples", "32"};
  EXPECT_EQ(run(lv).out, run(lv).out);
}

TEST(Cli, VerifySuitesPass) {
  for (const char* suite : {"elliptic", "differential", "basis", "algebra", "cocycle", "fock"}) {
    const CliRun r = run({"verify", suite, "--tau-re", "0", "--tau-im", "1", "--q-re", "0.2", "--window", "6"});
    EXPECT_EQ(r.code, 0) << suite << "\n" << r.out << r.err;
  }
}

TEST(Cli, WritesOutputFile) {
  const std::string path = testing::TempDir() + "kntorus_params.json";
  const CliRun r = run({"params", "-o", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_NO_THROW(Json::parse(in));
}
