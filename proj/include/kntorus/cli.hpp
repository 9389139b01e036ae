#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kntorus/knbasis.hpp"

namespace kntorus {

struct RunConfig {
  std::string command;  // params | verify | table | levellines
  std::string subject;  // suite name or table kind
  cplx tau{0.0, 1.0};
  cplx q{0.2, 0.0};
  bool two_point = false;
  int window = 6;
  double tol = 1e-10;
  int samples = 64;
  std::vector<double> levels{0.0};
  std::string output;  // empty: stdout
  std::string format = "json";
  bool shifted = false;
  std::optional<AlgebraParams> formal;

  /// Throws ConfigError unless window >= 1, tol in (0, 1e-4] and Im tau > 0.
  void validate() const;
  TorusConfig torus() const;
};

/// Parses argv into a RunConfig. Throws ConfigError on malformed input; --help
/// yields command "help" with the usage text in `subject`.
RunConfig parse_run_config(int argc, const char* const* argv);

/// Entry point behind the kntorus executable. Returns 0 when every check
/// passes, 1 when a check fails (the report is still written) and 2 on usage
/// or configuration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kntorus
