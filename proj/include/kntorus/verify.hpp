#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kntorus/knbasis.hpp"

namespace kntorus {

struct Check {
  std::string name;
  bool passed = false;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  TorusConfig cfg;
  int window = 6;
  /// Parameters for the purely algebraic suites (algebra, cocycle, fock).
  /// Derived from cfg when empty.
  std::optional<AlgebraParams> params;
  std::uint64_t seed = 20240917;
};

const std::vector<std::string>& suite_names();  // without "all"

/// Runs one suite, or every suite for "all". Throws ConfigError for an
/// unknown name.
std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& opts);

bool all_passed(const std::vector<Check>& checks);

}  // namespace kntorus
