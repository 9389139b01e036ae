#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kntorus/cocycle.hpp"
#include "kntorus/fock.hpp"
#include "kntorus/verify.hpp"

namespace kntorus {

using Json = nlohmann::ordered_json;

Json to_json(cplx z);  // [re, im]
Json to_json(const TorusConfig& cfg);
Json to_json(const HalfPeriodValues& h);
Json to_json(const AlgebraParams& p);
Json to_json(const Moduli& m);
Json to_json(const StructureTable& t);
Json to_json(const CocycleTable& t);
Json to_json(const ReconciliationReport& r);
Json to_json(const LevelLineSample& s);
Json to_json(const std::vector<Check>& checks);

cplx complex_from_json(const Json& j);

/// "i,j,k,re,im" rows, lexicographic in (i, j, k).
std::string to_csv(const StructureTable& t);
/// "i,j,re,im" rows, lexicographic in (i, j).
std::string to_csv(const CocycleTable& t);
/// "u,re,im" rows in grid order.
std::string to_csv(const std::vector<LevelLineSample>& samples);

/// Shortest round-trip decimal form; what the JSON writer uses as well.
std::string format_double(double x);

}  // namespace kntorus
