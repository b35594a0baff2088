#pragma once

#include <json.hpp>
#include <string>

#include "padic/counting.hpp"
#include "padic/dimension.hpp"
#include "padic/lattice.hpp"
#include "padic/ubiquity.hpp"

namespace padic {

using Json = nlohmann::json;

// Rationals travel as "a" or "a/b" strings; big integers as decimal strings.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);
Int int_from_json(const Json& j);

// Shortest round-trip decimal rendering; used everywhere a double reaches a
// CSV or JSON byte so that reruns are byte-identical.
std::string format_double(double v);

Json to_json(const PadicInt& x);
PadicInt padic_from_json(const Json& j);

Json to_json(const ApproxLattice& lat);
ApproxLattice lattice_from_json(const Json& j);

Json to_json(const BallUnion& u);
BallUnion ball_union_from_json(const Json& j);

Json to_json(const CountResult& r);
Json to_json(const BoundValue& v);
Json to_json(const BoundReport& r);

WeightSplit weight_split_from_json(const Json& j);
Json to_json(const WeightSplit& s);

} // namespace padic
