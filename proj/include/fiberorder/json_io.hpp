#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fiberorder/dominance.hpp"
#include "fiberorder/poset.hpp"
#include "fiberorder/rational.hpp"

namespace fiberorder {

using Json = nlohmann::ordered_json;

/// Accepts "p/q" strings and JSON integers. Floats are rejected.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);
std::vector<Rational> rationals_from_json(const Json& j);
Json rationals_to_json(const std::vector<Rational>& v);

/// {"elements": [...], "le": [[a, b], ...]}; reflexive pairs are implicit and
/// the transitive closure of the listed pairs is taken.
FinitePoset poset_from_json(const Json& j);
/// Emits the cover pairs under "le".
Json poset_to_json(const FinitePoset& p);

/// Hasse diagram in Graphviz DOT.
std::string poset_to_dot(const FinitePoset& p, const std::string& name = "P");

Json subset_to_json(SubsetMask mask);
SubsetMask subset_from_json(const Json& j, int k);

/// Helpers that raise Error(InvalidInput) on schema violations.
const Json& require(const Json& j, const char* key);
std::string string_from_json(const Json& j);
std::vector<std::string> strings_from_json(const Json& j);
long integer_from_json(const Json& j);

}  // namespace fiberorder
