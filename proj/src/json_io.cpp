#include "fiberorder/json_io.hpp"

#include <bit>
#include <limits>
#include <sstream>

#include "fiberorder/error.hpp"

namespace fiberorder {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      const auto v = j.get<unsigned long long>();
      if (v > static_cast<unsigned long long>(std::numeric_limits<long>::max())) {
        return Rational::parse(std::to_string(v));
      }
      return Rational(static_cast<long>(v));
    }
    return Rational(j.get<long>());
  }
  throw Error(ErrorKind::InvalidInput, "expected a rational as \"p/q\" or an integer, got " + j.dump());
}

Json rational_to_json(const Rational& r) { return r.str(); }

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidInput, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

std::string string_from_json(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::InvalidInput, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

std::vector<std::string> strings_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(string_from_json(x));
  return out;
}

long integer_from_json(const Json& j) {
  if (!j.is_number_integer()) throw Error(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
  return j.get<long>();
}

FinitePoset poset_from_json(const Json& j) {
  auto elements = strings_from_json(require(j, "elements"));
  std::vector<LabelPair> pairs;
  if (j.contains("le")) {
    const auto& le = j.at("le");
    if (!le.is_array()) throw Error(ErrorKind::InvalidInput, "\"le\" must be an array of pairs");
    for (const auto& p : le) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::InvalidInput, "\"le\" entries are [a, b] pairs");
      pairs.emplace_back(string_from_json(p[0]), string_from_json(p[1]));
    }
  }
  return FinitePoset::make(std::move(elements), pairs, true);
}

Json poset_to_json(const FinitePoset& p) {
  Json out;
  out["elements"] = p.labels();
  Json le = Json::array();
  for (auto [a, b] : cover_pairs(p)) le.push_back(Json::array({p.label(a), p.label(b)}));
  out["le"] = std::move(le);
  return out;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string poset_to_dot(const FinitePoset& p, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << dot_quote(name) << " {\n  rankdir=BT;\n";
  for (std::size_t a = 0; a < p.size(); ++a) os << "  " << dot_quote(p.label(a)) << ";\n";
  for (auto [a, b] : cover_pairs(p)) {
    os << "  " << dot_quote(p.label(a)) << " -> " << dot_quote(p.label(b)) << ";\n";
  }
  os << "}\n";
  return os.str();
}

Json subset_to_json(SubsetMask mask) { return subset_elements(mask); }

SubsetMask subset_from_json(const Json& j, int k) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "subsets are arrays of integers");
  std::vector<int> elems;
  for (const auto& e : j) elems.push_back(static_cast<int>(integer_from_json(e)));
  const SubsetMask mask = subset_from_elements(elems, k);
  if (static_cast<std::size_t>(std::popcount(mask)) != elems.size()) {
    throw Error(ErrorKind::InvalidInput, "subset lists an element twice");
  }
  return mask;
}

}  // namespace fiberorder
