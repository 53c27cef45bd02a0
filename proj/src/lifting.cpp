#include "fiberorder/lifting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "fiberorder/error.hpp"
#include "fiberorder/flow.hpp"

namespace fiberorder {

namespace {

void check_n(int n) {
  if (n < 0 || n > kMaxLiftN) {
    throw Error(ErrorKind::InvalidInput, "n must lie in [0, " + std::to_string(kMaxLiftN) + "]");
  }
}

int lowest_element(SubsetMask a) { return std::countr_zero(a) + 1; }

}  // namespace

void validate_instance(const LiftInstance& inst) {
  check_n(inst.n);
  if (inst.c.size() != static_cast<std::size_t>(inst.n)) {
    throw Error(ErrorKind::InvalidInput, "c must have n entries");
  }
  for (const auto& v : inst.c) {
    if (v.sign() < 0) throw Error(ErrorKind::InvalidInput, "negative threshold");
  }
  const SubsetMask full = (SubsetMask{1} << inst.n) - 1;
  for (const auto& [a, v] : inst.alpha) {
    if (a == 0 || (a & ~full) != 0) {
      throw Error(ErrorKind::InvalidInput, "alpha indexed by an invalid subset " + subset_string(a));
    }
    if (v.sign() < 0) throw Error(ErrorKind::InvalidInput, "negative alpha");
  }
}

std::vector<SubsetMask> lex_subsets(int n) {
  check_n(n);
  std::vector<SubsetMask> out;
  // Depth-first over the next element: {1}, {1,2}, {1,2,3}, {1,3}, {2}, ...
  auto walk = [&](auto&& self, SubsetMask cur, int next) -> void {
    for (int i = next; i <= n; ++i) {
      const SubsetMask a = cur | (SubsetMask{1} << (i - 1));
      out.push_back(a);
      self(self, a, i + 1);
    }
  };
  walk(walk, 0, 1);
  return out;
}

Rational slack(const LiftInstance& inst, SubsetMask a) {
  Rational s;
  for (const auto& [b, v] : inst.alpha) {
    if ((a & b) != 0) s += v;
  }
  for (int i = 1; i <= inst.n; ++i) {
    if (a & (SubsetMask{1} << (i - 1))) s -= inst.c[static_cast<std::size_t>(i - 1)];
  }
  return s;
}

std::optional<SubsetMask> check_feasible(const LiftInstance& inst) {
  validate_instance(inst);
  for (auto a : lex_subsets(inst.n)) {
    if (slack(inst, a).sign() <= 0) return a;
  }
  return std::nullopt;
}

LiftReport solve_lift_report(const LiftInstance& inst) {
  if (auto bad = check_feasible(inst)) {
    throw InfeasibleError(*bad, "hypothesis fails for " + subset_string(*bad));
  }
  const int n = inst.n;
  LiftReport rep;
  bool first = true;
  for (auto a : lex_subsets(n)) {
    Rational s = slack(inst, a);
    if (first || s < rep.delta) rep.delta = s;
    first = false;
  }
  rep.delta /= Rational(n + 1);
  Rational total;
  for (const auto& ci : inst.c) {
    rep.c_prime.push_back(ci + rep.delta);
    total += rep.c_prime.back();
  }
  rep.big_m = Rational(1) + total;

  // Vertices: s, t, p_1..p_n, then q_A for each listed subset.
  std::vector<std::string> labels{"s", "t"};
  for (int i = 1; i <= n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<SubsetMask> sets;
  for (const auto& [a, v] : inst.alpha) {
    sets.push_back(a);
    std::string digits = std::to_string(a);
    labels.push_back("q" + std::string(8 - digits.size(), '0') + digits);
  }
  std::vector<Arc> arcs;
  for (int i = 1; i <= n; ++i) {
    arcs.push_back({0, static_cast<std::size_t>(1 + i), rep.c_prime[static_cast<std::size_t>(i - 1)]});
  }
  for (std::size_t x = 0; x < sets.size(); ++x) {
    const std::size_t q = 2 + static_cast<std::size_t>(n) + x;
    for (int i : subset_elements(sets[x])) arcs.push_back({static_cast<std::size_t>(1 + i), q, rep.big_m});
    arcs.push_back({q, 1, inst.alpha.at(sets[x])});
  }
  FlowNetwork net(std::move(labels), std::move(arcs), 0, 1);
  auto flow = max_flow(net);
  rep.flow_value = flow.value;
  rep.cut_capacity = flow.cut_capacity;
  if (flow.value != total) {
    throw Error(ErrorKind::InternalContradiction,
                "max flow " + flow.value.str() + " differs from " + total.str());
  }

  for (std::size_t x = 0; x < sets.size(); ++x) {
    const SubsetMask a = sets[x];
    const std::size_t q = 2 + static_cast<std::size_t>(n) + x;
    Rational used;
    for (int i : subset_elements(a)) {
      const std::size_t e = net.arc_index(static_cast<std::size_t>(1 + i), q);
      rep.solution.beta[{a, i}] = flow.flow[e];
      used += flow.flow[e];
    }
    rep.solution.beta[{a, lowest_element(a)}] += inst.alpha.at(a) - used;
  }
  return rep;
}

LiftSolution solve_lift(const LiftInstance& inst) { return solve_lift_report(inst).solution; }

std::string validate_lift(const LiftInstance& inst, const LiftSolution& sol) {
  std::map<SubsetMask, Rational> col;
  std::vector<Rational> row(static_cast<std::size_t>(inst.n));
  for (const auto& [key, v] : sol.beta) {
    const auto [a, i] = key;
    if (i < 1 || i > inst.n || !(a & (SubsetMask{1} << (i - 1)))) {
      return "beta entry outside its subset";
    }
    if (v.sign() < 0) return "negative beta";
    col[a] += v;
    row[static_cast<std::size_t>(i - 1)] += v;
  }
  for (const auto& [a, v] : inst.alpha) {
    const Rational got = col.count(a) ? col[a] : Rational();
    if (got != v) return "beta sums to " + got.str() + " on " + subset_string(a);
  }
  for (const auto& [a, v] : col) {
    if (!inst.alpha.count(a) && !v.is_zero()) return "beta mass on a subset without alpha";
  }
  for (int i = 0; i < inst.n; ++i) {
    if (!(row[static_cast<std::size_t>(i)] > inst.c[static_cast<std::size_t>(i)])) {
      return "row " + std::to_string(i + 1) + " does not exceed its threshold";
    }
  }
  return {};
}

DiscreteSurjection::DiscreteSurjection(std::vector<std::string> k, std::vector<std::string> l,
                                       const std::vector<std::string>& map)
    : k_(std::move(k)), l_(std::move(l)) {
  std::unordered_map<std::string, std::size_t> lindex;
  for (std::size_t i = 0; i < l_.size(); ++i) {
    if (!lindex.emplace(l_[i], i).second) throw Error(ErrorKind::DuplicateLabel, "duplicate L label " + l_[i]);
  }
  std::unordered_map<std::string, std::size_t> kindex;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (!kindex.emplace(k_[i], i).second) throw Error(ErrorKind::DuplicateLabel, "duplicate K label " + k_[i]);
  }
  if (map.size() != k_.size()) throw Error(ErrorKind::InvalidInput, "g must map every K label");
  std::vector<bool> hit(l_.size(), false);
  for (const auto& y : map) {
    auto it = lindex.find(y);
    if (it == lindex.end()) throw Error(ErrorKind::UnknownLabel, "unknown L label " + y);
    g_.push_back(it->second);
    hit[it->second] = true;
  }
  for (std::size_t y = 0; y < l_.size(); ++y) {
    if (!hit[y]) throw Error(ErrorKind::InvalidInput, "g is not surjective: " + l_[y] + " has no preimage");
  }
  order_.resize(k_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::sort(order_.begin(), order_.end(), [&](auto a, auto b) { return k_[a] < k_[b]; });
}

std::size_t DiscreteSurjection::k_index(const std::string& label) const {
  auto it = std::find(k_.begin(), k_.end(), label);
  if (it == k_.end()) throw Error(ErrorKind::UnknownLabel, "unknown K label " + label);
  return static_cast<std::size_t>(it - k_.begin());
}

std::size_t DiscreteSurjection::l_index(const std::string& label) const {
  auto it = std::find(l_.begin(), l_.end(), label);
  if (it == l_.end()) throw Error(ErrorKind::UnknownLabel, "unknown L label " + label);
  return static_cast<std::size_t>(it - l_.begin());
}

void validate_measure(const DiscreteMeasure& m, std::size_t size) {
  if (m.mass.size() != size) throw Error(ErrorKind::InvalidMeasure, "measure has wrong support size");
  Rational total;
  for (const auto& v : m.mass) {
    if (v.sign() < 0) throw Error(ErrorKind::InvalidMeasure, "negative mass");
    total += v;
  }
  if (total != Rational(1)) throw Error(ErrorKind::InvalidMeasure, "total mass is " + total.str());
}

DiscreteMeasure pushforward(const DiscreteSurjection& s, const DiscreteMeasure& nu) {
  DiscreteMeasure out{std::vector<Rational>(s.l_size())};
  for (std::size_t x = 0; x < s.k_size(); ++x) out.mass[s.image(x)] += nu.mass[x];
  return out;
}

namespace {

/// images[y] = {i : y in g(U_i)} as a mask.
std::vector<SubsetMask> image_masks(const DiscreteSurjection& s,
                                    const std::vector<std::vector<std::size_t>>& u) {
  const int n = static_cast<int>(u.size());
  check_n(n);
  std::vector<int> owner(s.k_size(), -1);
  std::vector<SubsetMask> masks(s.l_size(), 0);
  for (int i = 0; i < n; ++i) {
    for (auto x : u[static_cast<std::size_t>(i)]) {
      if (x >= s.k_size()) throw Error(ErrorKind::InvalidInput, "set element outside K");
      if (owner[x] != -1 && owner[x] != i) {
        throw Error(ErrorKind::OverlappingSets, "U_" + std::to_string(owner[x] + 1) + " and U_" +
                                                    std::to_string(i + 1) + " share " +
                                                    s.k_labels()[x]);
      }
      owner[x] = i;
      masks[s.image(x)] |= SubsetMask{1} << i;
    }
  }
  return masks;
}

void check_thresholds(const std::vector<std::vector<std::size_t>>& u, const std::vector<Rational>& c) {
  if (c.size() != u.size()) throw Error(ErrorKind::InvalidInput, "need one threshold per set");
  for (const auto& v : c) {
    if (v.sign() < 0) throw Error(ErrorKind::InvalidInput, "negative threshold");
  }
}

}  // namespace

std::optional<SubsetMask> image_violation(const DiscreteSurjection& s,
                                          const std::vector<std::vector<std::size_t>>& u,
                                          const std::vector<Rational>& c,
                                          const DiscreteMeasure& lambda) {
  const auto masks = image_masks(s, u);
  check_thresholds(u, c);
  validate_measure(lambda, s.l_size());
  for (auto a : lex_subsets(static_cast<int>(u.size()))) {
    Rational lhs, rhs;
    for (std::size_t y = 0; y < s.l_size(); ++y) {
      if (masks[y] & a) lhs += lambda.mass[y];
    }
    for (int i : subset_elements(a)) rhs += c[static_cast<std::size_t>(i - 1)];
    if (!(lhs > rhs)) return a;
  }
  return std::nullopt;
}

bool image_membership(const DiscreteSurjection& s, const std::vector<std::vector<std::size_t>>& u,
                      const std::vector<Rational>& c, const DiscreteMeasure& lambda) {
  return !image_violation(s, u, c, lambda).has_value();
}

LiftInstance witness_instance(const DiscreteSurjection& s,
                              const std::vector<std::vector<std::size_t>>& u,
                              const std::vector<Rational>& c, const DiscreteMeasure& lambda) {
  const auto masks = image_masks(s, u);
  LiftInstance inst{static_cast<int>(u.size()), c, {}};
  for (std::size_t y = 0; y < s.l_size(); ++y) {
    if (masks[y] != 0 && lambda.mass[y].sign() > 0) inst.alpha[masks[y]] += lambda.mass[y];
  }
  return inst;
}

DiscreteMeasure construct_witness(const DiscreteSurjection& s,
                                  const std::vector<std::vector<std::size_t>>& u,
                                  const std::vector<Rational>& c, const DiscreteMeasure& lambda) {
  if (auto bad = image_violation(s, u, c, lambda)) {
    throw InfeasibleError(*bad, "measure is not in the image: fails for " + subset_string(*bad),
                          ErrorKind::NotInImage);
  }
  const auto masks = image_masks(s, u);
  const auto inst = witness_instance(s, u, c, lambda);
  const auto sol = solve_lift(inst);

  std::vector<int> owner(s.k_size(), -1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (auto x : u[i]) owner[x] = static_cast<int>(i);
  }
  DiscreteMeasure nu{std::vector<Rational>(s.k_size())};
  for (std::size_t y = 0; y < s.l_size(); ++y) {
    if (lambda.mass[y].is_zero()) continue;
    if (masks[y] == 0) {
      for (auto x : s.k_order()) {
        if (s.image(x) == y) {
          nu.mass[x] += lambda.mass[y];
          break;
        }
      }
      continue;
    }
    const Rational& alpha = inst.alpha.at(masks[y]);
    for (int i : subset_elements(masks[y])) {
      const Rational share = sol.beta.at({masks[y], i}) / alpha * lambda.mass[y];
      for (auto x : s.k_order()) {
        if (s.image(x) == y && owner[x] == i - 1) {
          nu.mass[x] += share;
          break;
        }
      }
    }
  }
  return nu;
}

std::string validate_witness(const DiscreteSurjection& s,
                             const std::vector<std::vector<std::size_t>>& u,
                             const std::vector<Rational>& c, const DiscreteMeasure& lambda,
                             const DiscreteMeasure& nu) {
  try {
    validate_measure(nu, s.k_size());
  } catch (const Error& e) {
    return e.what();
  }
  if (pushforward(s, nu).mass != lambda.mass) return "pushforward differs from the target";
  for (std::size_t i = 0; i < u.size(); ++i) {
    Rational mass;
    for (auto x : u[i]) mass += nu.mass[x];
    if (!(mass > c[i])) return "U_" + std::to_string(i + 1) + " does not clear its threshold";
  }
  return {};
}

}  // namespace fiberorder
