#include "fiberorder/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fiberorder/error.hpp"

namespace fiberorder {

void FinitePreorder::check_size(std::size_t n) {
  if (n > element_cap()) {
    throw Error(ErrorKind::SizeOverflow, "ground set of " + std::to_string(n) +
                                             " elements exceeds the cap of " +
                                             std::to_string(element_cap()));
  }
}

FinitePreorder FinitePreorder::from_rows(std::vector<std::string> labels, std::vector<Bitset> up) {
  const std::size_t n = labels.size();
  check_size(n);
  if (up.size() != n) throw Error(ErrorKind::InvalidInput, "relation rows do not match labels");

  FinitePreorder p;
  p.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.index_.emplace(labels[i], i).second) {
      throw Error(ErrorKind::DuplicateLabel, "duplicate label '" + labels[i] + "'");
    }
    if (up[i].size() != n) throw Error(ErrorKind::InvalidInput, "relation row has wrong width");
    up[i].set(i);
  }
  for (std::size_t a = 0; a < n; ++a) {
    up[a].for_each([&](std::size_t b) {
      if (!up[b].is_subset_of(up[a])) {
        std::size_t c = 0;
        up[b].for_each([&](std::size_t x) {
          if (!up[a].test(x) && c == 0) c = x + 1;
        });
        throw Error(ErrorKind::NotTransitive, "relation is not transitive: " + labels[a] +
                                                  " <= " + labels[b] + " <= " + labels[c - 1]);
      }
    });
  }
  p.down_.assign(n, Bitset(n));
  for (std::size_t a = 0; a < n; ++a) {
    up[a].for_each([&](std::size_t b) { p.down_[b].set(a); });
  }
  p.labels_ = std::move(labels);
  p.up_ = std::move(up);
  return p;
}

FinitePreorder FinitePreorder::make(std::vector<std::string> labels,
                                    std::span<const LabelPair> pairs, bool close_transitively) {
  const std::size_t n = labels.size();
  check_size(n);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(labels[i], i).second) {
      throw Error(ErrorKind::DuplicateLabel, "duplicate label '" + labels[i] + "'");
    }
  }
  auto lookup = [&](const std::string& l) {
    auto it = index.find(l);
    if (it == index.end()) throw Error(ErrorKind::UnknownLabel, "unknown label '" + l + "'");
    return it->second;
  };
  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
  for (const auto& [a, b] : pairs) rows[lookup(a)].set(lookup(b));
  if (close_transitively) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].test(k)) rows[i] |= rows[k];
      }
    }
  }
  return from_rows(std::move(labels), std::move(rows));
}

std::optional<std::size_t> FinitePreorder::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinitePreorder::incomparable_pair_count() const {
  const std::size_t n = size();
  std::size_t comparable_ordered = 0;
  for (std::size_t a = 0; a < n; ++a) {
    Bitset both = up_[a];
    both |= down_[a];
    comparable_ordered += both.count() - 1;
  }
  return n * (n - (n > 0 ? 1 : 0)) / 2 - comparable_ordered / 2;
}

FinitePoset FinitePoset::from_preorder(FinitePreorder p) {
  for (std::size_t a = 0; a < p.size(); ++a) {
    Bitset eq = p.up_set(a);
    eq &= p.down_set(a);
    if (eq.count() != 1) {
      const std::size_t b = a == eq.indices().front() ? eq.indices()[1] : eq.indices().front();
      throw Error(ErrorKind::NotAntisymmetric,
                  "relation is not antisymmetric: " + p.label(a) + " ~ " + p.label(b));
    }
  }
  FinitePoset out;
  static_cast<FinitePreorder&>(out) = std::move(p);
  return out;
}

FinitePoset FinitePoset::induced(std::span<const std::size_t> elements) const {
  std::vector<std::string> labels;
  labels.reserve(elements.size());
  for (auto e : elements) labels.push_back(label(e));
  return FinitePoset::from_predicate(std::move(labels), [&](std::size_t i, std::size_t j) {
    return le(elements[i], elements[j]);
  });
}

FinitePreorder make_preorder(std::vector<std::string> elements, std::span<const LabelPair> pairs,
                             bool close_transitively) {
  return FinitePreorder::make(std::move(elements), pairs, close_transitively);
}

namespace {

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

FinitePoset chain(std::size_t n) {
  return FinitePoset::from_predicate(numbered_labels(n),
                                     [](std::size_t i, std::size_t j) { return i <= j; });
}

FinitePoset antichain(std::size_t n) {
  return FinitePoset::from_predicate(numbered_labels(n),
                                     [](std::size_t i, std::size_t j) { return i == j; });
}

Quotient quotient_to_poset(const FinitePreorder& p) {
  const std::size_t n = p.size();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> class_of(n, kUnassigned);
  std::vector<std::size_t> reps;
  for (std::size_t a = 0; a < n; ++a) {
    if (class_of[a] != kUnassigned) continue;
    const std::size_t c = reps.size();
    reps.push_back(a);
    Bitset eq = p.up_set(a);
    eq &= p.down_set(a);
    eq.for_each([&](std::size_t b) { class_of[b] = c; });
  }
  std::vector<std::string> labels;
  labels.reserve(reps.size());
  for (auto r : reps) labels.push_back(p.label(r));
  auto poset = FinitePoset::from_predicate(
      std::move(labels), [&](std::size_t c, std::size_t d) { return p.le(reps[c], reps[d]); });
  return {std::move(poset), std::move(class_of)};
}

FinitePoset product(std::span<const FinitePoset> factors, std::size_t cap) {
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() != 0 && total > cap / f.size()) {
      throw Error(ErrorKind::SizeOverflow, "product cardinality exceeds the cap of " +
                                               std::to_string(cap));
    }
    total *= f.size();
  }
  if (total > cap) {
    throw Error(ErrorKind::SizeOverflow,
                "product cardinality exceeds the cap of " + std::to_string(cap));
  }
  const std::size_t k = factors.size();
  // strides[i]: index step of factor i; the last factor varies fastest.
  std::vector<std::size_t> strides(k, 1);
  for (std::size_t i = k; i-- > 1;) strides[i - 1] = strides[i] * factors[i].size();

  std::vector<std::vector<std::size_t>> coords(total, std::vector<std::size_t>(k));
  std::vector<std::string> labels(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string label = "(";
    for (std::size_t i = 0; i < k; ++i) {
      coords[idx][i] = (idx / strides[i]) % factors[i].size();
      if (i > 0) label += ',';
      label += factors[i].label(coords[idx][i]);
    }
    label += ')';
    labels[idx] = std::move(label);
  }
  return FinitePoset::from_predicate(std::move(labels), [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!factors[i].le(coords[a][i], coords[b][i])) return false;
    }
    return true;
  });
}

std::size_t product_index(std::span<const FinitePoset> factors,
                          std::span<const std::size_t> coords) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i].size() + coords[i];
  return idx;
}

bool is_connected(const FinitePreorder& p) {
  const std::size_t n = p.size();
  if (n == 0) return true;
  Bitset seen(n);
  std::vector<std::size_t> stack{0};
  seen.set(0);
  while (!stack.empty()) {
    const std::size_t a = stack.back();
    stack.pop_back();
    Bitset nb = p.up_set(a);
    nb |= p.down_set(a);
    nb.for_each([&](std::size_t b) {
      if (!seen.test(b)) {
        seen.set(b);
        stack.push_back(b);
      }
    });
  }
  return seen.count() == n;
}

bool is_linear(const FinitePreorder& p) {
  for (std::size_t a = 0; a < p.size(); ++a) {
    Bitset both = p.up_set(a);
    both |= p.down_set(a);
    if (both.count() != p.size()) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> cover_pairs(const FinitePoset& p) {
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t a = 0; a < p.size(); ++a) {
    Bitset above = p.up_set(a);
    above.reset(a);
    above.for_each([&](std::size_t b) {
      Bitset between = above;
      between &= p.down_set(b);
      between.reset(b);
      if (between.none()) covers.emplace_back(a, b);
    });
  }
  return covers;
}

std::vector<std::size_t> minimal_elements(const FinitePoset& p) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.down_set(a).count() == 1) out.push_back(a);
  }
  return out;
}

std::vector<std::size_t> maximal_elements(const FinitePoset& p) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p.up_set(a).count() == 1) out.push_back(a);
  }
  return out;
}

std::vector<ElementSignature> element_signatures(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<ElementSignature> sig(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    sig[a].down = p.down_set(a).count();
    sig[a].up = p.up_set(a).count();
  }
  // Sorting by |down| yields a linear extension.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sig[a].down < sig[b].down; });
  for (auto b : order) {
    p.down_set(b).for_each([&](std::size_t a) {
      if (a != b) sig[b].height = std::max(sig[b].height, sig[a].height + 1);
    });
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t a = *it;
    p.up_set(a).for_each([&](std::size_t b) {
      if (a != b) sig[a].depth = std::max(sig[a].depth, sig[b].depth + 1);
    });
  }
  return sig;
}

std::vector<std::size_t> invariant_vector(const FinitePoset& p) {
  auto sig = element_signatures(p);
  std::sort(sig.begin(), sig.end());
  std::vector<std::size_t> out;
  out.reserve(sig.size() * 4 + 2);
  out.push_back(p.size());
  for (const auto& s : sig) {
    out.insert(out.end(), {s.down, s.up, s.height, s.depth});
  }
  out.push_back(p.incomparable_pair_count());
  return out;
}

namespace {

/// Joint colour refinement of two posets. Colours are shared, so equal
/// colours across P and Q are candidates for each other.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(
    const FinitePoset& p, const FinitePoset& q) {
  const auto sp = element_signatures(p);
  const auto sq = element_signatures(q);
  std::map<std::vector<std::size_t>, std::size_t> palette;
  auto paint = [&](const ElementSignature& s) {
    std::vector<std::size_t> key{s.down, s.up, s.height, s.depth};
    return palette.emplace(std::move(key), palette.size()).first->second;
  };
  std::vector<std::size_t> cp(p.size()), cq(q.size());
  for (std::size_t a = 0; a < p.size(); ++a) cp[a] = paint(sp[a]);
  for (std::size_t a = 0; a < q.size(); ++a) cq[a] = paint(sq[a]);

  std::size_t classes = palette.size();
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> next;
    auto recolour = [&](const FinitePoset& x, const std::vector<std::size_t>& colour) {
      std::vector<std::size_t> out(x.size());
      for (std::size_t a = 0; a < x.size(); ++a) {
        std::vector<std::size_t> below, above;
        x.down_set(a).for_each([&](std::size_t b) {
          if (b != a) below.push_back(colour[b]);
        });
        x.up_set(a).for_each([&](std::size_t b) {
          if (b != a) above.push_back(colour[b]);
        });
        std::sort(below.begin(), below.end());
        std::sort(above.begin(), above.end());
        std::vector<std::size_t> key{colour[a], below.size()};
        key.insert(key.end(), below.begin(), below.end());
        key.insert(key.end(), above.begin(), above.end());
        out[a] = next.emplace(std::move(key), next.size()).first->second;
      }
      return out;
    };
    auto np = recolour(p, cp);
    auto nq = recolour(q, cq);
    cp = std::move(np);
    cq = std::move(nq);
    if (next.size() == classes) break;
    classes = next.size();
  }
  return {std::move(cp), std::move(cq)};
}

}  // namespace

std::optional<std::vector<std::size_t>> are_isomorphic(const FinitePoset& p,
                                                       const FinitePoset& q) {
  const std::size_t n = p.size();
  if (q.size() != n) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};
  if (p.incomparable_pair_count() != q.incomparable_pair_count()) return std::nullopt;

  auto [cp, cq] = refine_colours(p, q);
  {
    auto hp = cp, hq = cq;
    std::sort(hp.begin(), hp.end());
    std::sort(hq.begin(), hq.end());
    if (hp != hq) return std::nullopt;
  }

  std::map<std::size_t, std::vector<std::size_t>> candidates;
  for (std::size_t b = 0; b < n; ++b) candidates[cq[b]].push_back(b);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto sa = candidates[cp[a]].size(), sb = candidates[cp[b]].size();
    if (sa != sb) return sa < sb;
    return p.down_set(a).count() < p.down_set(b).count();
  });

  constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> map(n, kUnmapped);
  std::vector<bool> used(n, false);

  auto consistent = [&](std::size_t depth, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < depth; ++i) {
      const std::size_t x = order[i];
      const std::size_t y = map[x];
      if (p.le(a, x) != q.le(b, y) || p.le(x, a) != q.le(y, b)) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t a = order[depth];
    for (std::size_t b : candidates[cp[a]]) {
      if (used[b] || !consistent(depth, a, b)) continue;
      map[a] = b;
      used[b] = true;
      if (self(self, depth + 1)) return true;
      used[b] = false;
      map[a] = kUnmapped;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return map;
}

bool is_isomorphism(const FinitePoset& p, const FinitePoset& q,
                    std::span<const std::size_t> map) {
  const std::size_t n = p.size();
  if (q.size() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto b : map) {
    if (b >= n || hit[b]) return false;
    hit[b] = true;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (p.le(a, b) != q.le(map[a], map[b])) return false;
    }
  }
  return true;
}

}  // namespace fiberorder
