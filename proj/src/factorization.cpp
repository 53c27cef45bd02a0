#include "fiberorder/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fiberorder/error.hpp"

namespace fiberorder {

namespace {

constexpr std::size_t kMaxEdgeClasses = 24;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool factor_less(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return invariant_vector(a) < invariant_vector(b);
}

/// Edge classes of the cover graph that no product decomposition can split.
struct EdgeClasses {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> cls;  // class per edge, numbered from 0
  std::size_t count = 0;
};

EdgeClasses edge_classes(const FinitePoset& p) {
  const std::size_t n = p.size();
  EdgeClasses out;
  out.edges = cover_pairs(p);
  const std::size_t m = out.edges.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(n);  // (neighbour, edge)
  std::vector<Bitset> nb(n, Bitset(n));
  for (std::size_t e = 0; e < m; ++e) {
    auto [a, b] = out.edges[e];
    inc[a].emplace_back(b, e);
    inc[b].emplace_back(a, e);
    nb[a].set(b);
    nb[b].set(a);
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
  for (std::size_t e = 0; e < m; ++e) {
    auto [a, b] = out.edges[e];
    edge_of[{std::min(a, b), std::max(a, b)}] = e;
  }
  auto edge = [&](std::size_t a, std::size_t b) { return edge_of.at({std::min(a, b), std::max(a, b)}); };

  UnionFind uf(m);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t x = 0; x < inc[u].size(); ++x) {
      for (std::size_t y = x + 1; y < inc[u].size(); ++y) {
        const auto [v, ev] = inc[u][x];
        const auto [w, ew] = inc[u][y];
        Bitset common = nb[v];
        common &= nb[w];
        common.reset(u);
        const auto c = common.count();
        if (c != 1) {
          uf.unite(ev, ew);
          continue;
        }
        // A square u-v-z-w: opposite edges travel in the same factor.
        std::size_t z = common.indices().front();
        uf.unite(ev, edge(w, z));
        uf.unite(ew, edge(v, z));
      }
    }
  }
  std::map<std::size_t, std::size_t> number;
  out.cls.resize(m);
  for (std::size_t e = 0; e < m; ++e) {
    out.cls[e] = number.emplace(uf.find(e), number.size()).first->second;
  }
  out.count = number.size();
  return out;
}

std::vector<std::size_t> components(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                    const std::vector<bool>& keep, std::size_t& count) {
  UnionFind uf(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (keep[e]) uf.unite(edges[e].first, edges[e].second);
  }
  std::vector<std::size_t> id(n);
  std::map<std::size_t, std::size_t> number;
  for (std::size_t v = 0; v < n; ++v) id[v] = number.emplace(uf.find(v), number.size()).first->second;
  count = number.size();
  return id;
}

/// Tests whether rows (left components) and columns (right components) form
/// a product grid of P.
std::optional<Split> try_split(const FinitePoset& p, const std::vector<std::size_t>& row,
                               std::size_t rows, const std::vector<std::size_t>& col,
                               std::size_t cols) {
  const std::size_t n = p.size();
  if (rows * cols != n || rows < 2 || cols < 2) return std::nullopt;
  // cell[r][c] is the unique element in row r and column c.
  constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cell(n, kEmpty);
  for (std::size_t v = 0; v < n; ++v) {
    auto& slot = cell[row[v] * cols + col[v]];
    if (slot != kEmpty) return std::nullopt;
    slot = v;
  }
  // Q lives on the row of element 0 (one element per column), R on its column.
  std::vector<std::size_t> qside(cols), rside(rows);
  for (std::size_t c = 0; c < cols; ++c) qside[c] = cell[row[0] * cols + c];
  for (std::size_t r = 0; r < rows; ++r) rside[r] = cell[r * cols + col[0]];
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const bool prod = p.le(qside[col[a]], qside[col[b]]) && p.le(rside[row[a]], rside[row[b]]);
      if (prod != p.le(a, b)) return std::nullopt;
    }
  }
  // Coordinates follow ascending element order on each side.
  std::vector<std::size_t> qorder(cols), rorder(rows);
  std::iota(qorder.begin(), qorder.end(), 0);
  std::iota(rorder.begin(), rorder.end(), 0);
  std::sort(qorder.begin(), qorder.end(), [&](auto x, auto y) { return qside[x] < qside[y]; });
  std::sort(rorder.begin(), rorder.end(), [&](auto x, auto y) { return rside[x] < rside[y]; });
  std::vector<std::size_t> qelems(cols), relems(rows);
  for (std::size_t i = 0; i < cols; ++i) qelems[i] = qside[qorder[i]];
  for (std::size_t j = 0; j < rows; ++j) relems[j] = rside[rorder[j]];

  Split s{p.induced(qelems), p.induced(relems), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < rows; ++j) s.at[i * rows + j] = cell[rorder[j] * cols + qorder[i]];
  }
  return s;
}

void swap_sides(Split& s) {
  const std::size_t nq = s.q.size(), nr = s.r.size();
  std::vector<std::size_t> at(s.at.size());
  for (std::size_t i = 0; i < nq; ++i) {
    for (std::size_t j = 0; j < nr; ++j) at[j * nq + i] = s.at[i * nr + j];
  }
  std::swap(s.q, s.r);
  s.at = std::move(at);
}

void check_input(const FinitePoset& p, std::size_t cap) {
  if (!is_connected(p)) throw Error(ErrorKind::NotConnected, "poset is not connected");
  if (p.size() > cap) {
    throw Error(ErrorKind::TooLarge, "factorization search is capped at " + std::to_string(cap) +
                                         " elements");
  }
}

std::vector<Split> search_splits(const FinitePoset& p, bool first_only) {
  std::vector<Split> found;
  const std::size_t n = p.size();
  if (n < 4) return found;
  const auto ec = edge_classes(p);
  if (ec.count < 2) return found;
  if (ec.count > kMaxEdgeClasses) {
    throw Error(ErrorKind::TooLarge, "cover graph has too many edge classes to search");
  }
  const std::size_t free_classes = ec.count - 1;
  std::vector<bool> left(ec.edges.size()), right(ec.edges.size());
  // Class 0 always sits on the left; the right side must be nonempty.
  for (std::uint64_t bits = 0; bits + 1 < (std::uint64_t{1} << free_classes); ++bits) {
    for (std::size_t e = 0; e < ec.edges.size(); ++e) {
      const std::size_t c = ec.cls[e];
      left[e] = c == 0 || ((bits >> (c - 1)) & 1U);
      right[e] = !left[e];
    }
    std::size_t rows = 0, cols = 0;
    auto row = components(n, ec.edges, left, rows);
    if (n % rows != 0) continue;
    auto col = components(n, ec.edges, right, cols);
    auto split = try_split(p, row, rows, col, cols);
    if (!split) continue;
    if (factor_less(split->r, split->q)) swap_sides(*split);
    bool duplicate = false;
    for (const auto& f : found) {
      if ((are_isomorphic(f.q, split->q) && are_isomorphic(f.r, split->r)) ||
          (are_isomorphic(f.q, split->r) && are_isomorphic(f.r, split->q))) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    found.push_back(std::move(*split));
    if (first_only) break;
  }
  std::stable_sort(found.begin(), found.end(), [](const Split& a, const Split& b) {
    if (factor_less(a.q, b.q)) return true;
    if (factor_less(b.q, a.q)) return false;
    return factor_less(a.r, b.r);
  });
  return found;
}

}  // namespace

std::vector<Split> find_splits(const FinitePoset& p, std::size_t cap) {
  check_input(p, cap);
  return search_splits(p, false);
}

std::vector<std::pair<FinitePoset, FinitePoset>> factor_once(const FinitePoset& p,
                                                             std::size_t cap) {
  std::vector<std::pair<FinitePoset, FinitePoset>> out;
  for (auto& s : find_splits(p, cap)) out.emplace_back(std::move(s.q), std::move(s.r));
  return out;
}

bool is_irreducible(const FinitePoset& p, std::size_t cap) {
  check_input(p, cap);
  return search_splits(p, true).empty();
}

namespace {

Factorization factorize(const FinitePoset& p) {
  Factorization out;
  if (p.size() <= 1) {
    out.witness.assign(1, 0);
    return out;
  }
  auto splits = search_splits(p, true);
  if (splits.empty()) {
    out.factors.push_back(p);
    out.witness.resize(p.size());
    std::iota(out.witness.begin(), out.witness.end(), 0);
    return out;
  }
  const Split& s = splits.front();
  auto fq = factorize(s.q);
  auto fr = factorize(s.r);
  const std::size_t nr_prod = fr.witness.size();
  out.factors = std::move(fq.factors);
  out.factors.insert(out.factors.end(), fr.factors.begin(), fr.factors.end());
  out.witness.resize(fq.witness.size() * nr_prod);
  for (std::size_t iq = 0; iq < fq.witness.size(); ++iq) {
    for (std::size_t ir = 0; ir < nr_prod; ++ir) {
      out.witness[iq * nr_prod + ir] = s.at[fq.witness[iq] * s.r.size() + fr.witness[ir]];
    }
  }
  return out;
}

/// Reorders factors by `perm` (new position -> old position), fixing the witness.
void permute_factors(Factorization& f, const std::vector<std::size_t>& perm) {
  const std::size_t k = f.factors.size();
  std::vector<FinitePoset> factors(k);
  for (std::size_t i = 0; i < k; ++i) factors[i] = f.factors[perm[i]];
  std::vector<std::size_t> witness(f.witness.size());
  std::vector<std::size_t> coords(k), old_coords(k);
  for (std::size_t idx = 0; idx < witness.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = k; i-- > 0;) {
      coords[i] = rest % factors[i].size();
      rest /= factors[i].size();
    }
    for (std::size_t i = 0; i < k; ++i) old_coords[perm[i]] = coords[i];
    witness[idx] = f.witness[product_index(f.factors, old_coords)];
  }
  f.factors = std::move(factors);
  f.witness = std::move(witness);
}

}  // namespace

Factorization irreducible_factorization(const FinitePoset& p, std::size_t cap) {
  check_input(p, cap);
  auto f = factorize(p);
  std::vector<std::size_t> perm(f.factors.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return factor_less(f.factors[a], f.factors[b]);
  });
  permute_factors(f, perm);
  return f;
}

std::string validate_factorization(const FinitePoset& p, const Factorization& f) {
  for (const auto& q : f.factors) {
    if (q.size() < 2) return "singleton factor";
    if (!is_irreducible(q, std::max(q.size(), kDefaultFactorCap))) return "reducible factor";
  }
  FinitePoset prod = product(f.factors);
  if (!is_isomorphism(prod, p, f.witness)) return "witness is not an isomorphism";
  return {};
}

bool same_factor_multiset(const std::vector<FinitePoset>& a, const std::vector<FinitePoset>& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    bool hit = false;
    for (std::size_t j = 0; j < b.size() && !hit; ++j) {
      if (!used[j] && are_isomorphic(x, b[j])) used[j] = hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

std::vector<std::vector<FinitePoset>> common_refinement(const FinitePoset& p,
                                                        const std::vector<FinitePoset>& fam1,
                                                        const std::vector<FinitePoset>& fam2,
                                                        std::size_t cap) {
  check_input(p, cap);
  for (const auto* fam : {&fam1, &fam2}) {
    for (const auto& f : *fam) {
      if (f.empty()) throw Error(ErrorKind::NotADecomposition, "empty family member");
    }
    std::size_t total = 1;
    for (const auto& f : *fam) {
      total *= f.size();
      if (total > p.size()) break;
    }
    if (total != p.size() || !are_isomorphic(product(*fam), p)) {
      throw Error(ErrorKind::NotADecomposition, "family does not multiply to the poset");
    }
  }
  auto tokens = [&](const std::vector<FinitePoset>& fam) {
    std::vector<std::vector<FinitePoset>> out;
    for (const auto& f : fam) out.push_back(irreducible_factorization(f, cap).factors);
    return out;
  };
  const auto t1 = tokens(fam1);
  const auto t2 = tokens(fam2);

  std::vector<std::vector<bool>> used(t2.size());
  for (std::size_t j = 0; j < t2.size(); ++j) used[j].assign(t2[j].size(), false);
  std::vector<std::vector<std::vector<FinitePoset>>> cells(
      fam1.size(), std::vector<std::vector<FinitePoset>>(fam2.size()));
  for (std::size_t i = 0; i < t1.size(); ++i) {
    for (const auto& tok : t1[i]) {
      bool placed = false;
      for (std::size_t j = 0; j < t2.size() && !placed; ++j) {
        for (std::size_t x = 0; x < t2[j].size() && !placed; ++x) {
          if (used[j][x] || !are_isomorphic(tok, t2[j][x])) continue;
          used[j][x] = placed = true;
          cells[i][j].push_back(tok);
        }
      }
      if (!placed) throw Error(ErrorKind::RefinementNotFound, "irreducible factor has no partner");
    }
  }
  for (const auto& row : used) {
    if (std::find(row.begin(), row.end(), false) != row.end()) {
      throw Error(ErrorKind::RefinementNotFound, "irreducible factor left unmatched");
    }
  }

  std::vector<std::vector<FinitePoset>> z(fam1.size(), std::vector<FinitePoset>(fam2.size()));
  for (std::size_t i = 0; i < fam1.size(); ++i) {
    for (std::size_t j = 0; j < fam2.size(); ++j) z[i][j] = product(cells[i][j]);
  }
  for (std::size_t i = 0; i < fam1.size(); ++i) {
    if (!are_isomorphic(product(z[i]), fam1[i])) {
      throw Error(ErrorKind::RefinementNotFound, "row product differs from the family member");
    }
  }
  for (std::size_t j = 0; j < fam2.size(); ++j) {
    std::vector<FinitePoset> column;
    for (std::size_t i = 0; i < fam1.size(); ++i) column.push_back(z[i][j]);
    if (!are_isomorphic(product(column), fam2[j])) {
      throw Error(ErrorKind::RefinementNotFound, "column product differs from the family member");
    }
  }
  return z;
}

}  // namespace fiberorder
