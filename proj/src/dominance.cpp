#include "fiberorder/dominance.hpp"

#include <bit>
#include <mutex>

#include "fiberorder/error.hpp"
#include "fiberorder/flow.hpp"
#include "fiberorder/limits.hpp"

namespace fiberorder {

std::vector<int> subset_elements(SubsetMask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i + 1);
  }
  return out;
}

SubsetMask subset_from_elements(const std::vector<int>& elements, int k) {
  SubsetMask mask = 0;
  for (int e : elements) {
    if (e < 1 || e > k) {
      throw Error(ErrorKind::InvalidPoint, "subset element " + std::to_string(e) +
                                               " outside {1.." + std::to_string(k) + "}");
    }
    mask |= SubsetMask{1} << (e - 1);
  }
  return mask;
}

std::string subset_string(SubsetMask mask) {
  std::string out = "{";
  bool first = true;
  for (int e : subset_elements(mask)) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Less: return "LE";
    case Verdict::Greater: return "GE";
    case Verdict::Equivalent: return "EQ";
    case Verdict::Incomparable: return "INCOMPARABLE";
  }
  return "INCOMPARABLE";
}

Verdict verdict_from(bool le, bool ge) {
  if (le && ge) return Verdict::Equivalent;
  if (le) return Verdict::Less;
  if (ge) return Verdict::Greater;
  return Verdict::Incomparable;
}

UpsetFamily::UpsetFamily(int k, std::uint32_t members) : k_(k), members_(members) {
  const SubsetMask top = SubsetMask{1} << k;
  for (SubsetMask a = 0; a < top; ++a) {
    if (!contains(a)) continue;
    bool minimal = true;
    for (SubsetMask rest = a; rest != 0; rest &= rest - 1) {
      if (contains(a & ~(rest & -rest))) {
        minimal = false;
        break;
      }
    }
    if (minimal) minimal_.push_back(a);
  }
}

std::vector<SubsetMask> UpsetFamily::members() const {
  std::vector<SubsetMask> out;
  for (SubsetMask a = 0; a < (SubsetMask{1} << k_); ++a) {
    if (contains(a)) out.push_back(a);
  }
  return out;
}

namespace {

std::vector<UpsetFamily> generate_upsets(int k) {
  const int full = (1 << k) - 1;
  std::vector<UpsetFamily> out;
  // Masks are decided from the top down, so every superset of `a` is
  // already settled when `a` is reached.
  auto walk = [&](auto&& self, int a, std::uint32_t members) -> void {
    if (a < 0) {
      out.emplace_back(k, members);
      return;
    }
    self(self, a - 1, members);
    for (int i = 0; i < k; ++i) {
      const int b = a | (1 << i);
      if (b != a && !((members >> b) & 1U)) return;
    }
    self(self, a - 1, members | (std::uint32_t{1} << a));
  };
  walk(walk, full, 0);
  return out;
}

}  // namespace

const std::vector<UpsetFamily>& enumerate_upsets(int k) {
  if (k < 0 || k > kMaxUpsetK) {
    throw Error(ErrorKind::KTooLarge, "upset enumeration supports k <= " +
                                          std::to_string(kMaxUpsetK));
  }
  static std::once_flag flags[kMaxUpsetK + 1];
  static std::vector<UpsetFamily> cache[kMaxUpsetK + 1];
  std::call_once(flags[k], [k] { cache[k] = generate_upsets(k); });
  return cache[k];
}

void validate_ok_point(const OkPoint& p) {
  Rational prev;
  for (const auto& v : p.values) {
    if (v < prev || v > Rational(1)) {
      throw Error(ErrorKind::InvalidPoint, "point must satisfy 0 <= t_1 <= ... <= t_k <= 1");
    }
    prev = v;
  }
}

void validate_pk_point(const PkPoint& p) {
  if (p.k < 0 || p.k > 20 || p.mass.size() != (std::size_t{1} << p.k)) {
    throw Error(ErrorKind::InvalidPoint, "mass vector must have 2^k entries");
  }
  Rational total;
  for (const auto& v : p.mass) {
    if (v.sign() < 0) throw Error(ErrorKind::InvalidPoint, "negative mass");
    total += v;
  }
  if (total != Rational(1)) {
    throw Error(ErrorKind::InvalidPoint, "masses sum to " + total.str() + ", not 1");
  }
}

PkPoint make_pk_point(int k, std::vector<Rational> mass) {
  PkPoint p{k, std::move(mass)};
  validate_pk_point(p);
  return p;
}

Verdict ok_compare(const OkPoint& t, const OkPoint& s) {
  if (t.values.size() != s.values.size()) {
    throw Error(ErrorKind::DimensionMismatch, "points have different k");
  }
  bool le = true, ge = true;
  for (std::size_t j = 0; j < t.values.size(); ++j) {
    if (t.values[j] > s.values[j]) le = false;
    if (t.values[j] < s.values[j]) ge = false;
  }
  return verdict_from(le, ge);
}

namespace {

void check_same_k(const PkPoint& t, const PkPoint& s) {
  if (t.k != s.k || t.mass.size() != s.mass.size()) {
    throw Error(ErrorKind::DimensionMismatch, "points have different k");
  }
}

Rational family_mass(const UpsetFamily& f, const PkPoint& p) {
  Rational sum;
  for (SubsetMask a = 0; a < p.mass.size(); ++a) {
    if (f.contains(a)) sum += p.mass[a];
  }
  return sum;
}

}  // namespace

Verdict pk_compare(const PkPoint& t, const PkPoint& s) {
  check_same_k(t, s);
  bool le = true, ge = true;
  for (const auto& f : enumerate_upsets(t.k)) {
    const Rational a = family_mass(f, t);
    const Rational b = family_mass(f, s);
    if (a > b) le = false;
    if (a < b) ge = false;
    if (!le && !ge) break;
  }
  return verdict_from(le, ge);
}

std::optional<std::vector<CouplingEntry>> pk_coupling(const PkPoint& t, const PkPoint& s) {
  check_same_k(t, s);
  const SubsetMask d = static_cast<SubsetMask>(t.mass.size());
  // Vertices: 0 source, 1 sink, 2+A left copy, 2+d+B right copy. Labels are
  // zero-padded so that label order follows the masks.
  std::vector<std::string> labels{"s", "t"};
  auto pad = [](SubsetMask a) {
    std::string digits = std::to_string(a);
    return std::string(8 - digits.size(), '0') + digits;
  };
  for (SubsetMask a = 0; a < d; ++a) labels.push_back("a" + pad(a));
  for (SubsetMask b = 0; b < d; ++b) labels.push_back("b" + pad(b));
  std::vector<Arc> arcs;
  for (SubsetMask a = 0; a < d; ++a) {
    if (t.mass[a].sign() > 0) arcs.push_back({0, 2 + a, t.mass[a]});
    if (s.mass[a].sign() > 0) arcs.push_back({2 + d + a, 1, s.mass[a]});
  }
  for (SubsetMask a = 0; a < d; ++a) {
    if (t.mass[a].sign() == 0) continue;
    for (SubsetMask b = 0; b < d; ++b) {
      if ((a & b) == a && s.mass[b].sign() > 0) arcs.push_back({2 + a, 2 + d + b, Rational(1)});
    }
  }
  FlowNetwork net(std::move(labels), std::move(arcs), 0, 1);
  auto result = max_flow(net);
  if (result.value != Rational(1)) return std::nullopt;
  std::vector<CouplingEntry> gamma;
  for (std::size_t e = 0; e < net.arcs().size(); ++e) {
    const auto& arc = net.arcs()[e];
    if (arc.from < 2 || arc.to == 1 || result.flow[e].is_zero()) continue;
    gamma.push_back({static_cast<SubsetMask>(arc.from - 2),
                     static_cast<SubsetMask>(arc.to - 2 - d), result.flow[e]});
  }
  return gamma;
}

bool validate_coupling(const PkPoint& t, const PkPoint& s,
                       const std::vector<CouplingEntry>& gamma) {
  if (t.mass.size() != s.mass.size()) return false;
  std::vector<Rational> rows(t.mass.size()), cols(s.mass.size());
  for (const auto& g : gamma) {
    if (g.from >= t.mass.size() || g.to >= s.mass.size()) return false;
    if ((g.from & g.to) != g.from || g.mass.sign() < 0) return false;
    rows[g.from] += g.mass;
    cols[g.to] += g.mass;
  }
  return rows == t.mass && cols == s.mass;
}

Verdict pk_compare_flow(const PkPoint& t, const PkPoint& s) {
  const bool le = pk_coupling(t, s).has_value();
  const bool ge = pk_coupling(s, t).has_value();
  return verdict_from(le, ge);
}

namespace {

/// C(n, r) or nullopt once it exceeds `cap`.
std::optional<std::size_t> bounded_binomial(std::size_t n, std::size_t r, std::size_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > cap) return std::nullopt;
  }
  return static_cast<std::size_t>(acc);
}

void check_grid_size(std::size_t n, std::size_t r, const char* what) {
  if (!bounded_binomial(n, r, element_cap())) {
    throw Error(ErrorKind::SizeOverflow,
                std::string(what) + " grid exceeds the cap of " + std::to_string(element_cap()));
  }
}

void check_params(int k, int m) {
  if (k < 0 || m < 1) throw Error(ErrorKind::InvalidInput, "need k >= 0 and m >= 1");
}

}  // namespace

std::vector<OkPoint> ok_grid_points(int k, int m) {
  check_params(k, m);
  check_grid_size(static_cast<std::size_t>(m + k), static_cast<std::size_t>(k), "O_k");
  std::vector<OkPoint> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  auto walk = [&](auto&& self, int pos, int lo) -> void {
    if (pos == k) {
      OkPoint p;
      for (int v : cur) p.values.emplace_back(v, m);
      out.push_back(std::move(p));
      return;
    }
    for (int v = lo; v <= m; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, v);
    }
  };
  walk(walk, 0, 0);
  return out;
}

std::vector<PkPoint> pk_grid_points(int k, int m) {
  check_params(k, m);
  if (k > 20) throw Error(ErrorKind::SizeOverflow, "P_k grid exceeds the cap");
  const std::size_t d = std::size_t{1} << k;
  check_grid_size(static_cast<std::size_t>(m) + d - 1, d - 1, "P_k");
  std::vector<PkPoint> out;
  std::vector<int> cur(d);
  auto walk = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == d) {
      cur[pos] = left;
      PkPoint p{k, {}};
      for (int v : cur) p.mass.emplace_back(v, m);
      out.push_back(std::move(p));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  walk(walk, 0, m);
  return out;
}

std::string point_label(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += values[i].str();
  }
  return out + ")";
}

FinitePoset build_ok_poset(int k, int m) {
  const auto pts = ok_grid_points(k, m);
  std::vector<std::string> labels;
  for (const auto& p : pts) labels.push_back(point_label(p.values));
  return FinitePoset::from_predicate(std::move(labels), [&](std::size_t i, std::size_t j) {
    return is_le(ok_compare(pts[i], pts[j]));
  });
}

FinitePoset build_pk_poset(int k, int m) {
  const auto pts = pk_grid_points(k, m);
  std::vector<std::string> labels;
  for (const auto& p : pts) labels.push_back(point_label(p.mass));
  if (k > kMaxUpsetK) {
    return FinitePoset::from_predicate(std::move(labels), [&](std::size_t i, std::size_t j) {
      return pk_coupling(pts[i], pts[j]).has_value();
    });
  }
  // Upset masses as integer numerators over m, one row per point.
  const auto& fams = enumerate_upsets(k);
  std::vector<std::vector<long>> sums(pts.size(), std::vector<long>(fams.size()));
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t f = 0; f < fams.size(); ++f) {
      Rational s = family_mass(fams[f], pts[p]) * Rational(m);
      sums[p][f] = std::stol(s.str());
    }
  }
  return FinitePoset::from_predicate(std::move(labels), [&](std::size_t i, std::size_t j) {
    for (std::size_t f = 0; f < fams.size(); ++f) {
      if (sums[i][f] > sums[j][f]) return false;
    }
    return true;
  });
}

DownsetRegion linear_downset_region(const FinitePoset& p) {
  DownsetRegion out;
  const std::size_t n = p.size();
  Bitset in_h(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Bitset& down = p.down_set(a);
    bool chain = true;
    down.for_each([&](std::size_t b) {
      if (!chain) return;
      Bitset comp = p.up_set(b);
      comp |= p.down_set(b);
      if (!down.is_subset_of(comp)) chain = false;
    });
    if (chain) {
      in_h.set(a);
      out.elements.push_back(a);
    }
  }
  out.linear = true;
  for (auto a : out.elements) {
    Bitset above = p.up_set(a);
    above &= in_h;
    if (above.count() == 1) ++out.maximal_count;
    Bitset comp = p.up_set(a);
    comp |= p.down_set(a);
    if (!in_h.is_subset_of(comp)) out.linear = false;
  }
  return out;
}

}  // namespace fiberorder
