#include "fiberorder/fiber_models.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "fiberorder/error.hpp"
#include "fiberorder/limits.hpp"

namespace fiberorder {

void FiberModel::check_measure(const DiscreteMeasure& nu) const { validate_measure(nu, size()); }

namespace {

std::unordered_map<std::string, std::size_t> index_labels(const std::vector<std::string>& labels,
                                                          const char* what) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!index.emplace(labels[i], i).second) {
      throw Error(ErrorKind::DuplicateLabel, std::string("duplicate ") + what + " label " + labels[i]);
    }
  }
  return index;
}

void check_fiber_size(std::size_t size) {
  if (size > element_cap()) {
    throw Error(ErrorKind::SizeOverflow, "fiber exceeds the cap of " + std::to_string(element_cap()));
  }
}

std::string join_set(const std::vector<std::string>& parts) {
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ',';
    out += parts[i];
  }
  return out + "}";
}

}  // namespace

// ---- sigma -----------------------------------------------------------------

SigmaFiber::SigmaFiber(SigmaMap map, std::vector<std::string> x) : map_(std::move(map)) {
  if (map_.n < 1) throw Error(ErrorKind::InvalidInput, "n must be positive");
  const auto mindex = index_labels(map_.m, "M");
  index_labels(map_.n_labels, "N");
  std::vector<bool> in_n(map_.m.size(), false);
  for (const auto& l : map_.n_labels) {
    auto it = mindex.find(l);
    if (it == mindex.end()) throw Error(ErrorKind::UnknownLabel, "N label " + l + " is not in M");
    in_n[it->second] = true;
  }
  if (map_.n_labels.size() == map_.m.size()) {
    throw Error(ErrorKind::InvalidInput, "N must be a proper subset of M");
  }

  std::vector<std::size_t> base;
  std::unordered_set<std::string> seen;
  for (const auto& l : x) {
    auto it = mindex.find(l);
    if (it == mindex.end() || !in_n[it->second]) {
      throw Error(ErrorKind::BadBasePoint, "base point element " + l + " is not in N");
    }
    if (!seen.insert(l).second) throw Error(ErrorKind::BadBasePoint, "repeated base element " + l);
    base.push_back(it->second);
  }
  if (base.size() > static_cast<std::size_t>(map_.n)) {
    throw Error(ErrorKind::BadBasePoint, "base point has more than n elements");
  }
  base_size_ = base.size();

  std::vector<std::size_t> tail;
  for (std::size_t i = 0; i < map_.m.size(); ++i) {
    if (!in_n[i]) tail.push_back(i);
  }
  const std::size_t room = static_cast<std::size_t>(map_.n) - base_size_;
  std::vector<std::size_t> pick;
  auto walk = [&](auto&& self, std::size_t from, std::size_t left) -> void {
    if (left == 0) {
      std::vector<std::size_t> w = base;
      w.insert(w.end(), pick.begin(), pick.end());
      std::sort(w.begin(), w.end());
      points_.push_back(std::move(w));
      check_fiber_size(points_.size());
      return;
    }
    for (std::size_t i = from; i + left <= tail.size(); ++i) {
      pick.push_back(tail[i]);
      self(self, i + 1, left - 1);
      pick.pop_back();
    }
  };
  for (std::size_t j = 0; j <= room && j <= tail.size(); ++j) walk(walk, 0, j);
}

std::string SigmaFiber::label(std::size_t point) const {
  std::vector<std::string> parts;
  for (auto i : points_[point]) parts.push_back(map_.m[i]);
  return join_set(parts);
}

bool SigmaFiber::point_le(std::size_t a, std::size_t b) const {
  return points_[a].size() <= points_[b].size();
}

Bitset SigmaFiber::bracket(std::span<const std::size_t> ys) const {
  if (ys.empty()) throw Error(ErrorKind::InvalidInput, "bracket of an empty list");
  std::size_t least = points_[ys.front()].size();
  for (auto y : ys) least = std::min(least, points_[y].size());
  Bitset out(size());
  for (std::size_t w = 0; w < size(); ++w) {
    if (points_[w].size() >= least) out.set(w);
  }
  return out;
}

std::vector<Rational> SigmaFiber::tails(const DiscreteMeasure& nu) const {
  const std::size_t room = static_cast<std::size_t>(map_.n) - base_size_;
  std::vector<Rational> out(room);
  for (std::size_t w = 0; w < size(); ++w) {
    const std::size_t extra = points_[w].size() - base_size_;
    for (std::size_t k = 1; k <= extra; ++k) out[k - 1] += nu.mass[w];
  }
  return out;
}

Verdict SigmaFiber::compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const {
  check_measure(nu);
  check_measure(nu2);
  const auto a = tails(nu), b = tails(nu2);
  bool le = true, ge = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) le = false;
    if (a[k] < b[k]) ge = false;
  }
  return verdict_from(le, ge);
}

std::vector<std::vector<std::string>> sigma_fiber(const SigmaMap& map,
                                                  const std::vector<std::string>& x) {
  SigmaFiber f(map, x);
  std::vector<std::vector<std::string>> out;
  for (const auto& w : f.points()) {
    std::vector<std::string> labels;
    for (auto i : w) labels.push_back(map.m[i]);
    out.push_back(std::move(labels));
  }
  return out;
}

// ---- star ------------------------------------------------------------------

StarFiber::StarFiber(StarMap map, std::vector<std::string> x) : map_(std::move(map)) {
  DiscreteSurjection g(map_.k, map_.l, map_.g);
  const auto lindex = index_labels(map_.l, "L");
  const auto kindex = index_labels(map_.k, "K");
  auto vit = lindex.find(map_.varpi);
  if (vit == lindex.end()) throw Error(ErrorKind::UnknownLabel, "varpi " + map_.varpi + " is not in L");
  auto mit = kindex.find(map_.m);
  if (mit == kindex.end()) throw Error(ErrorKind::UnknownLabel, "m " + map_.m + " is not in K");
  if (g.image(mit->second) != vit->second) {
    throw Error(ErrorKind::InvalidInput, "m must lie in the fiber over varpi");
  }
  m_index_ = mit->second;
  std::vector<std::vector<std::size_t>> pre(map_.l.size());
  for (std::size_t i = 0; i < map_.k.size(); ++i) pre[g.image(i)].push_back(i);
  for (std::size_t y = 0; y < pre.size(); ++y) {
    if (y == vit->second) {
      if (pre[y].size() < 2) throw Error(ErrorKind::InvalidInput, "fiber over varpi needs two points");
    } else if (pre[y].size() != 1) {
      throw Error(ErrorKind::InvalidInput, "fiber over " + map_.l[y] + " must be a single point");
    }
  }

  if (x.empty() || x.size() > 31) throw Error(ErrorKind::BadBasePoint, "base point needs 1..31 coordinates");
  std::vector<const std::vector<std::size_t>*> options;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto it = lindex.find(x[i]);
    if (it == lindex.end()) throw Error(ErrorKind::BadBasePoint, "coordinate " + x[i] + " is not in L");
    if (it->second == vit->second) r_mask_ |= SubsetMask{1} << i;
    options.push_back(&pre[it->second]);
  }
  std::size_t total = 1;
  for (auto* o : options) {
    total *= o->size();
    check_fiber_size(total);
  }
  std::vector<std::size_t> cur(x.size());
  auto walk = [&](auto&& self, std::size_t pos) -> void {
    if (pos == x.size()) {
      points_.push_back(cur);
      return;
    }
    for (auto v : *options[pos]) {
      cur[pos] = v;
      self(self, pos + 1);
    }
  };
  walk(walk, 0);
  for (const auto& z : points_) {
    SubsetMask s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if ((r_mask_ >> i & 1U) && z[i] != m_index_) s |= SubsetMask{1} << i;
    }
    s_.push_back(s);
  }
}

int StarFiber::r_size() const { return std::popcount(r_mask_); }

std::string StarFiber::label(std::size_t point) const {
  std::string out = "(";
  for (std::size_t i = 0; i < points_[point].size(); ++i) {
    if (i > 0) out += ',';
    out += map_.k[points_[point][i]];
  }
  return out + ")";
}

bool StarFiber::point_le(std::size_t a, std::size_t b) const { return (s_[a] & ~s_[b]) == 0; }

Bitset StarFiber::bracket(std::span<const std::size_t> ys) const {
  if (ys.empty()) throw Error(ErrorKind::InvalidInput, "bracket of an empty list");
  Bitset out(size());
  for (std::size_t z = 0; z < size(); ++z) {
    for (auto y : ys) {
      if ((s_[y] & ~s_[z]) == 0) {
        out.set(z);
        break;
      }
    }
  }
  return out;
}

SubsetMask StarFiber::s_rank(std::size_t point) const {
  SubsetMask out = 0;
  int rank = 0;
  for (int i = 0; i < 32; ++i) {
    if (!(r_mask_ >> i & 1U)) continue;
    if (s_[point] >> i & 1U) out |= SubsetMask{1} << rank;
    ++rank;
  }
  return out;
}

PkPoint StarFiber::pk_point(const DiscreteMeasure& nu) const {
  check_measure(nu);
  PkPoint t{r_size(), std::vector<Rational>(std::size_t{1} << r_size())};
  for (std::size_t z = 0; z < size(); ++z) t.mass[s_rank(z)] += nu.mass[z];
  return t;
}

Verdict StarFiber::compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const {
  const int k = r_size();
  const auto& families = enumerate_upsets(k);
  check_measure(nu);
  check_measure(nu2);
  bool le = true, ge = true;
  for (const auto& f : families) {
    Rational a, b;
    for (std::size_t z = 0; z < size(); ++z) {
      if (!f.contains(s_rank(z))) continue;
      a += nu.mass[z];
      b += nu2.mass[z];
    }
    if (a > b) le = false;
    if (a < b) ge = false;
  }
  return verdict_from(le, ge);
}

std::size_t StarFiber::point_index(const std::vector<std::string>& labels) const {
  for (std::size_t p = 0; p < points_.size(); ++p) {
    if (labels.size() != points_[p].size()) break;
    bool same = true;
    for (std::size_t i = 0; i < labels.size() && same; ++i) same = map_.k[points_[p][i]] == labels[i];
    if (same) return p;
  }
  throw Error(ErrorKind::InvalidPoint, "tuple is not in the fiber");
}

// ---- joint -----------------------------------------------------------------

JointFiber::JointFiber(std::vector<const FiberModel*> parts, std::vector<Rational> weights)
    : parts_(std::move(parts)), weights_(std::move(weights)) {
  if (parts_.empty() || parts_.size() != weights_.size()) {
    throw Error(ErrorKind::InvalidInput, "need one positive weight per part");
  }
  Rational total;
  for (const auto& r : weights_) {
    if (r.sign() <= 0) throw Error(ErrorKind::InvalidInput, "weights must be positive");
    total += r;
  }
  if (total != Rational(1)) throw Error(ErrorKind::InvalidInput, "weights must sum to 1");
  for (const auto* p : parts_) {
    offset_.push_back(total_);
    total_ += p->size();
  }
}

namespace {

std::pair<std::size_t, std::size_t> locate(const std::vector<std::size_t>& offset, std::size_t point) {
  const auto it = std::upper_bound(offset.begin(), offset.end(), point);
  const std::size_t part = static_cast<std::size_t>(it - offset.begin()) - 1;
  return {part, point - offset[part]};
}

}  // namespace

std::string JointFiber::label(std::size_t point) const {
  auto [part, local] = locate(offset_, point);
  return std::to_string(part + 1) + ":" + parts_[part]->label(local);
}

bool JointFiber::point_le(std::size_t a, std::size_t b) const {
  auto [pa, la] = locate(offset_, a);
  auto [pb, lb] = locate(offset_, b);
  return pa == pb && parts_[pa]->point_le(la, lb);
}

Bitset JointFiber::bracket(std::span<const std::size_t> ys) const {
  if (ys.empty()) throw Error(ErrorKind::InvalidInput, "bracket of an empty list");
  std::vector<std::vector<std::size_t>> split(parts_.size());
  for (auto y : ys) {
    auto [part, local] = locate(offset_, y);
    split[part].push_back(local);
  }
  Bitset out(total_);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (split[i].empty()) continue;
    parts_[i]->bracket(split[i]).for_each([&](std::size_t z) { out.set(offset_[i] + z); });
  }
  return out;
}

DiscreteMeasure JointFiber::component(const DiscreteMeasure& nu, std::size_t i) const {
  DiscreteMeasure out{std::vector<Rational>(parts_[i]->size())};
  Rational mass;
  for (std::size_t z = 0; z < parts_[i]->size(); ++z) {
    out.mass[z] = nu.mass[offset_[i] + z] / weights_[i];
    mass += nu.mass[offset_[i] + z];
  }
  if (mass != weights_[i]) {
    throw Error(ErrorKind::InvalidMeasure, "measure does not push forward to the weighted atoms");
  }
  return out;
}

DiscreteMeasure JointFiber::combine(const std::vector<DiscreteMeasure>& parts) const {
  if (parts.size() != parts_.size()) throw Error(ErrorKind::InvalidInput, "need one measure per part");
  DiscreteMeasure out{std::vector<Rational>(total_)};
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    parts_[i]->check_measure(parts[i]);
    for (std::size_t z = 0; z < parts_[i]->size(); ++z) {
      out.mass[offset_[i] + z] = weights_[i] * parts[i].mass[z];
    }
  }
  return out;
}

Verdict JointFiber::compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const {
  check_measure(nu);
  check_measure(nu2);
  std::vector<Verdict> verdicts;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    verdicts.push_back(parts_[i]->compare(component(nu, i), component(nu2, i)));
  }
  return product_measure_compare(weights_, verdicts);
}

// ---- brackets and generic comparison ---------------------------------------

BracketLattice::BracketLattice(const FiberModel& model) {
  const std::size_t n = model.size();
  if (n > kMaxBracketFiber) {
    throw Error(ErrorKind::FiberTooLarge, "bracket enumeration is capped at " +
                                              std::to_string(kMaxBracketFiber) + " fiber points");
  }
  std::set<Bitset> distinct;
  std::vector<std::size_t> ys;
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
    ys.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (bits >> i & 1U) ys.push_back(i);
    }
    distinct.insert(model.bracket(ys));
  }
  sets_.assign(distinct.begin(), distinct.end());
}

Verdict generic_dirac_compare(const FiberModel& model, const BracketLattice& lattice,
                              const DiscreteMeasure& nu, const DiscreteMeasure& nu2) {
  model.check_measure(nu);
  model.check_measure(nu2);
  bool le = true, ge = true;
  for (const auto& set : lattice.sets()) {
    Rational a, b;
    set.for_each([&](std::size_t z) {
      a += nu.mass[z];
      b += nu2.mass[z];
    });
    if (a > b) le = false;
    if (a < b) ge = false;
  }
  return verdict_from(le, ge);
}

Verdict generic_dirac_compare(const FiberModel& model, const DiscreteMeasure& nu,
                              const DiscreteMeasure& nu2) {
  return generic_dirac_compare(model, BracketLattice(model), nu, nu2);
}

Verdict product_measure_compare(const std::vector<Rational>& weights,
                                const std::vector<Verdict>& components) {
  if (weights.size() != components.size()) {
    throw Error(ErrorKind::InvalidInput, "need one weight per component");
  }
  Rational total;
  for (const auto& r : weights) {
    if (r.sign() <= 0) throw Error(ErrorKind::InvalidInput, "weights must be positive");
    total += r;
  }
  if (total != Rational(1)) throw Error(ErrorKind::InvalidInput, "weights must sum to 1");
  bool le = true, ge = true;
  for (auto v : components) {
    le = le && is_le(v);
    ge = ge && is_ge(v);
  }
  return verdict_from(le, ge);
}

Verdict product_measure_compare(const std::vector<Rational>& weights,
                                const std::vector<const FiberModel*>& models,
                                const std::vector<DiscreteMeasure>& nus,
                                const std::vector<DiscreteMeasure>& nus2) {
  if (models.size() != nus.size() || models.size() != nus2.size()) {
    throw Error(ErrorKind::InvalidInput, "need one measure pair per component");
  }
  std::vector<Verdict> verdicts;
  for (std::size_t i = 0; i < models.size(); ++i) {
    verdicts.push_back(models[i]->compare(nus[i], nus2[i]));
  }
  return product_measure_compare(weights, verdicts);
}

// ---- discretized fiber orders ----------------------------------------------

std::vector<DiscreteMeasure> grid_measures(std::size_t support, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "m must be positive");
  if (support == 0) return {};
  // C(m + support - 1, support - 1), bounded by the element cap.
  unsigned __int128 count = 1;
  const std::size_t r = std::min<std::size_t>(static_cast<std::size_t>(m), support - 1);
  const std::size_t top = static_cast<std::size_t>(m) + support - 1;
  for (std::size_t i = 1; i <= r; ++i) {
    count = count * (top - r + i) / i;
    if (count > element_cap()) {
      throw Error(ErrorKind::SizeOverflow, "grid measures exceed the cap of " +
                                               std::to_string(element_cap()));
    }
  }
  std::vector<DiscreteMeasure> out;
  std::vector<int> cur(support);
  auto walk = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == support) {
      cur[pos] = left;
      DiscreteMeasure d;
      for (int v : cur) d.mass.emplace_back(v, m);
      out.push_back(std::move(d));
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

FiberOrder fiber_order(const FiberModel& model, int m) {
  auto measures = grid_measures(model.size(), m);
  std::vector<std::string> labels;
  for (const auto& d : measures) labels.push_back(point_label(d.mass));
  auto pre = FinitePreorder::from_predicate(std::move(labels), [&](std::size_t i, std::size_t j) {
    return is_le(model.compare(measures[i], measures[j]));
  });
  auto q = quotient_to_poset(pre);
  FiberOrder out;
  out.poset = std::move(q.poset);
  out.class_of = std::move(q.class_of);
  std::vector<bool> taken(out.poset.size(), false);
  out.measures.resize(out.poset.size());
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const std::size_t c = out.class_of[i];
    if (!taken[c]) {
      out.measures[c] = measures[i];
      taken[c] = true;
    }
  }
  return out;
}

FinitePoset fiber_order_poset(const FiberModel& model, int m) { return fiber_order(model, m).poset; }

// ---- ball ------------------------------------------------------------------

Rational l1_norm(const std::vector<Rational>& v) {
  Rational s;
  for (const auto& x : v) s += x.abs();
  return s;
}

void validate_ball_point(const BallPoint& p) {
  if (p.coords.size() != p.tail.size()) {
    throw Error(ErrorKind::InvalidPoint, "tail split must cover every coordinate");
  }
  if (l1_norm(p.coords) > Rational(1)) throw Error(ErrorKind::InvalidPoint, "point lies outside the ball");
}

Verdict ball_fiber_compare(const BallPoint& y1, const BallPoint& y2) {
  validate_ball_point(y1);
  validate_ball_point(y2);
  if (y1.tail != y2.tail) throw Error(ErrorKind::BaseMismatch, "points use different tail splits");
  Rational a, b;
  for (std::size_t i = 0; i < y1.coords.size(); ++i) {
    if (y1.tail[i]) {
      a += y1.coords[i].abs();
      b += y2.coords[i].abs();
    } else if (y1.coords[i] != y2.coords[i]) {
      throw Error(ErrorKind::BaseMismatch, "points lie in different fibers");
    }
  }
  return verdict_from(a <= b, b <= a);
}

BallDescriptor ball_order_descriptor(const std::vector<std::vector<Rational>>& x, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "m must be positive");
  BallDescriptor out;
  for (const auto& xi : x) {
    const Rational norm = l1_norm(xi);
    if (norm > Rational(1)) throw Error(ErrorKind::InvalidPoint, "point lies outside the ball");
    if (norm < Rational(1)) ++out.r;
  }
  std::vector<FinitePoset> chains(out.r, chain(static_cast<std::size_t>(m) + 1));
  out.grid = product(chains, element_cap());
  return out;
}

}  // namespace fiberorder
