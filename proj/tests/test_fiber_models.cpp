#include <doctest.h>

#include <random>

#include "fiberorder/dominance.hpp"
#include "fiberorder/error.hpp"
#include "fiberorder/fiber_models.hpp"
#include "fiberorder/generators.hpp"

using namespace fiberorder;

namespace {

Rational q(long a, long b) { return Rational(a, b); }

std::size_t find_point(const FiberModel& f, const std::string& label) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.label(i) == label) return i;
  }
  FAIL("no point " << label);
  return 0;
}

DiscreteMeasure dirac(const FiberModel& f, std::size_t point) {
  DiscreteMeasure m{std::vector<Rational>(f.size())};
  m.mass[point] = 1;
  return m;
}

const SigmaMap kSigma{{"1", "2", "3", "4"}, {"1", "2"}, 2};
const StarMap kStar{{"m", "a", "b"}, {"w"}, {"w", "w", "w"}, "w", "m"};

std::vector<std::size_t> all_points(const FiberModel& f) {
  std::vector<std::size_t> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = i;
  return out;
}

}  // namespace

TEST_CASE("sigma fiber examples") {
  const auto pts = sigma_fiber(kSigma, {"1"});
  CHECK(pts == std::vector<std::vector<std::string>>{{"1"}, {"1", "3"}, {"1", "4"}});
  CHECK(sigma_fiber(kSigma, {"1", "2"}).size() == 1);
  CHECK(sigma_fiber({{"1", "2"}, {"1"}, 1}, {}).size() == 2);
  CHECK_THROWS_AS(sigma_fiber(kSigma, {"3"}), Error);
  CHECK_THROWS_AS(sigma_fiber({{"1", "2", "3"}, {"1", "2"}, 1}, {"1", "2"}), Error);
  CHECK_THROWS_AS(sigma_fiber({{"1"}, {"1"}, 1}, {}), Error);
}

TEST_CASE("sigma point order and brackets") {
  const SigmaFiber f(kSigma, {"1"});
  const auto a = find_point(f, "{1}"), b = find_point(f, "{1,3}"), c = find_point(f, "{1,4}");
  CHECK(f.point_compare(a, b) == Verdict::Less);
  CHECK(f.point_compare(b, c) == Verdict::Equivalent);
  CHECK(f.point_compare(a, a) == Verdict::Equivalent);
  const std::vector<std::size_t> yb{b}, ya{a};
  CHECK(f.bracket(yb).indices() == std::vector<std::size_t>{b, c});
  CHECK(f.bracket(ya).count() == 3);
}

TEST_CASE("sigma measure comparison") {
  const SigmaFiber f(kSigma, {"1"});
  const auto a = find_point(f, "{1}"), b = find_point(f, "{1,3}"), c = find_point(f, "{1,4}");
  DiscreteMeasure nu{{0, 0, 0}}, nu2{{0, 0, 0}};
  nu.mass[a] = q(1, 2);
  nu.mass[b] = q(1, 2);
  nu2.mass[c] = 1;
  CHECK(f.compare(nu, nu2) == Verdict::Less);
  CHECK(f.compare(nu, nu) == Verdict::Equivalent);

  // Tails (1/2, 0) against (1/4, 1/4).
  const SigmaFiber g({{"1", "2", "3", "4", "5"}, {"1", "2"}, 3}, {"1"});
  DiscreteMeasure t{std::vector<Rational>(g.size())}, u{std::vector<Rational>(g.size())};
  t.mass[find_point(g, "{1}")] = q(1, 2);
  t.mass[find_point(g, "{1,3}")] = q(1, 2);
  u.mass[find_point(g, "{1}")] = q(3, 4);
  u.mass[find_point(g, "{1,3,4}")] = q(1, 4);
  CHECK(g.tails(t) == std::vector<Rational>{q(1, 2), 0});
  CHECK(g.tails(u) == std::vector<Rational>{q(1, 4), q(1, 4)});
  CHECK(g.compare(t, u) == Verdict::Incomparable);
  CHECK_THROWS_AS(g.compare(t, DiscreteMeasure{{1}}), Error);
}

TEST_CASE("star S-sets and brackets") {
  const StarFiber f(kStar, {"w", "w"});
  CHECK(f.size() == 9);
  CHECK(f.s_set(f.point_index({"m", "m"})) == 0U);
  CHECK(f.s_set(f.point_index({"a", "b"})) == 0b11U);
  CHECK(f.s_set(f.point_index({"a", "m"})) == 0b01U);

  const std::vector<std::size_t> bottom{f.point_index({"m", "m"})};
  CHECK(f.bracket(bottom).count() == 9);
  const std::vector<std::size_t> am{f.point_index({"a", "m"})};
  const auto br = f.bracket(am);
  CHECK(br.count() == 6);
  br.for_each([&](std::size_t z) { CHECK(f.label(z).substr(1, 1) != "m"); });
  const std::vector<std::size_t> singles{f.point_index({"a", "m"}), f.point_index({"m", "b"})};
  const auto cover = f.bracket(singles);
  CHECK(cover.count() == 8);
  CHECK_FALSE(cover.test(f.point_index({"m", "m"})));
}

TEST_CASE("star measure comparison") {
  const StarFiber f(kStar, {"w", "w"});
  const auto lo = dirac(f, f.point_index({"m", "m"}));
  const auto hi = dirac(f, f.point_index({"a", "a"}));
  CHECK(f.compare(lo, hi) == Verdict::Less);
  CHECK(f.compare(hi, hi) == Verdict::Equivalent);
  // Non-varpi coordinates do not enter R(x).
  const StarFiber g({{"m", "a", "z"}, {"w", "y"}, {"w", "w", "y"}, "w", "m"}, {"w", "y"});
  CHECK(g.size() == 2);
  CHECK(g.r_size() == 1);
  CHECK(g.r_mask() == 0b01U);
}

TEST_CASE("star maps must satisfy the star condition") {
  CHECK_THROWS_AS(StarFiber({{"m", "a", "b", "c"}, {"w", "y"}, {"w", "w", "y", "y"}, "w", "m"}, {"w"}),
                  Error);
  CHECK_THROWS_AS(StarFiber({{"m", "a"}, {"w"}, {"w", "w"}, "w", "q"}, {"w"}), Error);
  CHECK_THROWS_AS(StarFiber(kStar, {"y"}), Error);
}

TEST_CASE("generic comparator agrees with closed forms") {
  const SigmaFiber sigma(kSigma, {});
  const StarFiber star(kStar, {"w", "w"});
  for (const FiberModel* f : {static_cast<const FiberModel*>(&sigma), static_cast<const FiberModel*>(&star)}) {
    const BracketLattice lattice(*f);
    const int m = f->size() > 4 ? 2 : 4;
    const auto grid = grid_measures(f->size(), m);
    for (const auto& a : grid) {
      for (const auto& b : grid) CHECK(generic_dirac_compare(*f, lattice, a, b) == f->compare(a, b));
    }
  }
}

TEST_CASE("star comparator is pk_compare on the reduced point") {
  const StarFiber f({{"m", "a", "b", "c"}, {"w"}, {"w", "w", "w", "w"}, "w", "m"}, {"w", "w"});
  gen::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gen::measure(rng, f.size(), 6);
    const auto b = gen::measure(rng, f.size(), 6);
    CHECK(f.compare(a, b) == pk_compare(f.pk_point(a), f.pk_point(b)));
  }
}

TEST_CASE("product comparator") {
  const std::vector<Rational> w{q(1, 2), q(1, 2)};
  CHECK(product_measure_compare(w, {Verdict::Less, Verdict::Less}) == Verdict::Less);
  CHECK(product_measure_compare(w, {Verdict::Less, Verdict::Equivalent}) == Verdict::Less);
  CHECK(product_measure_compare(w, {Verdict::Incomparable, Verdict::Equivalent}) == Verdict::Incomparable);
  CHECK(product_measure_compare(w, {Verdict::Less, Verdict::Greater}) == Verdict::Incomparable);
  CHECK_THROWS_AS(product_measure_compare({q(1, 2)}, {Verdict::Less}), Error);
}

TEST_CASE("property: brackets are monotone and up-closed; Diracs recover the point order") {
  const SigmaFiber sigma({{"1", "2", "3", "4", "5"}, {"1", "2"}, 3}, {"1"});
  const StarFiber star(kStar, {"w", "w"});
  for (const FiberModel* f : {static_cast<const FiberModel*>(&sigma), static_cast<const FiberModel*>(&star)}) {
    const std::size_t n = f->size();
    for (std::uint32_t ys = 1; ys < (1U << n); ys += 7) {
      std::vector<std::size_t> y;
      for (std::size_t i = 0; i < n; ++i) {
        if (ys >> i & 1U) y.push_back(i);
      }
      const auto br = f->bracket(y);
      for (auto e : y) CHECK(br.test(e));
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (br.test(a) && f->point_le(a, b)) CHECK(br.test(b));
        }
      }
      for (std::size_t extra = 0; extra < n; ++extra) {
        auto y2 = y;
        y2.push_back(extra);
        CHECK(br.is_subset_of(f->bracket(y2)));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(generic_dirac_compare(*f, dirac(*f, a), dirac(*f, b)) == f->point_compare(a, b));
      }
    }
  }
}

TEST_CASE("property: sigma point order is total with n-|x|+1 classes") {
  for (int n = 1; n <= 3; ++n) {
    for (int bx = 0; bx <= n; ++bx) {
      std::vector<std::string> x;
      for (int i = 1; i <= bx; ++i) x.push_back(std::to_string(i));
      const SigmaFiber f({{"1", "2", "3", "4", "5", "6"}, {"1", "2", "3"}, n}, x);
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < f.size(); ++i) labels.push_back(f.label(i));
      const auto pre = FinitePreorder::from_predicate(labels, [&](std::size_t a, std::size_t b) {
        return f.point_le(a, b);
      });
      CHECK(pre.incomparable_pair_count() == 0);
      const auto quo = quotient_to_poset(pre);
      CHECK(is_linear(quo.poset));
      CHECK(quo.poset.size() == static_cast<std::size_t>(n - bx + 1));
    }
  }
}

TEST_CASE("fiber order posets") {
  const SigmaFiber f(kSigma, {"1"});
  CHECK(are_isomorphic(fiber_order_poset(f, 2), build_ok_poset(1, 2)));
  const StarFiber s(kStar, {"w", "w"});
  CHECK(are_isomorphic(fiber_order_poset(s, 2), build_pk_poset(2, 2)));
  const SigmaFiber single(kSigma, {"1", "2"});
  CHECK(fiber_order_poset(single, 3).size() == 1);
  const auto order = fiber_order(f, 2);
  CHECK(order.class_of.size() == grid_measures(f.size(), 2).size());
  CHECK(order.measures.size() == order.poset.size());
  // Representatives are the lexicographically least members of their class.
  const auto grid = grid_measures(f.size(), 2);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(order.measures[order.class_of[i]].mass <= grid[i].mass);
}

TEST_CASE("grid measures") {
  const auto g = grid_measures(3, 2);
  CHECK(g.size() == 6);
  CHECK(g.front().mass == std::vector<Rational>{0, 0, 1});
  CHECK(g.back().mass == std::vector<Rational>{1, 0, 0});
}

TEST_CASE("bracket lattice cap") {
  const SigmaFiber big({{"1", "2", "3", "4", "5", "6", "7"}, {"1"}, 2}, {});
  CHECK(big.size() == 22);
  try {
    BracketLattice l(big);
    FAIL("built");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FiberTooLarge);
  }
}

TEST_CASE("ball fibers") {
  const std::vector<bool> split{false, true, true};
  CHECK(ball_fiber_compare({{q(1, 2), 0, 0}, split}, {{q(1, 2), 0, 0}, split}) == Verdict::Equivalent);
  CHECK(ball_fiber_compare({{q(1, 2), 0, 0}, split}, {{q(1, 2), q(1, 4), 0}, split}) == Verdict::Less);
  CHECK(ball_fiber_compare({{0, q(1, 3), 0}, split}, {{0, q(-1, 6), q(1, 6)}, split}) ==
        Verdict::Equivalent);
  try {
    ball_fiber_compare({{q(1, 2), 0, 0}, split}, {{q(1, 4), 0, 0}, split});
    FAIL("compared");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BaseMismatch);
  }
  CHECK_THROWS_AS(validate_ball_point({{1, q(1, 2)}, {false, true}}), Error);

  CHECK(ball_order_descriptor({{1, 0}, {0, -1}}, 2).r == 0);
  CHECK(ball_order_descriptor({{1, 0}, {0, -1}}, 2).grid.size() == 1);
  const auto inside = ball_order_descriptor({{q(1, 2)}, {0}, {q(1, 3), q(1, 3)}}, 2);
  CHECK(inside.r == 3);
  CHECK(inside.grid.size() == 27);
  const auto mixed = ball_order_descriptor({{q(1, 2), q(1, 2)}, {q(1, 4)}}, 3);
  CHECK(mixed.r == 1);
  CHECK(are_isomorphic(mixed.grid, chain(4)));
}
