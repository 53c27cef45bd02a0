#include <doctest.h>

#include "fiberorder/dominance.hpp"
#include "fiberorder/error.hpp"
#include "fiberorder/poset.hpp"
#include "test_support.hpp"

using namespace fiberorder;

namespace {

FinitePoset diamond() {
  const std::vector<FinitePoset> f{chain(2), chain(2)};
  return product(f);
}

FinitePoset grid23() {
  const std::vector<FinitePoset> f{chain(2), chain(3)};
  return product(f);
}

}  // namespace

TEST_CASE("make_preorder examples") {
  const std::vector<LabelPair> none;
  const auto one = make_preorder({"a"}, none, false);
  CHECK(one.size() == 1);
  CHECK(one.le(0, 0));

  const std::vector<LabelPair> sym{{"a", "b"}, {"b", "a"}};
  const auto two = make_preorder({"a", "b"}, sym, false);
  CHECK(two.equivalent(0, 1));

  const std::vector<LabelPair> path{{"a", "b"}, {"b", "c"}};
  const auto closed = make_preorder({"a", "b", "c"}, path, true);
  CHECK(closed.le(0, 2));
  CHECK_FALSE(closed.le(2, 0));
}

TEST_CASE("make_preorder rejects bad input") {
  const std::vector<LabelPair> path{{"a", "b"}, {"b", "c"}};
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalContradiction;
  };
  CHECK(kind_of([&] { make_preorder({"a", "b", "c"}, path, false); }) == ErrorKind::NotTransitive);
  const std::vector<LabelPair> unknown{{"a", "z"}};
  CHECK(kind_of([&] { make_preorder({"a"}, unknown, true); }) == ErrorKind::UnknownLabel);
  const std::vector<LabelPair> none;
  CHECK(kind_of([&] { make_preorder({"a", "a"}, none, true); }) == ErrorKind::DuplicateLabel);
  const std::vector<LabelPair> sym{{"a", "b"}, {"b", "a"}};
  CHECK(kind_of([&] { FinitePoset::make({"a", "b"}, sym, true); }) == ErrorKind::NotAntisymmetric);
}

TEST_CASE("quotient_to_poset examples") {
  const std::vector<LabelPair> sym{{"a", "b"}, {"b", "a"}};
  CHECK(quotient_to_poset(make_preorder({"a", "b"}, sym, false)).poset.size() == 1);

  // {1} < {1,3} ~ {1,4}
  const std::vector<LabelPair> fiber{{"{1}", "{1,3}"}, {"{1}", "{1,4}"}, {"{1,3}", "{1,4}"},
                                     {"{1,4}", "{1,3}"}};
  const auto q = quotient_to_poset(make_preorder({"{1}", "{1,3}", "{1,4}"}, fiber, true));
  CHECK(q.poset.size() == 2);
  CHECK(is_linear(q.poset));
  CHECK(q.class_of[1] == q.class_of[2]);
  CHECK(q.class_of[0] != q.class_of[1]);

  const auto d = diamond();
  const auto id = quotient_to_poset(d);
  CHECK(id.poset.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(id.class_of[i] == i);
}

TEST_CASE("product examples") {
  const std::vector<FinitePoset> none;
  CHECK(product(none).size() == 1);
  CHECK(diamond().size() == 4);
  CHECK(diamond().incomparable_pair_count() == 1);
  // Frozen against the brute-force pair count.
  const auto g = grid23();
  CHECK(testing::incomparable_pairs(g) == 3);
  CHECK(g.incomparable_pair_count() == 3);
  CHECK(g.label(product_index(std::vector<FinitePoset>{chain(2), chain(3)},
                              std::vector<std::size_t>{1, 2})) == "(1,2)");
}

TEST_CASE("product cap") {
  const std::vector<FinitePoset> big(21, chain(2));
  CHECK_THROWS_AS(product(big), Error);
}

TEST_CASE("is_connected examples") {
  CHECK(is_connected(chain(2)));
  CHECK_FALSE(is_connected(antichain(2)));
  CHECK(is_connected(antichain(0)));
  const std::vector<LabelPair> bottom{{"0", "1"}, {"0", "2"}, {"0", "3"}};
  CHECK(is_connected(FinitePoset::make({"0", "1", "2", "3"}, bottom, true)));
}

TEST_CASE("are_isomorphic examples") {
  const auto c3 = chain(3);
  const auto f = are_isomorphic(c3, chain(3));
  REQUIRE(f);
  CHECK(*f == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(are_isomorphic(diamond(), chain(4)));
  const auto o22 = build_ok_poset(2, 2);
  CHECK(o22.size() == 6);
  CHECK(testing::incomparable_pairs(o22) == 1);
  CHECK_FALSE(are_isomorphic(o22, grid23()));
}

TEST_CASE("is_linear examples") {
  CHECK(is_linear(chain(1)));
  CHECK_FALSE(is_linear(diamond()));
  CHECK(is_linear(build_ok_poset(1, 3)));
}

TEST_CASE("covers, extremes and induced subposets") {
  const auto d = diamond();
  CHECK(cover_pairs(d).size() == 4);
  CHECK(minimal_elements(d) == std::vector<std::size_t>{0});
  CHECK(maximal_elements(d) == std::vector<std::size_t>{3});
  const std::vector<std::size_t> mid{1, 2};
  CHECK(d.induced(mid).incomparable_pair_count() == 1);
}

TEST_CASE("property: quotient commutes with relabeling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 7;
    // Random preorder: random poset plus merged pairs.
    auto base = testing::random_poset(rng, n);
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i) block[i] = rng() % 3;
    auto le = [&](std::size_t a, std::size_t b) {
      return base.le(a, b) || block[a] == block[b];
    };
    // Close: equivalence classes may break transitivity, so close explicitly.
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) r[a][b] = le(a, b);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) r[a][b] = r[a][b] || (r[a][k] && r[k][b]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto p = FinitePreorder::from_predicate(testing::number_labels(n),
                                                  [&](std::size_t a, std::size_t b) { return r[a][b]; });
    std::vector<std::string> relabelled(n);
    for (std::size_t i = 0; i < n; ++i) relabelled[perm[i]] = "x" + std::to_string(i);
    const auto p2 = FinitePreorder::from_predicate(relabelled, [&](std::size_t a, std::size_t b) {
      std::size_t ia = 0, ib = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (perm[i] == a) ia = i;
        if (perm[i] == b) ib = i;
      }
      return r[ia][ib];
    });
    const auto q1 = quotient_to_poset(p), q2 = quotient_to_poset(p2);
    CHECK(are_isomorphic(q1.poset, q2.poset));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        CHECK((q1.class_of[a] == q1.class_of[b]) == (q2.class_of[perm[a]] == q2.class_of[perm[b]]));
  }
}

TEST_CASE("property: product associativity and unit") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_poset(rng, 1 + rng() % 3);
    const auto b = testing::random_poset(rng, 1 + rng() % 3);
    const auto c = testing::random_poset(rng, 1 + rng() % 3);
    const auto ab = product(std::vector<FinitePoset>{a, b});
    const auto bc = product(std::vector<FinitePoset>{b, c});
    CHECK(are_isomorphic(product(std::vector<FinitePoset>{ab, c}),
                         product(std::vector<FinitePoset>{a, bc})));
    CHECK(are_isomorphic(product(std::vector<FinitePoset>{a, chain(1)}), a));
  }
}

TEST_CASE("property: are_isomorphic agrees with brute force and is an equivalence") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto p = testing::random_poset(rng, n);
    const auto q = testing::random_poset(rng, n);
    const auto f = are_isomorphic(p, q);
    CHECK(f.has_value() == testing::brute_isomorphic(p, q));
    if (f) {
      CHECK(testing::preserves(p, q, *f));
      std::vector<std::size_t> inv(n);
      for (std::size_t i = 0; i < n; ++i) inv[(*f)[i]] = i;
      CHECK(is_isomorphism(q, p, inv));
    }
    const auto self = are_isomorphic(p, p);
    REQUIRE(self);
    CHECK(is_isomorphism(p, p, *self));
  }
  // Larger posets against a shuffled copy.
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8;
    const auto p = testing::random_poset(rng, n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto q = FinitePoset::from_predicate(testing::number_labels(n), [&](std::size_t a, std::size_t b) {
      return p.le(perm[a], perm[b]);
    });
    CHECK(are_isomorphic(p, q));
    CHECK(are_isomorphic(q, p));
  }
}

TEST_CASE("property: products of nontrivial posets have incomparable pairs") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = testing::random_poset(rng, 2 + rng() % 4, 0.6);
    auto q = testing::random_poset(rng, 2 + rng() % 4, 0.6);
    if (is_linear(p) || cover_pairs(p).empty()) p = chain(2);
    if (cover_pairs(q).empty()) q = chain(3);
    CHECK(product(std::vector<FinitePoset>{p, q}).incomparable_pair_count() >= 1);
  }
}
