#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fiberorder/bitset.hpp"
#include "fiberorder/limits.hpp"

namespace fiberorder {

using LabelPair = std::pair<std::string, std::string>;

/// Finite preordered set over labelled elements.
///
/// The relation is stored densely: `up_set(a)` holds every b with a <= b and
/// `down_set(a)` every b with b <= a. Values are immutable once built; every
/// factory validates reflexivity (added implicitly) and transitivity.
class FinitePreorder {
 public:
  FinitePreorder() = default;

  /// Builds from labels and (a, b) pairs meaning a <= b. Reflexive pairs are
  /// implicit. With `close_transitively` the reflexive-transitive closure is
  /// taken; otherwise a relation that is not already transitive is rejected.
  static FinitePreorder make(std::vector<std::string> labels, std::span<const LabelPair> pairs,
                             bool close_transitively);

  /// Builds from up-set rows indexed like `labels`. Throws NotTransitive.
  static FinitePreorder from_rows(std::vector<std::string> labels, std::vector<Bitset> up);

  /// Builds from a predicate le(i, j) evaluated on every ordered pair.
  template <typename Le>
  static FinitePreorder from_predicate(std::vector<std::string> labels, Le&& le) {
    const std::size_t n = labels.size();
    check_size(n);
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || le(i, j)) rows[i].set(j);
      }
    }
    return from_rows(std::move(labels), std::move(rows));
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> find(std::string_view label) const;

  bool le(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  bool lt(std::size_t a, std::size_t b) const { return le(a, b) && !le(b, a); }
  bool equivalent(std::size_t a, std::size_t b) const { return le(a, b) && le(b, a); }
  bool comparable(std::size_t a, std::size_t b) const { return le(a, b) || le(b, a); }

  const Bitset& up_set(std::size_t a) const { return up_[a]; }
  const Bitset& down_set(std::size_t a) const { return down_[a]; }

  /// Number of unordered pairs {a, b}, a != b, that are incomparable.
  std::size_t incomparable_pair_count() const;

 protected:
  static void check_size(std::size_t n);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
};

/// A preorder that is also antisymmetric.
class FinitePoset : public FinitePreorder {
 public:
  FinitePoset() = default;

  /// Throws NotAntisymmetric when two distinct elements are equivalent.
  static FinitePoset from_preorder(FinitePreorder p);

  static FinitePoset make(std::vector<std::string> labels, std::span<const LabelPair> pairs,
                          bool close_transitively) {
    return from_preorder(FinitePreorder::make(std::move(labels), pairs, close_transitively));
  }

  template <typename Le>
  static FinitePoset from_predicate(std::vector<std::string> labels, Le&& le) {
    return from_preorder(FinitePreorder::from_predicate(std::move(labels), std::forward<Le>(le)));
  }

  /// Subposet induced on `elements`, in the given order.
  FinitePoset induced(std::span<const std::size_t> elements) const;
};

FinitePreorder make_preorder(std::vector<std::string> elements, std::span<const LabelPair> pairs,
                             bool close_transitively);

/// Chain 0 < 1 < ... < n-1 with labels "0".."n-1".
FinitePoset chain(std::size_t n);

/// n pairwise incomparable elements labelled "0".."n-1".
FinitePoset antichain(std::size_t n);

struct Quotient {
  FinitePoset poset;
  /// class_of[a] is the poset element holding a.
  std::vector<std::size_t> class_of;
};

/// Collapses equivalence classes. Classes are numbered by their first member
/// and carry that member's label.
Quotient quotient_to_poset(const FinitePreorder& p);

/// Product order on tuples, the first factor varying slowest. Tuple labels
/// are "(a,b,...)". The empty product is a singleton labelled "()".
FinitePoset product(std::span<const FinitePoset> factors,
                    std::size_t cap = kDefaultProductCap);

/// Index of the tuple (coords[0], coords[1], ...) inside product(factors).
std::size_t product_index(std::span<const FinitePoset> factors,
                          std::span<const std::size_t> coords);

/// Comparability graph connected; the empty poset counts as connected.
bool is_connected(const FinitePreorder& p);

bool is_linear(const FinitePreorder& p);

/// Cover pairs (a, b): a < b with nothing strictly between.
std::vector<std::pair<std::size_t, std::size_t>> cover_pairs(const FinitePoset& p);

std::vector<std::size_t> minimal_elements(const FinitePoset& p);
std::vector<std::size_t> maximal_elements(const FinitePoset& p);

/// Per-element invariants used to prune isomorphism and order factors.
struct ElementSignature {
  std::size_t down = 0;    // |{b : b <= a}|
  std::size_t up = 0;      // |{b : a <= b}|
  std::size_t height = 0;  // longest chain ending at a, in covers
  std::size_t depth = 0;   // longest chain starting at a, in covers

  friend auto operator<=>(const ElementSignature&, const ElementSignature&) = default;
};

std::vector<ElementSignature> element_signatures(const FinitePoset& p);

/// Sorted signature multiset followed by the comparable-pair count; equal
/// for isomorphic posets.
std::vector<std::size_t> invariant_vector(const FinitePoset& p);

/// First order isomorphism P -> Q in a fixed search order, as map[p] = q.
std::optional<std::vector<std::size_t>> are_isomorphic(const FinitePoset& p,
                                                       const FinitePoset& q);

/// Checks that `map` is a bijection P -> Q preserving and reflecting order.
bool is_isomorphism(const FinitePoset& p, const FinitePoset& q,
                    std::span<const std::size_t> map);

}  // namespace fiberorder
