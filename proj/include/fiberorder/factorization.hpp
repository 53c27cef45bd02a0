#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fiberorder/limits.hpp"
#include "fiberorder/poset.hpp"

namespace fiberorder {

/// One decomposition P = Q x R. at[i * |R| + j] is the element of P with
/// coordinates (i, j).
struct Split {
  FinitePoset q;
  FinitePoset r;
  std::vector<std::size_t> at;
};

/// Every nontrivial split of a connected P, up to swapping and isomorphism of
/// the pair. Pairs are ordered with |Q| <= |R|, sorted by (|Q|, invariants).
/// Throws NotConnected, TooLarge.
std::vector<Split> find_splits(const FinitePoset& p, std::size_t cap = kDefaultFactorCap);

std::vector<std::pair<FinitePoset, FinitePoset>> factor_once(const FinitePoset& p,
                                                             std::size_t cap = kDefaultFactorCap);

bool is_irreducible(const FinitePoset& p, std::size_t cap = kDefaultFactorCap);

struct Factorization {
  /// Irreducible non-singleton factors sorted by (cardinality, invariants).
  std::vector<FinitePoset> factors;
  /// witness[i] is the element of the input matching element i of product(factors).
  std::vector<std::size_t> witness;
};

Factorization irreducible_factorization(const FinitePoset& p,
                                        std::size_t cap = kDefaultFactorCap);

/// Checks the Factorization invariants against p; empty string when valid.
std::string validate_factorization(const FinitePoset& p, const Factorization& f);

/// Grid Z with product(Z[i][*]) ~ fam1[i] and product(Z[*][j]) ~ fam2[j].
/// Throws NotADecomposition when either family does not multiply to P and
/// RefinementNotFound when no grid exists.
std::vector<std::vector<FinitePoset>> common_refinement(const FinitePoset& p,
                                                        const std::vector<FinitePoset>& fam1,
                                                        const std::vector<FinitePoset>& fam2,
                                                        std::size_t cap = kDefaultFactorCap);

/// Multiset equality up to isomorphism.
bool same_factor_multiset(const std::vector<FinitePoset>& a, const std::vector<FinitePoset>& b);

}  // namespace fiberorder
