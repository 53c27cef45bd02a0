#pragma once

#include <cstddef>

namespace fiberorder {

/// Largest ground set a dense relation may hold. FIBERORDER_SIZE_CAP overrides it.
std::size_t element_cap();

/// Default cap on the cardinality of a product before it is materialized.
inline constexpr std::size_t kDefaultProductCap = 1'000'000;

/// Default cap on |P| accepted by the factorization search.
inline constexpr std::size_t kDefaultFactorCap = 64;

/// Hard cap on k for upset enumeration (7581 families at k = 5).
inline constexpr int kMaxUpsetK = 5;

/// Largest fiber for which every nonempty subset is handed to a bracket oracle.
inline constexpr std::size_t kMaxBracketFiber = 20;

}  // namespace fiberorder
