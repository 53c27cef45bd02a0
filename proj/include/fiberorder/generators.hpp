#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "fiberorder/lifting.hpp"
#include "fiberorder/poset.hpp"

namespace fiberorder::gen {

using Rng = std::mt19937_64;

/// Random connected poset on n elements labelled "0".."n-1".
FinitePoset connected_poset(Rng& rng, std::size_t n);

/// n in [1, max_n], values are multiples of 1/d with d in [1, max_den].
LiftInstance lift_instance(Rng& rng, int max_n, int max_den);

/// Probability vector of the given support size with denominator in [1, max_den].
DiscreteMeasure measure(Rng& rng, std::size_t support, int max_den);

struct ImageInstance {
  DiscreteSurjection s;
  std::vector<std::vector<std::size_t>> u;
  std::vector<Rational> c;
  DiscreteMeasure lambda;
};

/// |K| <= max_k, |L| <= max_l, n <= max_n disjoint sets, random thresholds.
ImageInstance image_instance(Rng& rng, std::size_t max_k, std::size_t max_l, int max_n);

}  // namespace fiberorder::gen
