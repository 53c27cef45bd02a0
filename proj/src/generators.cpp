#include "fiberorder/generators.hpp"

#include <algorithm>
#include <numeric>

namespace fiberorder::gen {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::string> numbered(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

FinitePoset connected_poset(Rng& rng, std::size_t n) {
  std::bernoulli_distribution edge(0.45);
  while (true) {
    std::vector<LabelPair> pairs;
    const auto labels = numbered(n, "");
    // Edges only go forward in a shuffled order, so the closure is acyclic.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (edge(rng)) pairs.emplace_back(labels[order[i]], labels[order[j]]);
      }
    }
    auto p = FinitePoset::make(labels, pairs, true);
    if (is_connected(p)) return p;
  }
}

LiftInstance lift_instance(Rng& rng, int max_n, int max_den) {
  LiftInstance inst;
  inst.n = uniform(rng, 1, max_n);
  const int d = uniform(rng, 1, max_den);
  for (int i = 0; i < inst.n; ++i) inst.c.emplace_back(uniform(rng, 0, d / 2), d);
  const SubsetMask full = (SubsetMask{1} << inst.n) - 1;
  for (SubsetMask a = 1; a <= full; ++a) {
    if (uniform(rng, 0, 2) == 0) continue;
    inst.alpha[a] = Rational(uniform(rng, 0, d), d);
  }
  return inst;
}

DiscreteMeasure measure(Rng& rng, std::size_t support, int max_den) {
  const int d = uniform(rng, 1, max_den);
  std::vector<int> counts(support, 0);
  for (int unit = 0; unit < d; ++unit) {
    ++counts[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(support) - 1))];
  }
  DiscreteMeasure out;
  for (int c : counts) out.mass.emplace_back(c, d);
  return out;
}

ImageInstance image_instance(Rng& rng, std::size_t max_k, std::size_t max_l, int max_n) {
  const auto ksize = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_k)));
  const auto lsize = static_cast<std::size_t>(
      uniform(rng, 1, static_cast<int>(std::min(max_l, ksize))));
  auto k = numbered(ksize, "k");
  auto l = numbered(lsize, "y");
  // Every y gets one preimage first so that g is onto.
  std::vector<std::size_t> target(ksize);
  for (std::size_t x = 0; x < ksize; ++x) {
    target[x] = x < lsize ? x : static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(lsize) - 1));
  }
  std::shuffle(target.begin(), target.end(), rng);
  std::vector<std::string> g;
  for (auto t : target) g.push_back(l[t]);

  const int n = uniform(rng, 0, max_n);
  std::vector<std::vector<std::size_t>> u(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < ksize && n > 0; ++x) {
    const int slot = uniform(rng, -1, n - 1);
    if (slot >= 0) u[static_cast<std::size_t>(slot)].push_back(x);
  }
  const int d = uniform(rng, 1, 12);
  std::vector<Rational> c;
  for (int i = 0; i < n; ++i) c.emplace_back(uniform(rng, 0, d - 1), 2 * d);
  auto lambda = measure(rng, lsize, 12);
  return {DiscreteSurjection(std::move(k), std::move(l), g), std::move(u), std::move(c),
          std::move(lambda)};
}

}  // namespace fiberorder::gen
