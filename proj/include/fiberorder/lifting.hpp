#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiberorder/dominance.hpp"
#include "fiberorder/rational.hpp"

namespace fiberorder {

/// Largest n accepted by the subset-indexed lifting routines.
inline constexpr int kMaxLiftN = 16;

struct LiftInstance {
  int n = 0;
  std::vector<Rational> c;
  /// alpha[A] for nonempty A; absent subsets carry 0.
  std::map<SubsetMask, Rational> alpha;
};

/// Throws InvalidInput on shape errors or negative values.
void validate_instance(const LiftInstance& inst);

/// Nonempty subsets of {1..n} ordered lexicographically by element list.
std::vector<SubsetMask> lex_subsets(int n);

/// sum over B meeting A of alpha_B, minus sum over i in A of c_i.
Rational slack(const LiftInstance& inst, SubsetMask a);

/// First violated subset in lex_subsets order, or nullopt when feasible.
std::optional<SubsetMask> check_feasible(const LiftInstance& inst);

struct LiftSolution {
  /// beta[{A, i}] for i in A.
  std::map<std::pair<SubsetMask, int>, Rational> beta;
};

struct LiftReport {
  LiftSolution solution;
  Rational delta;
  std::vector<Rational> c_prime;
  Rational big_m;
  Rational flow_value;
  Rational cut_capacity;
};

/// Throws InfeasibleError or Error(InternalContradiction).
LiftReport solve_lift_report(const LiftInstance& inst);
LiftSolution solve_lift(const LiftInstance& inst);

/// Sum and strict row constraints; empty string when valid.
std::string validate_lift(const LiftInstance& inst, const LiftSolution& sol);

/// Surjection g: K -> L on labelled finite sets.
class DiscreteSurjection {
 public:
  /// map[i] is the L-label of K-label k[i]. Throws on duplicates, unknown
  /// labels or a non-surjective map.
  DiscreteSurjection(std::vector<std::string> k, std::vector<std::string> l,
                     const std::vector<std::string>& map);

  const std::vector<std::string>& k_labels() const { return k_; }
  const std::vector<std::string>& l_labels() const { return l_; }
  std::size_t image(std::size_t x) const { return g_[x]; }
  std::size_t k_size() const { return k_.size(); }
  std::size_t l_size() const { return l_.size(); }
  /// K indices sorted by label.
  const std::vector<std::size_t>& k_order() const { return order_; }

  std::size_t k_index(const std::string& label) const;
  std::size_t l_index(const std::string& label) const;

 private:
  std::vector<std::string> k_, l_;
  std::vector<std::size_t> g_;
  std::vector<std::size_t> order_;
};

/// Probability vector over a label set.
struct DiscreteMeasure {
  std::vector<Rational> mass;
};

/// Throws InvalidMeasure unless the vector has `size` nonnegative entries summing to 1.
void validate_measure(const DiscreteMeasure& m, std::size_t size);

DiscreteMeasure pushforward(const DiscreteSurjection& s, const DiscreteMeasure& nu);

/// First nonempty A, in lex_subsets order, with lambda(g(U_A)) <= sum c_i.
/// Throws OverlappingSets.
std::optional<SubsetMask> image_violation(const DiscreteSurjection& s,
                                          const std::vector<std::vector<std::size_t>>& u,
                                          const std::vector<Rational>& c,
                                          const DiscreteMeasure& lambda);

bool image_membership(const DiscreteSurjection& s, const std::vector<std::vector<std::size_t>>& u,
                      const std::vector<Rational>& c, const DiscreteMeasure& lambda);

/// The splitting data alpha_A = lambda(X_A) used by construct_witness.
LiftInstance witness_instance(const DiscreteSurjection& s,
                              const std::vector<std::vector<std::size_t>>& u,
                              const std::vector<Rational>& c, const DiscreteMeasure& lambda);

/// Preimage measure nu with g_*(nu) = lambda and nu(U_i) > c_i. Throws NotInImage.
DiscreteMeasure construct_witness(const DiscreteSurjection& s,
                                  const std::vector<std::vector<std::size_t>>& u,
                                  const std::vector<Rational>& c, const DiscreteMeasure& lambda);

/// Empty string when nu pushes forward to lambda and clears every threshold.
std::string validate_witness(const DiscreteSurjection& s,
                             const std::vector<std::vector<std::size_t>>& u,
                             const std::vector<Rational>& c, const DiscreteMeasure& lambda,
                             const DiscreteMeasure& nu);

}  // namespace fiberorder
