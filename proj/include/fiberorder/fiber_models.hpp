#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fiberorder/bitset.hpp"
#include "fiberorder/dominance.hpp"
#include "fiberorder/lifting.hpp"
#include "fiberorder/poset.hpp"
#include "fiberorder/rational.hpp"

namespace fiberorder {

/// A finite fiber g^{-1}(x) with its point preorder, bracket operation and
/// the closed-form comparator for measures supported on it.
class FiberModel {
 public:
  virtual ~FiberModel() = default;

  virtual std::size_t size() const = 0;
  virtual std::string label(std::size_t point) const = 0;
  virtual bool point_le(std::size_t a, std::size_t b) const = 0;
  /// <y_1, ..., y_k> for a nonempty list of fiber points.
  virtual Bitset bracket(std::span<const std::size_t> ys) const = 0;
  /// Comparator for two probability vectors indexed by fiber points.
  virtual Verdict compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const = 0;

  Verdict point_compare(std::size_t a, std::size_t b) const {
    return verdict_from(point_le(a, b), point_le(b, a));
  }
  /// Throws InvalidMeasure unless `nu` is a probability vector on the fiber.
  void check_measure(const DiscreteMeasure& nu) const;
};

struct SigmaMap {
  std::vector<std::string> m;  // ground labels, in this order
  std::vector<std::string> n_labels;  // a proper subset of m
  int n = 1;
};

/// Fiber of x -> x cap N over a base point x of sigma_n(N).
class SigmaFiber : public FiberModel {
 public:
  /// Throws InvalidInput / UnknownLabel / DuplicateLabel on a bad map and
  /// BadBasePoint on a bad x.
  SigmaFiber(SigmaMap map, std::vector<std::string> x);

  std::size_t size() const override { return points_.size(); }
  std::string label(std::size_t point) const override;
  bool point_le(std::size_t a, std::size_t b) const override;
  Bitset bracket(std::span<const std::size_t> ys) const override;
  Verdict compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const override;

  /// Fiber points as sorted indices into map.m, ordered by size then lexicographically.
  const std::vector<std::vector<std::size_t>>& points() const { return points_; }
  std::size_t base_size() const { return base_size_; }
  int n() const { return map_.n; }
  /// Tail masses nu{w : |w| >= |x| + k} for k = 1 .. n - |x|.
  std::vector<Rational> tails(const DiscreteMeasure& nu) const;

 private:
  SigmaMap map_;
  std::size_t base_size_ = 0;
  std::vector<std::vector<std::size_t>> points_;
};

std::vector<std::vector<std::string>> sigma_fiber(const SigmaMap& map,
                                                  const std::vector<std::string>& x);

struct StarMap {
  std::vector<std::string> k;
  std::vector<std::string> l;
  std::vector<std::string> g;  // g[i] is the image of k[i]
  std::string varpi;
  std::string m;
};

/// Fiber of g^n over x, for g satisfying the star condition.
class StarFiber : public FiberModel {
 public:
  StarFiber(StarMap map, std::vector<std::string> x);

  std::size_t size() const override { return points_.size(); }
  std::string label(std::size_t point) const override;
  bool point_le(std::size_t a, std::size_t b) const override;
  Bitset bracket(std::span<const std::size_t> ys) const override;
  /// Upset sums over R(x); |R(x)| <= 5.
  Verdict compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const override;

  /// Tuples of K indices in odometer order, last coordinate fastest.
  const std::vector<std::vector<std::size_t>>& points() const { return points_; }
  /// R(x) as a coordinate mask (bit i-1 for coordinate i).
  SubsetMask r_mask() const { return r_mask_; }
  int r_size() const;
  /// S(z) as a coordinate mask.
  SubsetMask s_set(std::size_t point) const { return s_[point]; }
  /// S(z) relabelled to {1..|R(x)|} by rank within R(x).
  SubsetMask s_rank(std::size_t point) const;
  /// t_A = nu{z : S(z) = A}, A over ranks in R(x).
  PkPoint pk_point(const DiscreteMeasure& nu) const;
  std::size_t point_index(const std::vector<std::string>& labels) const;

 private:
  StarMap map_;
  std::size_t m_index_ = 0;
  SubsetMask r_mask_ = 0;
  std::vector<std::vector<std::size_t>> points_;
  std::vector<SubsetMask> s_;
};

/// Disjoint union of fibers over distinct atoms x_i of a measure sum r_i delta_{x_i}.
/// Points are numbered part by part.
class JointFiber : public FiberModel {
 public:
  JointFiber(std::vector<const FiberModel*> parts, std::vector<Rational> weights);

  std::size_t size() const override { return total_; }
  std::string label(std::size_t point) const override;
  bool point_le(std::size_t a, std::size_t b) const override;
  /// Union of the component brackets of the points falling in each part.
  Bitset bracket(std::span<const std::size_t> ys) const override;
  /// Product verdict over the normalized component restrictions.
  Verdict compare(const DiscreteMeasure& nu, const DiscreteMeasure& nu2) const override;

  /// Combines component measures into sum r_i nu_i.
  DiscreteMeasure combine(const std::vector<DiscreteMeasure>& parts) const;
  /// Restriction to part i divided by r_i; throws InvalidMeasure if its mass is not r_i.
  DiscreteMeasure component(const DiscreteMeasure& nu, std::size_t i) const;

 private:
  std::vector<const FiberModel*> parts_;
  std::vector<Rational> weights_;
  std::vector<std::size_t> offset_;
  std::size_t total_ = 0;
};

/// Distinct bracket sets <Y> over all nonempty Y, ascending. Throws
/// FiberTooLarge above 20 fiber points.
class BracketLattice {
 public:
  explicit BracketLattice(const FiberModel& model);
  const std::vector<Bitset>& sets() const { return sets_; }

 private:
  std::vector<Bitset> sets_;
};

/// LE iff nu<Y> <= nu'<Y> for every nonempty Y.
Verdict generic_dirac_compare(const FiberModel& model, const BracketLattice& lattice,
                              const DiscreteMeasure& nu, const DiscreteMeasure& nu2);
Verdict generic_dirac_compare(const FiberModel& model, const DiscreteMeasure& nu,
                              const DiscreteMeasure& nu2);

/// LE iff every component is LE; weights must be positive and sum to 1.
Verdict product_measure_compare(const std::vector<Rational>& weights,
                                const std::vector<Verdict>& components);
Verdict product_measure_compare(const std::vector<Rational>& weights,
                                const std::vector<const FiberModel*>& models,
                                const std::vector<DiscreteMeasure>& nus,
                                const std::vector<DiscreteMeasure>& nus2);

/// Probability vectors with entries in multiples of 1/m, lexicographic.
std::vector<DiscreteMeasure> grid_measures(std::size_t support, int m);

struct FiberOrder {
  /// Quotient poset; each element carries its lexicographically least measure.
  FinitePoset poset;
  std::vector<DiscreteMeasure> measures;
  std::vector<std::size_t> class_of;
};

FiberOrder fiber_order(const FiberModel& model, int m);
FinitePoset fiber_order_poset(const FiberModel& model, int m);

struct BallPoint {
  std::vector<Rational> coords;
  /// tail[i] marks coordinates in M minus N.
  std::vector<bool> tail;
};

void validate_ball_point(const BallPoint& p);
Rational l1_norm(const std::vector<Rational>& v);

/// Compares tail l1 sums. Throws BaseMismatch unless the points share the
/// tail split and agree off the tail.
Verdict ball_fiber_compare(const BallPoint& y1, const BallPoint& y2);

struct BallDescriptor {
  std::size_t r = 0;
  /// Product of r chains with m + 1 elements.
  FinitePoset grid;
};

/// r counts coordinates with norm < 1.
BallDescriptor ball_order_descriptor(const std::vector<std::vector<Rational>>& x, int m);

}  // namespace fiberorder
