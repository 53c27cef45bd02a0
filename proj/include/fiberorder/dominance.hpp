#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiberorder/poset.hpp"
#include "fiberorder/rational.hpp"

namespace fiberorder {

/// Subset of {1..k}; bit i-1 stands for element i.
using SubsetMask = std::uint32_t;

std::vector<int> subset_elements(SubsetMask mask);
SubsetMask subset_from_elements(const std::vector<int>& elements, int k);
/// "{1,3}" style rendering; "{}" for the empty set.
std::string subset_string(SubsetMask mask);

enum class Verdict { Less, Greater, Equivalent, Incomparable };

/// "LE", "GE", "EQ", "INCOMPARABLE".
std::string_view verdict_name(Verdict v);
Verdict verdict_from(bool le, bool ge);
inline bool is_le(Verdict v) { return v == Verdict::Less || v == Verdict::Equivalent; }
inline bool is_ge(Verdict v) { return v == Verdict::Greater || v == Verdict::Equivalent; }

/// Upward closed family of subsets of {1..k}, k <= 5.
class UpsetFamily {
 public:
  UpsetFamily(int k, std::uint32_t members);

  int k() const { return k_; }
  bool contains(SubsetMask a) const { return (members_ >> a) & 1U; }
  std::uint32_t members_bits() const { return members_; }
  /// Minimal members, an antichain, in increasing mask order.
  const std::vector<SubsetMask>& minimal() const { return minimal_; }
  std::vector<SubsetMask> members() const;

 private:
  int k_;
  std::uint32_t members_;
  std::vector<SubsetMask> minimal_;
};

/// Every upward closed family over {1..k}, empty and full included. The
/// order is fixed: a depth-first walk from the top subset, excluding first.
/// Throws KTooLarge for k > 5.
const std::vector<UpsetFamily>& enumerate_upsets(int k);

struct OkPoint {
  std::vector<Rational> values;
};

struct PkPoint {
  int k = 0;
  /// mass[A] for every mask A < 2^k.
  std::vector<Rational> mass;
};

/// Throws InvalidPoint unless 0 <= t_1 <= ... <= t_k <= 1.
void validate_ok_point(const OkPoint& p);
/// Throws InvalidPoint unless the masses are nonnegative and sum to 1.
void validate_pk_point(const PkPoint& p);

PkPoint make_pk_point(int k, std::vector<Rational> mass);

Verdict ok_compare(const OkPoint& t, const OkPoint& s);

/// Sum over every upset family; k <= 5.
Verdict pk_compare(const PkPoint& t, const PkPoint& s);

/// Coupling gamma(A, B) >= 0, A subset of B, with marginals t and s.
struct CouplingEntry {
  SubsetMask from;
  SubsetMask to;
  Rational mass;
};

/// Decides t <= s by max-flow; returns the coupling when it exists.
std::optional<std::vector<CouplingEntry>> pk_coupling(const PkPoint& t, const PkPoint& s);

/// True when gamma is supported on inclusions and has marginals t and s.
bool validate_coupling(const PkPoint& t, const PkPoint& s,
                       const std::vector<CouplingEntry>& gamma);

Verdict pk_compare_flow(const PkPoint& t, const PkPoint& s);

/// Nondecreasing k-tuples over {0, 1/m, ..., 1} in lexicographic order.
std::vector<OkPoint> ok_grid_points(int k, int m);
/// Mass vectors in multiples of 1/m in lexicographic order of the vector.
std::vector<PkPoint> pk_grid_points(int k, int m);

FinitePoset build_ok_poset(int k, int m);
FinitePoset build_pk_poset(int k, int m);

std::string point_label(const std::vector<Rational>& values);

struct DownsetRegion {
  /// Elements whose principal down-set is a chain, ascending.
  std::vector<std::size_t> elements;
  std::size_t maximal_count = 0;
  bool linear = false;
};

DownsetRegion linear_downset_region(const FinitePoset& p);

}  // namespace fiberorder
