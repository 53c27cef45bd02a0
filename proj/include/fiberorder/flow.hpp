#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fiberorder/rational.hpp"

namespace fiberorder {

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational capacity;
};

/// Digraph with rational capacities. Parallel arcs are merged on
/// construction by summing their capacities.
class FlowNetwork {
 public:
  /// Throws InvalidNetwork on self-loops, negative capacities, s == t, bad
  /// indices or duplicate vertex labels.
  FlowNetwork(std::vector<std::string> vertices, std::vector<Arc> arcs, std::size_t source,
              std::size_t sink);

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }

  /// Index of the merged arc u->v, or arcs().size() when absent.
  std::size_t arc_index(std::size_t u, std::size_t v) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arc> arcs_;
  std::size_t source_;
  std::size_t sink_;
};

struct FlowResult {
  Rational value;
  /// flow[a] is the value on arcs()[a].
  std::vector<Rational> flow;
  /// Vertices reachable from the source in the final residual graph.
  std::vector<bool> source_side;
  /// Capacity of the arcs leaving source_side.
  Rational cut_capacity;
};

/// Shortest augmenting paths; ties broken by vertex label order.
FlowResult max_flow(const FlowNetwork& net);

struct MinCut {
  Rational capacity;
  std::vector<std::size_t> source_side;
};

MinCut min_cut(const FlowNetwork& net);

/// Capacity bounds and conservation; returns an empty string when valid.
std::string validate_flow(const FlowNetwork& net, const std::vector<Rational>& flow);

/// Net flow out of the source.
Rational flow_value(const FlowNetwork& net, const std::vector<Rational>& flow);

}  // namespace fiberorder
