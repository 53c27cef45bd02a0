#include "fiberorder/flow.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

#include "fiberorder/error.hpp"

namespace fiberorder {

FlowNetwork::FlowNetwork(std::vector<std::string> vertices, std::vector<Arc> arcs,
                         std::size_t source, std::size_t sink)
    : vertices_(std::move(vertices)), source_(source), sink_(sink) {
  const std::size_t n = vertices_.size();
  std::unordered_set<std::string> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v).second) throw Error(ErrorKind::InvalidNetwork, "duplicate vertex " + v);
  }
  if (source_ >= n || sink_ >= n) throw Error(ErrorKind::InvalidNetwork, "source or sink out of range");
  if (source_ == sink_) throw Error(ErrorKind::InvalidNetwork, "source equals sink");

  std::map<std::pair<std::size_t, std::size_t>, Rational> merged;
  for (const auto& a : arcs) {
    if (a.from >= n || a.to >= n) throw Error(ErrorKind::InvalidNetwork, "arc endpoint out of range");
    if (a.from == a.to) {
      throw Error(ErrorKind::InvalidNetwork, "self-loop at " + vertices_[a.from]);
    }
    if (a.capacity.sign() < 0) throw Error(ErrorKind::InvalidNetwork, "negative capacity");
    merged[{a.from, a.to}] += a.capacity;
  }
  arcs_.reserve(merged.size());
  for (auto& [key, cap] : merged) arcs_.push_back({key.first, key.second, std::move(cap)});
}

std::size_t FlowNetwork::arc_index(std::size_t u, std::size_t v) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), std::make_pair(u, v),
                             [](const Arc& a, const std::pair<std::size_t, std::size_t>& key) {
                               return std::make_pair(a.from, a.to) < key;
                             });
  if (it != arcs_.end() && it->from == u && it->to == v) {
    return static_cast<std::size_t>(it - arcs_.begin());
  }
  return arcs_.size();
}

FlowResult max_flow(const FlowNetwork& net) {
  const std::size_t n = net.vertex_count();
  const auto& arcs = net.arcs();
  // Residual edge 2a runs along arc a, 2a+1 against it.
  std::vector<Rational> residual(2 * arcs.size());
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    residual[2 * a] = arcs[a].capacity;
    adj[arcs[a].from].push_back(2 * a);
    adj[arcs[a].to].push_back(2 * a + 1);
  }
  auto head = [&](std::size_t e) { return e % 2 == 0 ? arcs[e / 2].to : arcs[e / 2].from; };

  // Visit neighbours in label order so augmenting paths are reproducible.
  const auto& labels = net.vertices();
  for (auto& list : adj) {
    std::stable_sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) {
      return labels[head(x)] < labels[head(y)];
    });
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> via(n);
  std::vector<bool> reached(n);
  auto bfs = [&] {
    std::fill(via.begin(), via.end(), kNone);
    std::fill(reached.begin(), reached.end(), false);
    std::deque<std::size_t> queue{net.source()};
    reached[net.source()] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (auto e : adj[u]) {
        const std::size_t v = head(e);
        if (reached[v] || residual[e].sign() <= 0) continue;
        reached[v] = true;
        via[v] = e;
        queue.push_back(v);
      }
    }
    return reached[net.sink()];
  };

  Rational value;
  while (bfs()) {
    Rational bottleneck;
    bool first = true;
    for (std::size_t v = net.sink(); v != net.source(); v = head(via[v] ^ 1)) {
      if (first || residual[via[v]] < bottleneck) bottleneck = residual[via[v]];
      first = false;
    }
    for (std::size_t v = net.sink(); v != net.source(); v = head(via[v] ^ 1)) {
      residual[via[v]] -= bottleneck;
      residual[via[v] ^ 1] += bottleneck;
    }
    value += bottleneck;
  }

  FlowResult out;
  out.value = value;
  out.flow.resize(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) out.flow[a] = residual[2 * a + 1];
  out.source_side = reached;
  for (const auto& a : arcs) {
    if (reached[a.from] && !reached[a.to]) out.cut_capacity += a.capacity;
  }
  return out;
}

MinCut min_cut(const FlowNetwork& net) {
  auto r = max_flow(net);
  MinCut cut;
  cut.capacity = r.cut_capacity;
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    if (r.source_side[v]) cut.source_side.push_back(v);
  }
  return cut;
}

std::string validate_flow(const FlowNetwork& net, const std::vector<Rational>& flow) {
  const auto& arcs = net.arcs();
  if (flow.size() != arcs.size()) return "flow has wrong arc count";
  std::vector<Rational> balance(net.vertex_count());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (flow[a].sign() < 0 || flow[a] > arcs[a].capacity) {
      return "arc " + net.vertices()[arcs[a].from] + "->" + net.vertices()[arcs[a].to] +
             " violates its capacity";
    }
    balance[arcs[a].from] -= flow[a];
    balance[arcs[a].to] += flow[a];
  }
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    if (v == net.source() || v == net.sink()) continue;
    if (!balance[v].is_zero()) return "conservation fails at " + net.vertices()[v];
  }
  return {};
}

Rational flow_value(const FlowNetwork& net, const std::vector<Rational>& flow) {
  Rational out;
  for (std::size_t a = 0; a < net.arcs().size(); ++a) {
    if (net.arcs()[a].from == net.source()) out += flow[a];
    if (net.arcs()[a].to == net.source()) out -= flow[a];
  }
  return out;
}

}  // namespace fiberorder
