#ifndef CPRSNP_GRAPH_HPP
#define CPRSNP_GRAPH_HPP

// Directed-graph data model, super-sink augmentation and exact max-flow / min-cut.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cprsnp/error.hpp"

namespace cprsnp {

using VertexId = int;
using ArcId = int;
using Capacity = std::int64_t;

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  double cost = 0.0;
  Capacity capacity = 0;

  bool operator==(const Arc&) const = default;
};

/// Label reserved for the super-sink added by augment().
inline constexpr std::int64_t kSuperSinkLabel = 0;

/// A CPRSNP instance. Vertices are dense ids 0..n-1; `labels` keeps the
/// external names used in files and reports.
struct Instance {
  std::vector<std::int64_t> labels;
  std::vector<Arc> arcs;
  VertexId root = 0;
  std::vector<VertexId> terminals;
  int k = 0;            // failure budget
  int k_protected = 0;  // protection budget

  int num_vertices() const { return static_cast<int>(labels.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }

  /// Throws InstanceError when an invariant is broken.
  void validate() const {
    const int n = num_vertices();
    if (n == 0) throw InstanceError("instance has no vertices");
    if (root < 0 || root >= n) throw InstanceError("root out of range");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (VertexId t : terminals) {
      if (t < 0 || t >= n) throw InstanceError("terminal out of range");
      if (t == root) throw InstanceError("root cannot be a terminal");
      if (seen[static_cast<std::size_t>(t)]) throw InstanceError("duplicated terminal");
      seen[static_cast<std::size_t>(t)] = 1;
    }
    std::set<std::pair<VertexId, VertexId>> pairs;
    for (const Arc& a : arcs) {
      if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
        throw InstanceError("arc endpoint out of range");
      if (!pairs.emplace(a.tail, a.head).second) throw InstanceError("parallel arcs are not allowed");
      if (!std::isfinite(a.cost) || a.cost < 0.0) throw InstanceError("arc cost must be finite and nonnegative");
      if (a.capacity < 0) throw InstanceError("arc capacity must be nonnegative");
    }
    if (k < 0 || k_protected < 0) throw InstanceError("budgets must be nonnegative");
    if (k + k_protected > num_arcs()) throw InstanceError("k + k' exceeds the number of arcs");
  }

  bool operator==(const Instance&) const = default;
};

/// Instance plus super-sink `sink` and one fictive arc (t, sink) per terminal,
/// appended after the initial arcs in terminal order.
struct AugmentedInstance {
  Instance base;
  VertexId sink = 0;
  std::vector<Arc> arcs;  // initial arcs, then fictive arcs
  int num_initial = 0;
  std::vector<std::vector<ArcId>> out_arcs;
  std::vector<std::vector<ArcId>> in_arcs;

  int num_vertices() const { return sink + 1; }
  int num_arcs() const { return static_cast<int>(arcs.size()); }
  VertexId root() const { return base.root; }
  int k() const { return base.k; }
  int k_protected() const { return base.k_protected; }
  int demand() const { return static_cast<int>(base.terminals.size()); }
  bool is_fictive(ArcId a) const { return a >= num_initial; }
  ArcId fictive_arc(std::size_t terminal_index) const {
    return num_initial + static_cast<ArcId>(terminal_index);
  }
  std::int64_t label(VertexId v) const {
    return v == sink ? kSuperSinkLabel : base.labels[static_cast<std::size_t>(v)];
  }
};

inline AugmentedInstance augment(const Instance& instance) {
  instance.validate();
  for (std::int64_t label : instance.labels)
    if (label == kSuperSinkLabel) throw InstanceError("vertex label 0 is reserved for the super-sink");

  AugmentedInstance aug;
  aug.base = instance;
  aug.sink = instance.num_vertices();
  aug.arcs = instance.arcs;
  aug.num_initial = instance.num_arcs();
  for (VertexId t : instance.terminals) aug.arcs.push_back(Arc{t, aug.sink, 0.0, 1});

  aug.out_arcs.assign(static_cast<std::size_t>(aug.num_vertices()), {});
  aug.in_arcs.assign(static_cast<std::size_t>(aug.num_vertices()), {});
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    aug.out_arcs[static_cast<std::size_t>(aug.arcs[a].tail)].push_back(a);
    aug.in_arcs[static_cast<std::size_t>(aug.arcs[a].head)].push_back(a);
  }
  return aug;
}

/// Selected arcs and protected arcs, indexed by augmented arc id.
struct Design {
  std::vector<std::uint8_t> selected;
  std::vector<std::uint8_t> protection;

  bool is_selected(ArcId a) const { return selected[static_cast<std::size_t>(a)] != 0; }
  bool is_protected(ArcId a) const { return protection[static_cast<std::size_t>(a)] != 0; }

  /// Only the fictive arcs selected.
  static Design empty(const AugmentedInstance& aug) {
    Design d;
    d.selected.assign(static_cast<std::size_t>(aug.num_arcs()), 0);
    d.protection.assign(static_cast<std::size_t>(aug.num_arcs()), 0);
    for (ArcId a = aug.num_initial; a < aug.num_arcs(); ++a) d.selected[static_cast<std::size_t>(a)] = 1;
    return d;
  }

  /// Every arc selected, nothing protected.
  static Design full(const AugmentedInstance& aug) {
    Design d = empty(aug);
    std::fill(d.selected.begin(), d.selected.end(), std::uint8_t{1});
    return d;
  }

  bool operator==(const Design&) const = default;
};

/// Forces fictive arcs selected and unprotected, and protection ⊆ selection.
inline Design canonicalize(const AugmentedInstance& aug, Design design) {
  design.selected.resize(static_cast<std::size_t>(aug.num_arcs()), 0);
  design.protection.resize(static_cast<std::size_t>(aug.num_arcs()), 0);
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    if (aug.is_fictive(a)) {
      design.selected[i] = 1;
      design.protection[i] = 0;
    } else {
      design.selected[i] = design.selected[i] ? 1 : 0;
      design.protection[i] = (design.protection[i] && design.selected[i]) ? 1 : 0;
    }
  }
  return design;
}

inline double design_cost(const AugmentedInstance& aug, const Design& design) {
  double cost = 0.0;
  for (ArcId a = 0; a < aug.num_initial; ++a)
    if (design.is_selected(a)) cost += aug.arcs[static_cast<std::size_t>(a)].cost;
  return cost;
}

inline int protected_count(const AugmentedInstance& aug, const Design& design) {
  int count = 0;
  for (ArcId a = 0; a < aug.num_initial; ++a) count += design.is_protected(a) ? 1 : 0;
  return count;
}

/// Effective capacity per augmented arc.
struct ArcMask {
  std::vector<Capacity> capacity;

  static ArcMask full(const AugmentedInstance& aug) {
    ArcMask m;
    m.capacity.reserve(aug.arcs.size());
    for (const Arc& a : aug.arcs) m.capacity.push_back(a.capacity);
    return m;
  }

  /// Capacity u on selected arcs, 0 elsewhere; arcs of `failed` lose their
  /// capacity unless protected. Fictive arcs never fail.
  static ArcMask of(const AugmentedInstance& aug, const Design& design, std::span<const ArcId> failed = {}) {
    ArcMask m;
    m.capacity.assign(aug.arcs.size(), 0);
    for (ArcId a = 0; a < aug.num_arcs(); ++a)
      if (design.is_selected(a)) m.capacity[static_cast<std::size_t>(a)] = aug.arcs[static_cast<std::size_t>(a)].capacity;
    for (ArcId a : failed)
      if (!aug.is_fictive(a) && !design.is_protected(a)) m.capacity[static_cast<std::size_t>(a)] = 0;
    return m;
  }
};

/// A vertex set V_S on the sink side of an r-s cut and the arcs δ⁻(V_S) entering it.
struct CutSet {
  std::vector<VertexId> sink_side;  // sorted
  std::vector<ArcId> arcs;          // sorted

  bool operator==(const CutSet&) const = default;
};

/// Builds the cut-set δ⁻(V_S) for the sink-side membership vector.
inline CutSet make_cut(const AugmentedInstance& aug, const std::vector<char>& on_sink_side) {
  CutSet cut;
  for (VertexId v = 0; v < aug.num_vertices(); ++v)
    if (on_sink_side[static_cast<std::size_t>(v)]) cut.sink_side.push_back(v);
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
    if (!on_sink_side[static_cast<std::size_t>(arc.tail)] && on_sink_side[static_cast<std::size_t>(arc.head)])
      cut.arcs.push_back(a);
  }
  return cut;
}

inline Capacity cut_capacity(const CutSet& cut, const ArcMask& mask) {
  Capacity total = 0;
  for (ArcId a : cut.arcs) total += mask.capacity[static_cast<std::size_t>(a)];
  return total;
}

struct FlowResult {
  Capacity value = 0;
  std::vector<Capacity> arc_flow;  // per augmented arc
};

namespace detail {

// Dinic's algorithm on a residual network mirroring the augmented arcs.
class Dinic {
 public:
  Dinic(const AugmentedInstance& aug, const ArcMask& mask) : adjacency_(static_cast<std::size_t>(aug.num_vertices())) {
    edges_.reserve(aug.arcs.size() * 2);
    for (ArcId a = 0; a < aug.num_arcs(); ++a) {
      const Arc& arc = aug.arcs[static_cast<std::size_t>(a)];
      add_edge(arc.tail, arc.head, mask.capacity[static_cast<std::size_t>(a)]);
    }
  }

  Capacity run(VertexId source, VertexId sink) {
    if (source == sink) return 0;
    Capacity total = 0;
    while (build_levels(source, sink)) {
      next_.assign(adjacency_.size(), 0);
      while (Capacity pushed = augment(source, sink, std::numeric_limits<Capacity>::max())) total += pushed;
    }
    return total;
  }

  Capacity flow_on(ArcId a) const { return edges_[static_cast<std::size_t>(2 * a + 1)].residual; }

  /// Vertices reachable from `source` in the residual network.
  std::vector<char> reachable(VertexId source) const {
    std::vector<char> seen(adjacency_.size(), 0);
    std::vector<VertexId> stack{source};
    seen[static_cast<std::size_t>(source)] = 1;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (int e : adjacency_[static_cast<std::size_t>(v)]) {
        const Edge& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.residual > 0 && !seen[static_cast<std::size_t>(edge.to)]) {
          seen[static_cast<std::size_t>(edge.to)] = 1;
          stack.push_back(edge.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    VertexId to;
    Capacity residual;
  };

  void add_edge(VertexId from, VertexId to, Capacity cap) {
    adjacency_[static_cast<std::size_t>(from)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adjacency_[static_cast<std::size_t>(to)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
  }

  bool build_levels(VertexId source, VertexId sink) {
    level_.assign(adjacency_.size(), -1);
    std::queue<VertexId> queue;
    level_[static_cast<std::size_t>(source)] = 0;
    queue.push(source);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop();
      for (int e : adjacency_[static_cast<std::size_t>(v)]) {
        const Edge& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.residual > 0 && level_[static_cast<std::size_t>(edge.to)] < 0) {
          level_[static_cast<std::size_t>(edge.to)] = level_[static_cast<std::size_t>(v)] + 1;
          queue.push(edge.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  Capacity augment(VertexId v, VertexId sink, Capacity limit) {
    if (v == sink) return limit;
    auto& it = next_[static_cast<std::size_t>(v)];
    const auto& adj = adjacency_[static_cast<std::size_t>(v)];
    for (; it < adj.size(); ++it) {
      int e = adj[it];
      Edge& edge = edges_[static_cast<std::size_t>(e)];
      if (edge.residual <= 0 || level_[static_cast<std::size_t>(edge.to)] != level_[static_cast<std::size_t>(v)] + 1)
        continue;
      if (Capacity pushed = augment(edge.to, sink, std::min(limit, edge.residual))) {
        edge.residual -= pushed;
        edges_[static_cast<std::size_t>(e ^ 1)].residual += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace detail

/// Maximum integral source-sink flow under the mask.
inline FlowResult max_flow(const AugmentedInstance& aug, const ArcMask& mask, VertexId source, VertexId sink) {
  detail::Dinic dinic(aug, mask);
  FlowResult result;
  result.value = dinic.run(source, sink);
  result.arc_flow.resize(aug.arcs.size());
  for (ArcId a = 0; a < aug.num_arcs(); ++a) result.arc_flow[static_cast<std::size_t>(a)] = dinic.flow_on(a);
  return result;
}

inline FlowResult max_flow(const AugmentedInstance& aug, const ArcMask& mask) {
  return max_flow(aug, mask, aug.root(), aug.sink);
}

/// Minimum root-sink cut under the mask, together with its capacity.
/// The sink side is the complement of the residual reachable set, hence the
/// smallest minimum cut sink side.
struct MinCut {
  CutSet cut;
  Capacity capacity = 0;
};

inline MinCut min_cut(const AugmentedInstance& aug, const ArcMask& mask) {
  detail::Dinic dinic(aug, mask);
  dinic.run(aug.root(), aug.sink);
  std::vector<char> reach = dinic.reachable(aug.root());
  for (auto& r : reach) r = r ? 0 : 1;
  MinCut result;
  result.cut = make_cut(aug, reach);
  result.capacity = cut_capacity(result.cut, mask);
  return result;
}

}  // namespace cprsnp

#endif
