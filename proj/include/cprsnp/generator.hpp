#ifndef CPRSNP_GENERATOR_HPP
#define CPRSNP_GENERATOR_HPP

// Seeded random instances that route |T| units when every arc is selected.
//
// Backbone: the terminals are split into groups of at most `group` terminals,
// one group per branch; each branch is a random arborescence hanging from the
// root, so no backbone arc carries more than `group` units. Extra arcs are
// drawn uniformly among the remaining ordered pairs that do not enter the root.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "cprsnp/error.hpp"
#include "cprsnp/graph.hpp"

namespace cprsnp {

enum class CapacityMode { Uniform, Random };

struct GeneratorOptions {
  int nodes = 20;
  int terminals = 5;
  int arcs = 90;
  CapacityMode capacities = CapacityMode::Uniform;
  Capacity uniform_capacity = 0;  // 0: ceil(|T|/2)
  int min_cost = 1;
  int max_cost = 20;
  int k = 0;
  int k_protected = 0;
  std::uint64_t seed = 1;
};

namespace detail {

// Uniform integer in [0, n) by rejection; independent of the standard library's distributions.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

}  // namespace detail

inline std::string size_label(const Instance& inst) {
  return std::to_string(inst.num_vertices()) + "-" + std::to_string(inst.terminals.size()) + "-" + std::to_string(inst.num_arcs());
}

inline Instance generate(const GeneratorOptions& o) {
  const int n = o.nodes;
  if (n < 2) throw InputError("at least two vertices are required");
  if (o.terminals < 0 || o.terminals >= n) throw InputError("terminal count must lie in [0, nodes - 1]");
  if (o.arcs < n - 1) throw InputError("arc count must be at least nodes - 1");
  const std::int64_t max_arcs = static_cast<std::int64_t>(n - 1) * (n - 1);
  if (o.arcs > max_arcs) throw InputError("arc count exceeds the " + std::to_string(max_arcs) + " possible arcs");
  if (o.min_cost < 0 || o.min_cost > o.max_cost) throw InputError("invalid cost range");
  if (o.k < 0 || o.k_protected < 0 || o.k + o.k_protected > o.arcs) throw InputError("invalid budgets");

  const int terminals = o.terminals;
  const Capacity demand = terminals;
  const Capacity uniform = o.uniform_capacity > 0 ? o.uniform_capacity : std::max<Capacity>(1, (demand + 1) / 2);
  const Capacity group = o.capacities == CapacityMode::Uniform ? uniform : std::max<Capacity>(1, (demand + 1) / 2);

  std::mt19937_64 rng(o.seed);
  Instance inst;
  for (int v = 1; v <= n; ++v) inst.labels.push_back(v);
  inst.root = 0;
  inst.k = o.k;
  inst.k_protected = o.k_protected;

  std::vector<VertexId> others;
  for (VertexId v = 1; v < n; ++v) others.push_back(v);
  detail::shuffle(others, rng);
  inst.terminals.assign(others.begin(), others.begin() + terminals);
  std::sort(inst.terminals.begin(), inst.terminals.end());

  // Branch membership: terminal groups first, then the other vertices at random.
  const int branches = terminals == 0 ? 1 : static_cast<int>((demand + group - 1) / group);
  std::vector<std::vector<VertexId>> branch(static_cast<std::size_t>(branches));
  for (int i = 0; i < terminals; ++i) branch[static_cast<std::size_t>(i / group)].push_back(others[static_cast<std::size_t>(i)]);
  for (std::size_t i = static_cast<std::size_t>(terminals); i < others.size(); ++i)
    branch[detail::bounded(rng, static_cast<std::uint64_t>(branches))].push_back(others[i]);

  std::vector<VertexId> parent(static_cast<std::size_t>(n), -1);
  for (auto& members : branch) {
    detail::shuffle(members, rng);
    for (std::size_t i = 0; i < members.size(); ++i)
      parent[static_cast<std::size_t>(members[i])] = i == 0 ? inst.root : members[detail::bounded(rng, i)];
  }
  std::vector<Capacity> load(static_cast<std::size_t>(n), 0);  // terminals below each vertex, itself included
  for (VertexId t : inst.terminals)
    for (VertexId v = t; v != inst.root; v = parent[static_cast<std::size_t>(v)]) ++load[static_cast<std::size_t>(v)];

  auto cost = [&] { return static_cast<double>(detail::uniform_int(rng, o.min_cost, o.max_cost)); };
  auto capacity = [&](Capacity at_least) {
    if (o.capacities == CapacityMode::Uniform) return uniform;
    return detail::uniform_int(rng, std::max<Capacity>(1, at_least), std::max<Capacity>(1, demand));
  };

  std::vector<char> used(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto slot = [&](VertexId i, VertexId j) -> char& { return used[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; };
  for (VertexId v = 1; v < n; ++v) {
    VertexId p = parent[static_cast<std::size_t>(v)];
    double c = cost();
    inst.arcs.push_back(Arc{p, v, c, capacity(load[static_cast<std::size_t>(v)])});
    slot(p, v) = 1;
  }

  std::vector<std::pair<VertexId, VertexId>> candidates;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 1; j < n; ++j)
      if (i != j && !slot(i, j)) candidates.emplace_back(i, j);
  const std::size_t extra = static_cast<std::size_t>(o.arcs - (n - 1));
  for (std::size_t i = 0; i < extra; ++i) {
    std::swap(candidates[i], candidates[i + detail::bounded(rng, candidates.size() - i)]);
    double c = cost();
    inst.arcs.push_back(Arc{candidates[i].first, candidates[i].second, c, capacity(1)});
  }
  std::sort(inst.arcs.begin(), inst.arcs.end(),
            [](const Arc& a, const Arc& b) { return a.tail != b.tail ? a.tail < b.tail : a.head < b.head; });
  inst.validate();
  return inst;
}

}  // namespace cprsnp

#endif
