#ifndef CPRSNP_VERIFY_HPP
#define CPRSNP_VERIFY_HPP

// Brute-force survivability check and exhaustive optimum for tiny instances.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cprsnp/combinatorics.hpp"
#include "cprsnp/error.hpp"
#include "cprsnp/graph.hpp"

namespace cprsnp {

struct SurvivabilityReport {
  bool survivable = true;
  std::vector<ArcId> witness;  // failing arcs when not survivable
  Capacity min_flow = 0;       // least post-failure flow over the scenarios checked
  std::int64_t scenarios = 0;
};

/// Checks every failure of min(k, #candidates) selected unprotected initial
/// arcs. Stops at the first scenario below the demand.
inline SurvivabilityReport is_survivable(const AugmentedInstance& aug, const Design& design,
                                         std::int64_t scenario_guard = 10'000'000) {
  std::vector<ArcId> candidates;
  for (ArcId a = 0; a < aug.num_initial; ++a)
    if (design.is_selected(a) && !design.is_protected(a)) candidates.push_back(a);
  const int size = std::min<int>(aug.k(), static_cast<int>(candidates.size()));
  const std::int64_t count = binomial(static_cast<std::int64_t>(candidates.size()), size);
  if (count > scenario_guard)
    throw SizeGuardError("survivability check needs " + std::to_string(count) + " scenarios, above the guard of " +
                         std::to_string(scenario_guard));

  SurvivabilityReport report;
  report.min_flow = -1;
  std::vector<ArcId> failed;
  for_each_combination(static_cast<int>(candidates.size()), size, [&](std::span<const int> idx) {
    failed.clear();
    for (int i : idx) failed.push_back(candidates[static_cast<std::size_t>(i)]);
    ++report.scenarios;
    Capacity v = max_flow(aug, ArcMask::of(aug, design, failed)).value;
    if (report.min_flow < 0 || v < report.min_flow) report.min_flow = v;
    if (v < aug.demand()) {
      report.survivable = false;
      report.witness = failed;
      return false;
    }
    return true;
  });
  return report;
}

struct ExhaustiveResult {
  bool feasible = false;
  double cost = 0.0;
  Design design;
  std::int64_t designs_checked = 0;
};

/// Cheapest survivable design by enumeration of every selection, in order of
/// cost then selection bitmask. Protection sets have size min(k', |selection|):
/// protecting one more selected arc never hurts.
inline ExhaustiveResult exhaustive_optimum(const AugmentedInstance& aug, int max_arcs = 16) {
  const int m = aug.num_initial;
  if (m > max_arcs)
    throw SizeGuardError("exhaustive search limited to " + std::to_string(max_arcs) + " arcs, instance has " +
                         std::to_string(m));
  const std::uint32_t total = 1u << m;
  std::vector<double> cost(total, 0.0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    int low = std::countr_zero(mask);
    cost[mask] = cost[mask & (mask - 1)] + aug.arcs[static_cast<std::size_t>(low)].cost;
  }
  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return cost[a] < cost[b]; });

  std::vector<std::vector<ArcId>> witnesses;  // attacks that defeated earlier designs
  ExhaustiveResult result;
  for (std::uint32_t mask : order) {
    Design design = Design::empty(aug);
    std::vector<ArcId> selected;
    for (ArcId a = 0; a < m; ++a)
      if (mask >> a & 1u) {
        design.selected[static_cast<std::size_t>(a)] = 1;
        selected.push_back(a);
      }
    ++result.designs_checked;
    if (max_flow(aug, ArcMask::of(aug, design)).value < aug.demand()) continue;

    const int protect = std::min<int>(aug.k_protected(), static_cast<int>(selected.size()));
    bool found = false;
    for_each_combination(static_cast<int>(selected.size()), protect, [&](std::span<const int> idx) {
      Design d = design;
      for (int i : idx) d.protection[static_cast<std::size_t>(selected[static_cast<std::size_t>(i)])] = 1;
      for (const auto& w : witnesses)
        if (max_flow(aug, ArcMask::of(aug, d, w)).value < aug.demand()) return true;
      SurvivabilityReport r = is_survivable(aug, d);
      if (!r.survivable) {
        witnesses.push_back(std::move(r.witness));
        return true;
      }
      design = std::move(d);
      found = true;
      return false;
    });
    if (found) {
      result.feasible = true;
      result.cost = design_cost(aug, design);
      result.design = std::move(design);
      return result;
    }
  }
  return result;
}

}  // namespace cprsnp

#endif
