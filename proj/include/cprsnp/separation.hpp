#ifndef CPRSNP_SEPARATION_HPP
#define CPRSNP_SEPARATION_HPP

// Separation oracles of the three formulations and the extreme-point
// strengthening. Each oracle evaluates min over k-failure scenarios of the
// max-flow of a design, through a different model.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <vector>

#include "cprsnp/combinatorics.hpp"
#include "cprsnp/formulations.hpp"
#include "cprsnp/graph.hpp"
#include "cprsnp/milp/solver.hpp"

namespace cprsnp {

enum class SeparationStatus { Violated, Satisfied, Timeout };

inline const char* to_string(SeparationStatus s) {
  switch (s) {
    case SeparationStatus::Violated: return "violated";
    case SeparationStatus::Satisfied: return "satisfied";
    case SeparationStatus::Timeout: return "timeout";
  }
  return "?";
}

enum class ScenarioEngine { Auto, BruteForce, Mip };

struct SeparationOptions {
  double time_limit_s = 1e9;
  ScenarioEngine scenario_engine = ScenarioEngine::Auto;
  std::int64_t brute_force_limit = 100'000;  // Auto uses brute force up to this many scenarios
  bool capacity_weighted_protection = true;  // u factor on the protection term of the strengthening row
  milp::Tolerances tolerances{};
};

template <class T>
struct SeparationResult {
  SeparationStatus status = SeparationStatus::Timeout;
  std::int64_t value = 0;  // post-attack flow value found (valid unless Timeout)
  std::optional<T> violated;
};

namespace detail {

inline milp::MipOptions mip_options(const SeparationOptions& o) {
  milp::MipOptions m;
  m.time_limit_s = o.time_limit_s;
  m.tolerances = o.tolerances;
  return m;
}

inline std::int64_t integral_value(double v) { return static_cast<std::int64_t>(std::llround(v)); }

inline std::vector<ArcId> attack_candidates(const AugmentedInstance& aug, const Design& design) {
  std::vector<ArcId> out;
  for (ArcId a = 0; a < aug.num_initial; ++a)
    if (design.is_selected(a) && !design.is_protected(a)) out.push_back(a);
  return out;
}

// Completes `arcs` to exactly k initial arcs with the lowest unused ids.
inline FailureScenario pad_scenario(const AugmentedInstance& aug, std::vector<ArcId> arcs) {
  std::sort(arcs.begin(), arcs.end());
  for (ArcId a = 0; a < aug.num_initial && static_cast<int>(arcs.size()) < aug.k(); ++a)
    if (!std::binary_search(arcs.begin(), arcs.end(), a)) {
      arcs.push_back(a);
      std::sort(arcs.begin(), arcs.end());
    }
  return FailureScenario{std::move(arcs)};
}

}  // namespace detail

/// Cut-set oracle: minimum residual capacity cut through the separation MIP.
inline SeparationResult<CutSet> separate_cutset(const AugmentedInstance& aug, const Design& design,
                                                const SeparationOptions& options = {}) {
  CutDualModel m = build_cutset_separation(aug, design);
  auto r = milp::solve_mip(m.model, detail::mip_options(options));
  SeparationResult<CutSet> out;
  if (!r.has_solution()) return out;
  out.value = detail::integral_value(r.objective);
  if (out.value < aug.demand()) {
    out.status = SeparationStatus::Violated;
    out.violated = cut_from_mu(aug, m, r.values);
  } else if (r.status == milp::Status::Optimal) {
    out.status = SeparationStatus::Satisfied;
  }
  return out;
}

/// k most vital arcs: the k unprotected selected arcs whose removal minimises
/// the max-flow, by enumeration or through the single-level 2LP MIP.
inline SeparationResult<FailureScenario> separate_scenario(const AugmentedInstance& aug, const Design& design,
                                                           const SeparationOptions& options = {}) {
  const std::vector<ArcId> candidates = detail::attack_candidates(aug, design);
  const int size = std::min<int>(aug.k(), static_cast<int>(candidates.size()));
  const std::int64_t count = binomial(static_cast<std::int64_t>(candidates.size()), size);
  bool brute = options.scenario_engine == ScenarioEngine::BruteForce ||
               (options.scenario_engine == ScenarioEngine::Auto && count <= options.brute_force_limit);

  SeparationResult<FailureScenario> out;
  if (brute) {
    const auto deadline = milp::detail::deadline_after(options.time_limit_s);
    std::int64_t best = -1;
    std::vector<ArcId> best_arcs;
    bool timed_out = false;
    long visited = 0;
    std::vector<ArcId> failed;
    for_each_combination(static_cast<int>(candidates.size()), size, [&](std::span<const int> idx) {
      if ((++visited & 255) == 0 && milp::detail::Clock::now() > deadline) {
        timed_out = true;
        return false;
      }
      failed.clear();
      for (int i : idx) failed.push_back(candidates[static_cast<std::size_t>(i)]);
      Capacity v = max_flow(aug, ArcMask::of(aug, design, failed)).value;
      if (best < 0 || v < best) {
        best = v;
        best_arcs = failed;
      }
      return best > 0;
    });
    if (timed_out && (best < 0 || best >= aug.demand())) return out;
    out.value = best;
    if (best < aug.demand()) {
      out.status = SeparationStatus::Violated;
      out.violated = detail::pad_scenario(aug, best_arcs);
    } else {
      out.status = SeparationStatus::Satisfied;
    }
    return out;
  }

  InnerDualModel m = build_2lp(aug, design);
  auto r = milp::solve_mip(m.model, detail::mip_options(options));
  if (!r.has_solution()) return out;
  out.value = detail::integral_value(r.objective);
  if (out.value < aug.demand()) {
    std::vector<ArcId> arcs;
    for (ArcId a = 0; a < aug.num_initial; ++a)
      if (r.values[static_cast<std::size_t>(m.attack[static_cast<std::size_t>(a)])] > 0.5) arcs.push_back(a);
    out.status = SeparationStatus::Violated;
    out.violated = detail::pad_scenario(aug, arcs);
  } else if (r.status == milp::Status::Optimal) {
    out.status = SeparationStatus::Satisfied;
  }
  return out;
}

/// Bilevel oracle: solves 2LP at the design and returns its optimal point
/// when the post-attack flow is below the demand.
inline SeparationResult<ExtremePoint> separate_bilevel(const AugmentedInstance& aug, const Design& design,
                                                       const SeparationOptions& options = {}) {
  InnerDualModel m = build_2lp(aug, design);
  auto r = milp::solve_mip(m.model, detail::mip_options(options));
  SeparationResult<ExtremePoint> out;
  if (!r.has_solution()) return out;
  out.value = detail::integral_value(r.objective);
  if (out.value < aug.demand()) {
    out.status = SeparationStatus::Violated;
    out.violated = extract_point(aug, m, r.values, options.tolerances.integrality);
  } else if (r.status == milp::Status::Optimal) {
    out.status = SeparationStatus::Satisfied;
  }
  return out;
}

struct StrengthenResult {
  ExtremePoint point;
  bool strengthened = false;
  bool timed_out = false;
  Design lifted;  // design used for the new point (equal to the input when not strengthened)
};

/// Finds a non-valid cut with the fewest arcs, selects every arc outside it,
/// and re-solves 2LP at the lifted design. The new row still cuts off
/// `design` since the lifted selection dominates it.
inline StrengthenResult strengthen(const AugmentedInstance& aug, const Design& design, const ExtremePoint& point,
                                   const SeparationOptions& options = {}) {
  StrengthenResult out{point, false, false, design};
  const auto start = milp::detail::Clock::now();
  CutDualModel m = build_strengthening(aug, design, options.capacity_weighted_protection);
  auto r = milp::solve_mip(m.model, detail::mip_options(options));
  if (!r.has_solution()) {
    out.timed_out = r.status == milp::Status::Timeout;
    return out;
  }
  Design lifted = design;
  const double tol = options.tolerances.integrality;
  for (ArcId a = 0; a < aug.num_arcs(); ++a) {
    auto i = static_cast<std::size_t>(a);
    if (r.values[static_cast<std::size_t>(m.lambda[i])] <= tol && r.values[static_cast<std::size_t>(m.gamma[i])] <= tol)
      lifted.selected[i] = 1;
  }
  if (lifted == design) return out;

  SeparationOptions rest = options;
  rest.time_limit_s = options.time_limit_s - milp::detail::elapsed_since(start);
  if (rest.time_limit_s <= 0) {
    out.timed_out = true;
    return out;
  }
  auto again = separate_bilevel(aug, lifted, rest);
  if (again.status == SeparationStatus::Violated) {
    out.point = std::move(*again.violated);
    out.strengthened = true;
    out.lifted = std::move(lifted);
  } else if (again.status == SeparationStatus::Timeout) {
    out.timed_out = true;
  }
  return out;
}

}  // namespace cprsnp

#endif
