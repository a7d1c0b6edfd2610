#include <gtest/gtest.h>

#include <random>

#include "cprsnp/verify.hpp"
#include "oracles.hpp"

namespace cprsnp {
namespace {

TEST(IsSurvivable, DiamondFullDesignSurvivesOneFailure) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  SurvivabilityReport r = is_survivable(aug, Design::full(aug));
  EXPECT_TRUE(r.survivable);
  EXPECT_EQ(r.scenarios, 3);
  EXPECT_EQ(r.min_flow, 1);
}

TEST(IsSurvivable, DiamondDirectArcAloneFails) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  Design d = Design::empty(aug);
  d.selected[1] = 1;
  SurvivabilityReport r = is_survivable(aug, d);
  EXPECT_FALSE(r.survivable);
  EXPECT_EQ(r.witness, (std::vector<ArcId>{1}));
  EXPECT_EQ(r.min_flow, 0);
  d.protection[1] = 1;
  EXPECT_TRUE(is_survivable(aug, d).survivable);
}

TEST(IsSurvivable, FewerCandidatesThanBudget) {
  AugmentedInstance aug = augment(testing::diamond(2, 0));
  Design d = Design::empty(aug);
  d.selected[1] = 1;
  SurvivabilityReport r = is_survivable(aug, d);
  EXPECT_FALSE(r.survivable);
  EXPECT_EQ(r.witness, (std::vector<ArcId>{1}));
}

TEST(IsSurvivable, GuardRefusesHugeEnumerations) {
  Instance inst;
  for (int v = 1; v <= 40; ++v) inst.labels.push_back(v);
  inst.terminals = {39};
  for (VertexId v = 1; v < 40; ++v) {
    inst.arcs.push_back(Arc{0, v, 1.0, 1});
    if (v < 39) inst.arcs.push_back(Arc{v, 39, 1.0, 1});
  }
  inst.k = 6;
  AugmentedInstance aug = augment(inst);
  EXPECT_THROW(is_survivable(aug, Design::full(aug)), SizeGuardError);
  inst.k = 2;
  AugmentedInstance small = augment(inst);
  EXPECT_TRUE(is_survivable(small, Design::full(small)).survivable);
}

TEST(IsSurvivable, MatchesBruteWorstAttack) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    SurvivabilityReport r = is_survivable(aug, d);
    Capacity worst = testing::brute_worst_attack(aug, d);
    EXPECT_EQ(r.survivable, worst >= aug.demand()) << "trial " << trial;
    if (r.survivable) {
      EXPECT_EQ(r.min_flow, worst);
    } else {
      EXPECT_LT(testing::brute_min_cut(aug, testing::design_capacity(aug, d, r.witness)), aug.demand());
    }
  }
}

TEST(ExhaustiveOptimum, Diamond) {
  ExhaustiveResult plain = exhaustive_optimum(augment(testing::diamond(1, 0)));
  ASSERT_TRUE(plain.feasible);
  EXPECT_EQ(plain.cost, 4.0);

  AugmentedInstance aug = augment(testing::diamond(1, 1));
  ExhaustiveResult protectable = exhaustive_optimum(aug);
  ASSERT_TRUE(protectable.feasible);
  EXPECT_EQ(protectable.cost, 2.0);
  EXPECT_TRUE(protectable.design.is_selected(1));
  EXPECT_TRUE(protectable.design.is_protected(1));

  ExhaustiveResult none = exhaustive_optimum(augment(testing::diamond(2, 0)));
  EXPECT_FALSE(none.feasible);
}

TEST(ExhaustiveOptimum, SizeGuard) {
  Instance inst;
  for (int v = 1; v <= 18; ++v) inst.labels.push_back(v);
  inst.terminals = {1};
  for (VertexId v = 1; v < 18; ++v) inst.arcs.push_back(Arc{0, v, 1.0, 1});
  AugmentedInstance aug = augment(inst);
  EXPECT_THROW(exhaustive_optimum(aug), SizeGuardError);
  EXPECT_TRUE(exhaustive_optimum(aug, 17).feasible);
}

// The optimum must be the cheapest selection that survives under some
// protection set; checked against a plain scan over every (y, p) pair.
TEST(ExhaustiveOptimum, MatchesPlainScan) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng, {.min_nodes = 4, .max_nodes = 6, .max_terminals = 3, .max_arcs = 8}));
    const int m = aug.num_initial;
    double best = -1;
    for (std::uint32_t y = 0; y < (1u << m); ++y)
      for (std::uint32_t p = y;; p = (p - 1) & y) {
        if (std::popcount(p) <= aug.k_protected()) {
          Design d = Design::empty(aug);
          for (int a = 0; a < m; ++a) {
            d.selected[static_cast<std::size_t>(a)] = y >> a & 1u;
            d.protection[static_cast<std::size_t>(a)] = p >> a & 1u;
          }
          if (testing::brute_worst_attack(aug, d) >= aug.demand()) {
            double c = design_cost(aug, d);
            if (best < 0 || c < best) best = c;
          }
        }
        if (p == 0) break;
      }
    ExhaustiveResult r = exhaustive_optimum(aug);
    EXPECT_EQ(r.feasible, best >= 0) << "trial " << trial;
    if (r.feasible) {
      EXPECT_EQ(r.cost, best) << "trial " << trial;
      EXPECT_EQ(design_cost(aug, r.design), r.cost);
      EXPECT_LE(protected_count(aug, r.design), aug.k_protected());
      EXPECT_TRUE(is_survivable(aug, r.design).survivable);
    }
  }
}

}  // namespace
}  // namespace cprsnp
