#include <gtest/gtest.h>

#include <random>

#include "cprsnp/separation.hpp"
#include "oracles.hpp"

namespace cprsnp {
namespace {

TEST(Separation, DiamondDirectArcOnly) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  Design d = Design::empty(aug);
  d.selected[1] = 1;

  auto cut = separate_cutset(aug, d);
  ASSERT_EQ(cut.status, SeparationStatus::Violated);
  EXPECT_EQ(cut.value, 0);
  ASSERT_TRUE(cut.violated);
  EXPECT_EQ(cut_capacity(*cut.violated, ArcMask::of(aug, d)) - eval_loss(aug, *cut.violated, d, 1), 0);

  auto scenario = separate_scenario(aug, d);
  ASSERT_EQ(scenario.status, SeparationStatus::Violated);
  EXPECT_EQ(scenario.violated->arcs, (std::vector<ArcId>{1}));

  auto point = separate_bilevel(aug, d);
  ASSERT_EQ(point.status, SeparationStatus::Violated);
  EXPECT_EQ(point.violated->attack, (std::vector<std::uint8_t>{0, 1, 0, 0}));
  EXPECT_LT(evaluate_g(aug, d, *point.violated), aug.demand());
}

TEST(Separation, DiamondFullDesignIsSatisfied) {
  AugmentedInstance aug = augment(testing::diamond(1, 0));
  Design d = Design::full(aug);
  EXPECT_EQ(separate_cutset(aug, d).status, SeparationStatus::Satisfied);
  EXPECT_EQ(separate_scenario(aug, d).status, SeparationStatus::Satisfied);
  EXPECT_EQ(separate_bilevel(aug, d).status, SeparationStatus::Satisfied);
  EXPECT_EQ(separate_bilevel(aug, d).value, 1);
}

TEST(Separation, ScenarioPaddedToBudget) {
  AugmentedInstance aug = augment(testing::diamond(2, 0));
  Design d = Design::empty(aug);
  d.selected[1] = 1;
  auto r = separate_scenario(aug, d);
  ASSERT_EQ(r.status, SeparationStatus::Violated);
  EXPECT_EQ(r.violated->arcs, (std::vector<ArcId>{0, 1}));
}

TEST(Separation, ThreeOraclesAgreeWithBruteForce) {
  std::mt19937_64 rng(41);
  SeparationOptions mip;
  mip.scenario_engine = ScenarioEngine::Mip;
  for (int trial = 0; trial < 150; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    const Capacity worst = testing::brute_worst_attack(aug, d);
    const bool violated = worst < aug.demand();

    auto cut = separate_cutset(aug, d);
    auto brute = separate_scenario(aug, d);
    auto dual = separate_scenario(aug, d, mip);
    auto point = separate_bilevel(aug, d);
    for (auto status : {cut.status, brute.status, dual.status, point.status})
      EXPECT_EQ(status, violated ? SeparationStatus::Violated : SeparationStatus::Satisfied) << "trial " << trial;
    EXPECT_EQ(cut.value, worst) << "trial " << trial;
    EXPECT_EQ(point.value, worst) << "trial " << trial;
    EXPECT_EQ(dual.value, worst) << "trial " << trial;
    if (worst > 0) {
      EXPECT_EQ(brute.value, worst) << "trial " << trial;
    }
    if (!violated) continue;

    EXPECT_LT(cut_capacity(*cut.violated, ArcMask::of(aug, d)) - eval_loss(aug, *cut.violated, d, aug.k()), aug.demand());
    for (const auto* s : {&brute, &dual}) {
      ASSERT_TRUE(s->violated);
      EXPECT_NO_THROW(check_scenario(aug, *s->violated));
      EXPECT_LT(max_flow(aug, ArcMask::of(aug, d, s->violated->arcs)).value, aug.demand());
    }
    EXPECT_TRUE(satisfies_invariants(aug, *point.violated));
    EXPECT_NEAR(evaluate_g(aug, d, *point.violated), static_cast<double>(worst), 1e-9);
  }
}

TEST(Strengthen, RowStillCutsOffDesignAndDominatedPairs) {
  std::mt19937_64 rng(42);
  int strengthened = 0;
  for (int trial = 0; trial < 150; ++trial) {
    AugmentedInstance aug = augment(testing::random_instance(rng));
    Design d = testing::random_design(aug, rng);
    auto sep = separate_bilevel(aug, d);
    if (sep.status != SeparationStatus::Violated) continue;
    StrengthenResult s = strengthen(aug, d, *sep.violated);
    EXPECT_FALSE(s.timed_out);
    EXPECT_TRUE(satisfies_invariants(aug, s.point));
    EXPECT_LT(evaluate_g(aug, d, s.point), aug.demand() - 0.5) << "trial " << trial;
    if (!s.strengthened) {
      EXPECT_EQ(s.point, *sep.violated);
      continue;
    }
    ++strengthened;
    for (ArcId a = 0; a < aug.num_arcs(); ++a) EXPECT_GE(s.lifted.selected[static_cast<std::size_t>(a)], d.selected[static_cast<std::size_t>(a)]);
    EXPECT_EQ(s.lifted.protection, d.protection);
    EXPECT_LT(evaluate_g(aug, s.lifted, s.point), aug.demand() - 0.5);
    for (int sample = 0; sample < 10; ++sample) {
      Design smaller = s.lifted;
      for (ArcId a = 0; a < aug.num_initial; ++a) {
        auto i = static_cast<std::size_t>(a);
        if (detail::bounded(rng, 3) == 0) smaller.selected[i] = 0;
        if (!smaller.selected[i] || detail::bounded(rng, 3) == 0) smaller.protection[i] = 0;
      }
      EXPECT_LT(evaluate_g(aug, smaller, s.point), aug.demand() - 0.5);
    }
  }
  EXPECT_GT(strengthened, 0);
}

TEST(Strengthen, UnweightedProtectionVariantRuns) {
  AugmentedInstance aug = augment(testing::diamond(1, 1));
  Design d = Design::empty(aug);
  d.selected[0] = 1;
  auto sep = separate_bilevel(aug, d);
  ASSERT_EQ(sep.status, SeparationStatus::Violated);
  SeparationOptions o;
  o.capacity_weighted_protection = false;
  StrengthenResult s = strengthen(aug, d, *sep.violated, o);
  EXPECT_LT(evaluate_g(aug, d, s.point), aug.demand());
}

TEST(Separation, ZeroTimeLimitReportsTimeout) {
  std::mt19937_64 rng(43);
  AugmentedInstance aug = augment(testing::random_instance(rng, {.min_nodes = 8, .max_nodes = 8, .max_terminals = 3, .max_arcs = 20}));
  SeparationOptions o;
  o.time_limit_s = 0.0;
  o.scenario_engine = ScenarioEngine::Mip;
  Design d = Design::full(aug);
  EXPECT_EQ(separate_bilevel(aug, d, o).status, SeparationStatus::Timeout);
  EXPECT_EQ(separate_scenario(aug, d, o).status, SeparationStatus::Timeout);
}

}  // namespace
}  // namespace cprsnp
