#include <gtest/gtest.h>

#include "fairkc/generators.hpp"
#include "fairkc/instances.hpp"
#include "oracles.hpp"

namespace fairkc {
namespace {

FairInstance<Rational> line_two_groups() {
  return FairInstance<Rational>(oracle::line_metric(4), Grouping({0, 0, 1, 1}, 2), {1, 1});
}

TEST(CostTest, AllPointsAsCentersCostZero) {
  const auto m = oracle::line_metric(5);
  EXPECT_EQ(cost(m, std::vector<PointIndex>{0, 1, 2, 3, 4}), Rational(0));
}

TEST(CostTest, LineMetricMiddleCenters) {
  const auto m = oracle::line_metric(4);
  const std::vector<PointIndex> centers{1, 2};
  EXPECT_EQ(cost(m, centers), oracle::brute_cost(m, centers));
  EXPECT_EQ(cost(m, centers), Rational(1));
}

TEST(CostTest, EmptyCenterSetIsAnError) {
  EXPECT_THROW(cost(oracle::line_metric(3), std::vector<PointIndex>{}), InstanceError);
  EXPECT_THROW(cost(oracle::line_metric(3), std::vector<PointIndex>{7}), InstanceError);
}

TEST(CostTest, AddingCentersNeverIncreasesCost) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_graph_metric(9, rng);
    std::vector<PointIndex> centers{static_cast<PointIndex>(rng.index(9))};
    auto previous = cost(m, centers);
    for (int add = 0; add < 5; ++add) {
      centers.push_back(static_cast<PointIndex>(rng.index(9)));
      std::sort(centers.begin(), centers.end());
      centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
      const auto now = cost(m, centers);
      EXPECT_LE(now, previous);
      previous = now;
    }
  }
}

TEST(CostTest, ZeroIffEveryPointIsACenter) {
  Rng rng(3);
  const auto m = random_graph_metric(6, rng);
  for (std::uint32_t mask = 1; mask < 64; ++mask) {
    std::vector<PointIndex> centers;
    for (PointIndex p = 0; p < 6; ++p)
      if (mask & (1u << p)) centers.push_back(p);
    EXPECT_EQ(cost(m, centers) == Rational(0), centers.size() == 6) << "mask " << mask;
  }
}

TEST(FeasibilityTest, ExactCountSemantics) {
  const auto inst = line_two_groups();
  EXPECT_TRUE(is_feasible(inst, std::vector<PointIndex>{1, 2}));
  EXPECT_FALSE(is_feasible(inst, std::vector<PointIndex>{0, 1}));
  EXPECT_FALSE(is_feasible(inst, std::vector<PointIndex>{1}));
  EXPECT_FALSE(is_feasible(inst, std::vector<PointIndex>{1, 1}));
  const FairInstance<Rational> skewed(oracle::line_metric(4), Grouping({0, 0, 1, 1}, 2), {2, 0});
  EXPECT_TRUE(is_feasible(skewed, std::vector<PointIndex>{0, 1}));
  EXPECT_FALSE(is_feasible(skewed, std::vector<PointIndex>{0, 2}));
}

TEST(FeasibilityTest, OnePerGroupMeansOneIndexPerGroup) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_fair_instance(random_graph_metric(7, rng), 3, 3, QuotaPolicy::OnePerGroup, rng);
    ASSERT_TRUE(inst.is_one_per_group());
    oracle::for_each_subset(7, 3, [&](const std::vector<PointIndex>& s) {
      std::vector<int> seen(3, 0);
      for (auto c : s) ++seen[inst.grouping().group_of(c)];
      const bool one_each = seen == std::vector<int>{1, 1, 1};
      EXPECT_EQ(is_feasible(inst, s), one_each);
    });
  }
}

TEST(FeasibilityTest, Forbidden) {
  const ForbiddenInstance<Rational> inst(oracle::line_metric(4), {2, 1}, 1);
  EXPECT_EQ(inst.allowed(), (std::vector<PointIndex>{1, 2}));
  EXPECT_EQ(inst.forbidden(), (std::vector<PointIndex>{0, 3}));
  EXPECT_TRUE(is_feasible(inst, std::vector<PointIndex>{2}));
  EXPECT_FALSE(is_feasible(inst, std::vector<PointIndex>{0}));
}

TEST(InstanceTest, InvariantsAreEnforced) {
  EXPECT_THROW(Grouping({0, 2}, 2), InstanceError);
  EXPECT_THROW(Grouping({0, 0}, 2), InstanceError);
  EXPECT_THROW(FairInstance<Rational>(oracle::line_metric(4), Grouping({0, 0, 1, 1}, 2), {3, 0}), InstanceError);
  EXPECT_THROW(FairInstance<Rational>(oracle::line_metric(4), Grouping({0, 0, 1, 1}, 2), {0, 0}), InstanceError);
  EXPECT_THROW(FairInstance<Rational>(oracle::line_metric(4), Grouping({0, 0, 1}, 2), {1, 1}), InstanceError);
  EXPECT_THROW(FairInstance<Rational>(oracle::line_metric(4), Grouping({0, 0, 1, 1}, 2), {1}), InstanceError);
  EXPECT_THROW(ForbiddenInstance<Rational>(oracle::line_metric(4), {}, 1), InstanceError);
  EXPECT_THROW(ForbiddenInstance<Rational>(oracle::line_metric(4), {1}, 2), InstanceError);
  EXPECT_THROW(ForbiddenInstance<Rational>(oracle::line_metric(4), {1, 1}, 1), InstanceError);
  EXPECT_THROW(ForbiddenInstance<Rational>(oracle::line_metric(4), {4}, 1), InstanceError);
}

TEST(GeneratorTest, BalancedAndOnePerGroupQuotas) {
  EXPECT_EQ(generate_euclidean(6, 2, 2, 7, QuotaPolicy::Balanced).req(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(generate_euclidean(6, 3, 3, 7, QuotaPolicy::OnePerGroup).req(), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(balanced_quotas(3, 8), (std::vector<std::size_t>{3, 3, 2}));
  EXPECT_THROW(generate_euclidean(6, 4, 3, 1, QuotaPolicy::Balanced), InstanceError);
  EXPECT_THROW(generate_euclidean(6, 2, 3, 1, QuotaPolicy::OnePerGroup), InstanceError);
  EXPECT_THROW(generate_euclidean(3, 1, 4, 1, QuotaPolicy::Balanced), InstanceError);
}

TEST(GeneratorTest, OutputsSatisfyInvariants) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const auto n = static_cast<std::size_t>(rng.range(1, 20));
    const auto k = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(n)));
    const auto t = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(k)));
    const auto inst = generate_euclidean(n, t, k, seed, QuotaPolicy::Balanced);
    EXPECT_EQ(inst.size(), n);
    EXPECT_EQ(inst.k(), k);
    EXPECT_EQ(inst.group_count(), t);
    EXPECT_TRUE(validate(inst.metric()).ok());
    for (GroupId g = 0; g < t; ++g) EXPECT_GE(inst.grouping().members(g).size(), inst.req()[g]);
    // Same seed, same instance.
    EXPECT_EQ(generate_euclidean(n, t, k, seed, QuotaPolicy::Balanced), inst);

    const auto grid = random_fair_instance(random_grid_metric(n, rng), t, k, QuotaPolicy::Balanced, rng);
    EXPECT_TRUE(validate(grid.metric()).ok());
    const auto graph = random_graph_metric(n, rng);
    EXPECT_TRUE(validate(graph).ok());
    const auto forbidden = random_forbidden_instance(graph, k, rng);
    EXPECT_GE(forbidden.allowed().size(), k);
    if (k < n) EXPECT_LT(forbidden.allowed().size(), n);
  }
}

TEST(RngTest, IndexStaysInRange) {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(rng.index(7), 7u);
    const auto r = rng.range(-3, 3);
    EXPECT_GE(r, -3);
    EXPECT_LE(r, 3);
    const auto u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace fairkc
