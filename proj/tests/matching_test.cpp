#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fairkc/generators.hpp"
#include "fairkc/matching.hpp"

namespace fairkc {
namespace {

// Maximum matching size by trying every injective assignment of left vertices
// (with "unmatched" allowed).
std::size_t brute_max_matching(std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<bool> used(right, false);
  auto rec = [&](auto&& self, std::size_t u) -> std::size_t {
    if (u == left) return 0;
    std::size_t best = self(self, u + 1);
    for (auto v : adj[u]) {
      if (used[v]) continue;
      used[v] = true;
      best = std::max(best, 1 + self(self, u + 1));
      used[v] = false;
    }
    return best;
  };
  return rec(rec, 0);
}

TEST(MatchingTest, HopcroftKarpMatchesBruteForce) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto left = static_cast<std::size_t>(rng.range(0, 6));
    const auto right = static_cast<std::size_t>(rng.range(0, 6));
    std::vector<std::vector<std::size_t>> adj(left);
    for (std::size_t u = 0; u < left; ++u)
      for (std::size_t v = 0; v < right; ++v)
        if (rng.uniform01() < 0.35) adj[u].push_back(v);
    const auto m = max_bipartite_matching(left, right, adj);
    EXPECT_EQ(m.size, brute_max_matching(left, right, adj));
    std::size_t counted = 0;
    for (std::size_t u = 0; u < left; ++u) {
      if (m.left_to_right[u] == kUnmatched) continue;
      ++counted;
      const auto v = m.left_to_right[u];
      EXPECT_EQ(m.right_to_left[v], u);
      EXPECT_NE(std::find(adj[u].begin(), adj[u].end(), v), adj[u].end());
    }
    EXPECT_EQ(counted, m.size);
  }
}

TEST(MatchingTest, BottleneckMatchesPermutationEnumeration) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.range(1, 5));
    std::vector<std::vector<int>> w(n, std::vector<int>(n));
    for (auto& row : w)
      for (auto& x : row) x = static_cast<int>(rng.range(0, 9));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int best = 1 << 30;
    do {
      int worst = 0;
      for (std::size_t u = 0; u < n; ++u) worst = std::max(worst, w[u][perm[u]]);
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto result = bottleneck_assignment(w, n);
    ASSERT_TRUE(result.has_value());
    EXPECT_EQ(result->threshold, best);
    EXPECT_EQ(result->matching.size, n);
    for (std::size_t u = 0; u < n; ++u) EXPECT_LE(w[u][result->matching.left_to_right[u]], best);
  }
}

TEST(MatchingTest, BottleneckNeedsEnoughRightVertices) {
  EXPECT_FALSE(bottleneck_assignment(std::vector<std::vector<int>>{{1}, {2}}, 1).has_value());
  const auto empty = bottleneck_assignment(std::vector<std::vector<int>>{}, 2);
  ASSERT_TRUE(empty.has_value());
  EXPECT_EQ(empty->matching.size, 0u);
}

}  // namespace
}  // namespace fairkc
