#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

namespace fairkc {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

struct Matching {
  std::size_t size = 0;
  std::vector<std::size_t> left_to_right;  // kUnmatched when free
  std::vector<std::size_t> right_to_left;
};

// Hopcroft-Karp maximum bipartite matching, O(E sqrt(V)). Adjacency lists are
// visited in the given order, so the result is deterministic.
inline Matching max_bipartite_matching(std::size_t left, std::size_t right,
                                       const std::vector<std::vector<std::size_t>>& adj) {
  Matching m{0, std::vector<std::size_t>(left, kUnmatched), std::vector<std::size_t>(right, kUnmatched)};
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> layer(left);
  std::vector<std::size_t> next_edge(left);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < left; ++u) {
      layer[u] = m.left_to_right[u] == kUnmatched ? 0 : kInf;
      if (layer[u] == 0) q.push(u);
    }
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto v : adj[u]) {
        const auto w = m.right_to_left[v];
        if (w == kUnmatched) {
          found = true;
        } else if (layer[w] == kInf) {
          layer[w] = layer[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  auto dfs = [&](auto&& self, std::size_t u) -> bool {
    for (auto& e = next_edge[u]; e < adj[u].size(); ++e) {
      const auto v = adj[u][e];
      const auto w = m.right_to_left[v];
      if (w == kUnmatched || (layer[w] == layer[u] + 1 && self(self, w))) {
        m.left_to_right[u] = v;
        m.right_to_left[v] = u;
        ++e;
        return true;
      }
    }
    layer[u] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(next_edge.begin(), next_edge.end(), 0);
    for (std::size_t u = 0; u < left; ++u)
      if (m.left_to_right[u] == kUnmatched && dfs(dfs, u)) ++m.size;
  }
  return m;
}

template <class W>
struct BottleneckAssignment {
  W threshold;
  Matching matching;
};

// Matching that saturates every left vertex while minimising the largest
// edge weight used. weights[u][v] is the weight of edge (u, v); all edges
// exist. Binary search over the sorted distinct weights, each threshold
// decided by a maximum matching. nullopt when no left-saturating matching
// exists at all (left > right).
template <class W>
std::optional<BottleneckAssignment<W>> bottleneck_assignment(const std::vector<std::vector<W>>& weights,
                                                             std::size_t right) {
  const std::size_t left = weights.size();
  if (left > right) return std::nullopt;
  std::vector<W> values;
  for (const auto& row : weights) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  auto match_at = [&](const W& tau) {
    std::vector<std::vector<std::size_t>> adj(left);
    for (std::size_t u = 0; u < left; ++u)
      for (std::size_t v = 0; v < right; ++v)
        if (!(tau < weights[u][v])) adj[u].push_back(v);
    return max_bipartite_matching(left, right, adj);
  };

  if (left == 0) return BottleneckAssignment<W>{W(0), Matching{0, {}, std::vector<std::size_t>(right, kUnmatched)}};
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (match_at(values[mid]).size == left) hi = mid;
    else lo = mid + 1;
  }
  auto best = match_at(values[lo]);
  if (best.size != left) return std::nullopt;
  return BottleneckAssignment<W>{values[lo], std::move(best)};
}

}  // namespace fairkc
