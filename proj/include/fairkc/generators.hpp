#pragma once

// Seeded random instance generators. All randomness goes through Rng, whose
// output depends only on the seed (mt19937_64 plus fixed integer/real
// conversions), so instances are identical across standard libraries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fairkc/instances.hpp"

namespace fairkc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n), rejection sampled.
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }
  // Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(index(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class QuotaPolicy { Balanced, OnePerGroup };

inline const char* to_string(QuotaPolicy p) { return p == QuotaPolicy::Balanced ? "balanced" : "one-per-group"; }

// floor(k/t) each, remainder to the lowest group ids.
inline std::vector<std::size_t> balanced_quotas(std::size_t t, std::size_t k) {
  if (t == 0) throw InstanceError("need at least one group");
  std::vector<std::size_t> req(t, k / t);
  for (std::size_t g = 0; g < k % t; ++g) ++req[g];
  return req;
}

inline std::vector<std::size_t> make_quotas(std::size_t n, std::size_t t, std::size_t k, QuotaPolicy policy) {
  if (n == 0) throw InstanceError("n must be positive");
  if (t == 0) throw InstanceError("t must be positive");
  if (k == 0 || k > n) throw InstanceError("k = " + std::to_string(k) + " outside [1, n = " + std::to_string(n) + "]");
  if (t > k)
    throw InstanceError("t = " + std::to_string(t) + " exceeds k = " + std::to_string(k) +
                        "; every group needs at least one center");
  if (policy == QuotaPolicy::OnePerGroup && t != k)
    throw InstanceError("one-per-group quotas need t == k (got t = " + std::to_string(t) + ", k = " + std::to_string(k) + ")");
  return balanced_quotas(t, k);
}

// Random labels such that group g receives at least max(req[g], 1) points.
inline Grouping random_grouping(std::size_t n, const std::vector<std::size_t>& req, Rng& rng) {
  std::vector<GroupId> labels;
  labels.reserve(n);
  for (GroupId g = 0; g < req.size(); ++g) labels.insert(labels.end(), std::max<std::size_t>(req[g], 1), g);
  if (labels.size() > n) throw InstanceError("not enough points to populate every group");
  while (labels.size() < n) labels.push_back(static_cast<GroupId>(rng.index(req.size())));
  rng.shuffle(labels);
  return Grouping(std::move(labels), req.size());
}

// n points uniform in the unit square, Euclidean distances.
inline FairInstance<double> generate_euclidean(std::size_t n, std::size_t t, std::size_t k, std::uint64_t seed,
                                               QuotaPolicy policy) {
  auto req = make_quotas(n, t, k, policy);
  Rng rng(seed);
  PointCloud<double> cloud{Norm::L2, {}};
  cloud.coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform01();
    const double y = rng.uniform01();
    cloud.coords.push_back({x, y});
  }
  auto metric = MetricSpace<double>::from_points(std::move(cloud));
  auto grouping = random_grouping(n, req, rng);
  return FairInstance<double>(std::move(metric), std::move(grouping), std::move(req));
}

// n distinct integer points on a side x side grid with L1 distances (exact).
inline MetricSpace<Rational> random_grid_metric(std::size_t n, Rng& rng, std::int64_t side = 0) {
  if (n == 0) throw InstanceError("n must be positive");
  if (side <= 0) side = std::max<std::int64_t>(3, static_cast<std::int64_t>(std::ceil(2.0 * std::sqrt(double(n)))));
  if (static_cast<std::size_t>(side * side) < n) throw InstanceError("grid too small for n distinct points");
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  PointCloud<Rational> cloud{Norm::L1, {}};
  while (cloud.coords.size() < n) {
    const auto x = rng.range(0, side - 1);
    const auto y = rng.range(0, side - 1);
    if (!used.emplace(x, y).second) continue;
    cloud.coords.push_back({Rational(x), Rational(y)});
  }
  return MetricSpace<Rational>::from_points(std::move(cloud));
}

// Shortest-path metric of a random connected graph with integer weights in
// [1, max_weight]: a random spanning tree plus extra edges with probability
// edge_prob.
inline MetricSpace<Rational> random_graph_metric(std::size_t n, Rng& rng, std::int64_t max_weight = 10,
                                                 double edge_prob = 0.3) {
  if (n == 0) throw InstanceError("n must be positive");
  constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, kUnreached));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  auto add_edge = [&](std::size_t a, std::size_t b) {
    const auto w = rng.range(1, max_weight);
    d[a][b] = d[b][a] = std::min(d[a][b], w);
  };
  for (std::size_t i = 1; i < n; ++i) add_edge(i, rng.index(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform01() < edge_prob) add_edge(i, j);
  for (std::size_t via = 0; via < n; ++via)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][via] + d[via][j]);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = Rational(d[i][j]);
  return MetricSpace<Rational>(rows);
}

template <DistanceScalar S>
FairInstance<S> random_fair_instance(MetricSpace<S> metric, std::size_t t, std::size_t k, QuotaPolicy policy, Rng& rng) {
  auto req = make_quotas(metric.size(), t, k, policy);
  auto grouping = random_grouping(metric.size(), req, rng);
  return FairInstance<S>(std::move(metric), std::move(grouping), std::move(req));
}

// Two groups with 1 <= r1, r2 and r1 + r2 = k (needs k >= 2).
template <DistanceScalar S>
FairInstance<S> random_two_group_instance(MetricSpace<S> metric, std::size_t k, Rng& rng) {
  if (k < 2 || k > metric.size()) throw InstanceError("two-group instance needs 2 <= k <= n");
  const auto r1 = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(k) - 1));
  std::vector<std::size_t> req{r1, k - r1};
  auto grouping = random_grouping(metric.size(), req, rng);
  return FairInstance<S>(std::move(metric), std::move(grouping), std::move(req));
}

// Allowed set of random size in [k, n-1] (or all points when k == n).
template <DistanceScalar S>
ForbiddenInstance<S> random_forbidden_instance(MetricSpace<S> metric, std::size_t k, Rng& rng) {
  const std::size_t n = metric.size();
  if (k < 1 || k > n) throw InstanceError("k = " + std::to_string(k) + " outside [1, n = " + std::to_string(n) + "]");
  const std::size_t size = k < n ? static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n) - 1)) : n;
  std::vector<PointIndex> order(n);
  for (PointIndex p = 0; p < n; ++p) order[p] = p;
  rng.shuffle(order);
  order.resize(size);
  return ForbiddenInstance<S>(std::move(metric), std::move(order), k);
}

inline ForbiddenInstance<double> generate_euclidean_forbidden(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n == 0) throw InstanceError("n must be positive");
  Rng rng(seed);
  PointCloud<double> cloud{Norm::L2, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform01();
    const double y = rng.uniform01();
    cloud.coords.push_back({x, y});
  }
  return random_forbidden_instance(MetricSpace<double>::from_points(std::move(cloud)), k, rng);
}

}  // namespace fairkc
