#pragma once

// Instance transformations that preserve the optimum:
//   forbidden centers -> fair k-center with two groups (isolated aux points)
//   fair k-center with two groups -> one-per-group (point duplication)
// together with the maps that carry target solutions back to the source.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairkc/instances.hpp"

namespace fairkc {

class ReductionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Target points 0..n-1 are the source points, n..n+r2-1 the aux points.
// Group 0 is the allowed set, group 1 the forbidden points plus the aux
// points; req = (k, r2).
template <DistanceScalar S>
struct TwoGroupReduction {
  ForbiddenInstance<S> source;
  FairInstance<S> target;
  std::vector<PointIndex> aux_points;
  std::size_t r2;
  S aux_distance;  // 3 * diameter(source) + 1

  bool is_aux(PointIndex p) const { return p >= source.size(); }
};

template <DistanceScalar S>
TwoGroupReduction<S> reduce_forbidden_to_fair(const ForbiddenInstance<S>& src, std::size_t r2 = 1) {
  if (r2 < 1) throw ReductionError("r2 must be at least 1");
  const std::size_t n = src.size();
  const S diam = diameter(src.metric());
  if (n >= 2 && !(S(0) < diam)) throw ReductionError("source metric has zero diameter");
  const S far = S(3) * diam + S(1);

  const std::size_t total = n + r2;
  std::vector<std::vector<S>> rows(total, std::vector<S>(total, far));
  for (PointIndex u = 0; u < total; ++u) rows[u][u] = S(0);
  for (PointIndex u = 0; u < n; ++u)
    for (PointIndex v = 0; v < n; ++v) rows[u][v] = src.metric()(u, v);

  std::vector<GroupId> labels(total, 1);
  for (auto a : src.allowed()) labels[a] = 0;
  std::vector<PointIndex> aux;
  for (PointIndex x = n; x < total; ++x) aux.push_back(x);

  FairInstance<S> target(MetricSpace<S>(rows), Grouping(std::move(labels), 2), {src.k(), r2});
  return TwoGroupReduction<S>{src, std::move(target), std::move(aux), r2, far};
}

// Drops the aux points. Every remaining center must be an allowed point.
template <DistanceScalar S>
Solution<S> map_back_two_group(const TwoGroupReduction<S>& red, const Solution<S>& sol) {
  if (!is_feasible(red.target, sol.centers)) throw ReductionError("solution is not feasible for the two-group instance");
  std::vector<PointIndex> kept;
  for (auto c : sol.centers) {
    if (red.is_aux(c)) continue;
    if (!red.source.is_allowed(c))
      throw ReductionError("center " + std::to_string(c) +
                           " is a forbidden point; the solution leaves an aux point unopened");
    kept.push_back(c);
  }
  return Solution<S>::evaluate(red.source.metric(), std::move(kept));
}

// Target group j < r1 is copy j of source group 0, group r1 + j is copy j of
// source group 1. Inside a copy, points follow ascending source index.
template <DistanceScalar S>
struct OnePerGroupReduction {
  FairInstance<S> source;
  FairInstance<S> target;
  std::vector<PointIndex> origin;  // target point -> source point
  S delta;                         // half the smallest source distance

  // Target index of the copy of source point p placed in target group j.
  PointIndex copy_of(PointIndex p, GroupId j) const {
    const auto& members = target.grouping().members(j);
    for (auto q : members)
      if (origin[q] == p) return q;
    throw ReductionError("source point " + std::to_string(p) + " has no copy in target group " + std::to_string(j));
  }
};

template <DistanceScalar S>
OnePerGroupReduction<S> reduce_two_group_to_one_per_group(const FairInstance<S>& src) {
  if (src.group_count() != 2) throw ReductionError("source must have exactly two groups");
  const auto r1 = src.req()[0], r2 = src.req()[1];
  if (r1 < 1 || r2 < 1) throw ReductionError("both groups need a positive requirement");
  if (src.size() < 2) throw ReductionError("source needs at least two points (smallest distance undefined)");
  if (src.k() >= src.size())
    throw ReductionError("source has k >= n; such instances are solved trivially and are not reduced");
  const S delta = *min_positive(src.metric()) / S(2);

  std::vector<PointIndex> origin;
  std::vector<GroupId> labels;
  GroupId next = 0;
  for (GroupId g = 0; g < 2; ++g)
    for (std::size_t copy = 0; copy < src.req()[g]; ++copy, ++next)
      for (auto p : src.grouping().members(g)) {
        origin.push_back(p);
        labels.push_back(next);
      }

  const std::size_t total = origin.size();
  std::vector<std::vector<S>> rows(total, std::vector<S>(total, S(0)));
  for (PointIndex x = 0; x < total; ++x)
    for (PointIndex y = 0; y < total; ++y) {
      if (x == y) continue;
      rows[x][y] = origin[x] == origin[y] ? delta : src.metric()(origin[x], origin[y]);
    }
  auto target = FairInstance<S>::one_per_group(MetricSpace<S>(rows), Grouping(std::move(labels), src.k()));
  return OnePerGroupReduction<S>{src, std::move(target), std::move(origin), delta};
}

// Distinct originals of the chosen copies, then each source group is topped
// up with its lowest-index unused points.
template <DistanceScalar S>
Solution<S> map_back_one_per_group(const OnePerGroupReduction<S>& red, const Solution<S>& sol) {
  if (!is_feasible(red.target, sol.centers))
    throw ReductionError("solution is not feasible for the one-per-group instance");
  const auto& grouping = red.source.grouping();
  std::vector<bool> taken(red.source.size(), false);
  std::vector<std::size_t> count(red.source.group_count(), 0);
  std::vector<PointIndex> centers;
  for (auto c : sol.centers) {
    const auto p = red.origin[c];
    if (taken[p]) continue;
    taken[p] = true;
    ++count[grouping.group_of(p)];
    centers.push_back(p);
  }
  for (GroupId g = 0; g < red.source.group_count(); ++g)
    for (auto p : grouping.members(g)) {
      if (count[g] >= red.source.req()[g]) break;
      if (taken[p]) continue;
      taken[p] = true;
      ++count[g];
      centers.push_back(p);
    }
  return Solution<S>::evaluate(red.source.metric(), std::move(centers));
}

}  // namespace fairkc
