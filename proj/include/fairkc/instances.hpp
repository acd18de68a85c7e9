#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairkc/metric_space.hpp"

namespace fairkc {

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using GroupId = std::size_t;

// Disjoint partition of the points: label per point, every group nonempty.
class Grouping {
 public:
  Grouping(std::vector<GroupId> labels, std::size_t group_count) : labels_(std::move(labels)), members_(group_count) {
    if (group_count == 0) throw InstanceError("grouping needs at least one group");
    for (PointIndex p = 0; p < labels_.size(); ++p) {
      if (labels_[p] >= group_count)
        throw InstanceError("point " + std::to_string(p) + " has group label " + std::to_string(labels_[p]) +
                            " outside [0, " + std::to_string(group_count) + ")");
      members_[labels_[p]].push_back(p);
    }
    for (GroupId g = 0; g < group_count; ++g)
      if (members_[g].empty()) throw InstanceError("group " + std::to_string(g) + " is empty");
  }

  std::size_t group_count() const { return members_.size(); }
  std::size_t point_count() const { return labels_.size(); }
  GroupId group_of(PointIndex p) const { return labels_[p]; }
  const std::vector<GroupId>& labels() const { return labels_; }
  // Ascending point indices.
  const std::vector<PointIndex>& members(GroupId g) const { return members_[g]; }

  friend bool operator==(const Grouping& a, const Grouping& b) { return a.labels_ == b.labels_ && a.group_count() == b.group_count(); }

 private:
  std::vector<GroupId> labels_;
  std::vector<std::vector<PointIndex>> members_;
};

// Fair k-center: exactly req[g] centers from group g, sum(req) == k.
template <DistanceScalar S>
class FairInstance {
 public:
  FairInstance(MetricSpace<S> metric, Grouping grouping, std::vector<std::size_t> req)
      : metric_(std::move(metric)), grouping_(std::move(grouping)), req_(std::move(req)) {
    if (grouping_.point_count() != metric_.size())
      throw InstanceError("grouping labels " + std::to_string(grouping_.point_count()) + " points, metric has " +
                          std::to_string(metric_.size()));
    if (req_.size() != grouping_.group_count())
      throw InstanceError("requirement vector has " + std::to_string(req_.size()) + " entries for " +
                          std::to_string(grouping_.group_count()) + " groups");
    k_ = std::accumulate(req_.begin(), req_.end(), std::size_t{0});
    if (k_ < 1 || k_ > metric_.size())
      throw InstanceError("k = " + std::to_string(k_) + " outside [1, " + std::to_string(metric_.size()) + "]");
    for (GroupId g = 0; g < req_.size(); ++g)
      if (req_[g] > grouping_.members(g).size())
        throw InstanceError("group " + std::to_string(g) + " requires " + std::to_string(req_[g]) + " centers but has " +
                            std::to_string(grouping_.members(g).size()) + " points");
  }

  static FairInstance one_per_group(MetricSpace<S> metric, Grouping grouping) {
    std::vector<std::size_t> req(grouping.group_count(), 1);
    return FairInstance(std::move(metric), std::move(grouping), std::move(req));
  }

  const MetricSpace<S>& metric() const { return metric_; }
  const Grouping& grouping() const { return grouping_; }
  const std::vector<std::size_t>& req() const { return req_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return metric_.size(); }
  std::size_t group_count() const { return grouping_.group_count(); }
  bool is_one_per_group() const {
    return std::all_of(req_.begin(), req_.end(), [](std::size_t r) { return r == 1; });
  }

  friend bool operator==(const FairInstance&, const FairInstance&) = default;

 private:
  MetricSpace<S> metric_;
  Grouping grouping_;
  std::vector<std::size_t> req_;
  std::size_t k_ = 0;
};

// k-center with forbidden centers: centers must come from `allowed`, every
// point is served.
template <DistanceScalar S>
class ForbiddenInstance {
 public:
  ForbiddenInstance(MetricSpace<S> metric, std::vector<PointIndex> allowed, std::size_t k)
      : metric_(std::move(metric)), allowed_(std::move(allowed)), k_(k) {
    std::sort(allowed_.begin(), allowed_.end());
    if (std::adjacent_find(allowed_.begin(), allowed_.end()) != allowed_.end())
      throw InstanceError("allowed set contains duplicates");
    if (allowed_.empty()) throw InstanceError("allowed set is empty");
    if (allowed_.back() >= metric_.size())
      throw InstanceError("allowed index " + std::to_string(allowed_.back()) + " out of range");
    if (k_ < 1 || k_ > allowed_.size())
      throw InstanceError("k = " + std::to_string(k_) + " outside [1, |allowed| = " + std::to_string(allowed_.size()) + "]");
  }

  const MetricSpace<S>& metric() const { return metric_; }
  // Ascending.
  const std::vector<PointIndex>& allowed() const { return allowed_; }
  std::vector<PointIndex> forbidden() const {
    std::vector<PointIndex> out;
    for (PointIndex p = 0; p < metric_.size(); ++p)
      if (!is_allowed(p)) out.push_back(p);
    return out;
  }
  bool is_allowed(PointIndex p) const { return std::binary_search(allowed_.begin(), allowed_.end(), p); }
  std::size_t k() const { return k_; }
  std::size_t size() const { return metric_.size(); }

  friend bool operator==(const ForbiddenInstance&, const ForbiddenInstance&) = default;

 private:
  MetricSpace<S> metric_;
  std::vector<PointIndex> allowed_;
  std::size_t k_;
};

// max over points of the distance to the nearest center.
template <DistanceScalar S>
S cost(const MetricSpace<S>& m, std::span<const PointIndex> centers) {
  if (centers.empty()) throw InstanceError("cost of an empty center set is undefined");
  for (PointIndex c : centers)
    if (c >= m.size()) throw InstanceError("center index " + std::to_string(c) + " out of range");
  S worst(0);
  for (PointIndex u = 0; u < m.size(); ++u) {
    S nearest = m(u, centers[0]);
    for (PointIndex c : centers.subspan(1)) nearest = std::min(nearest, m(u, c));
    worst = std::max(worst, nearest);
  }
  return worst;
}

template <DistanceScalar S>
S cost(const MetricSpace<S>& m, const std::vector<PointIndex>& centers) {
  return cost(m, std::span<const PointIndex>(centers));
}

namespace detail {

inline bool distinct_in_range(std::span<const PointIndex> centers, std::size_t n) {
  std::vector<PointIndex> sorted(centers.begin(), centers.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return sorted.empty() || sorted.back() < n;
}

}  // namespace detail

// |centers| == k and exactly req[g] centers in every group.
template <DistanceScalar S>
bool is_feasible(const FairInstance<S>& inst, std::span<const PointIndex> centers) {
  if (centers.size() != inst.k() || !detail::distinct_in_range(centers, inst.size())) return false;
  std::vector<std::size_t> counts(inst.group_count(), 0);
  for (PointIndex c : centers) ++counts[inst.grouping().group_of(c)];
  return counts == inst.req();
}

template <DistanceScalar S>
bool is_feasible(const ForbiddenInstance<S>& inst, std::span<const PointIndex> centers) {
  if (centers.size() != inst.k() || !detail::distinct_in_range(centers, inst.size())) return false;
  return std::all_of(centers.begin(), centers.end(), [&](PointIndex c) { return inst.is_allowed(c); });
}

template <class Instance>
bool is_feasible(const Instance& inst, const std::vector<PointIndex>& centers) {
  return is_feasible(inst, std::span<const PointIndex>(centers));
}

// Chosen centers (ascending) with their covering radius.
template <DistanceScalar S>
struct Solution {
  std::vector<PointIndex> centers;
  S radius;

  static Solution evaluate(const MetricSpace<S>& m, std::vector<PointIndex> centers) {
    std::sort(centers.begin(), centers.end());
    S r = cost(m, centers);
    return Solution{std::move(centers), std::move(r)};
  }

  bool contains(PointIndex p) const { return std::binary_search(centers.begin(), centers.end(), p); }

  friend bool operator==(const Solution&, const Solution&) = default;
};

}  // namespace fairkc
