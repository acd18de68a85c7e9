#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/container_hash/hash.hpp>
#include <boost/dynamic_bitset.hpp>

#include "fairkc/instances.hpp"
#include "fairkc/matching.hpp"

namespace fairkc {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

enum class Optimality { Exact, Heuristic, Unknown };

inline const char* to_string(Optimality o) {
  switch (o) {
    case Optimality::Exact: return "exact";
    case Optimality::Heuristic: return "heuristic";
    case Optimality::Unknown: return "unknown";
  }
  return "?";
}

struct SolveStats {
  std::uint64_t nodes = 0;      // branch nodes over all decision calls
  std::size_t decisions = 0;    // radius thresholds tested
};

template <DistanceScalar S>
struct SolveResult {
  std::optional<Solution<S>> solution;  // empty iff optimality == Unknown
  Optimality optimality = Optimality::Unknown;
  std::string algorithm;
  SolveStats stats;

  bool solved() const { return solution.has_value(); }
};

namespace detail {

inline constexpr std::size_t kNoClass = std::numeric_limits<std::size_t>::max();

struct BudgetExhausted {};

// Decides whether the points can be covered within radius r using at most
// quota[c] centers of class c (points of class kNoClass cannot be centers).
// Always branches on the lowest-index uncovered point, candidates ascending.
template <DistanceScalar S>
class QuotaCoverSearch {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  QuotaCoverSearch(const MetricSpace<S>& metric, std::vector<std::size_t> center_class, std::vector<std::size_t> quota,
                   std::uint64_t budget)
      : metric_(metric), class_(std::move(center_class)), quota_(std::move(quota)), budget_(budget) {}

  // Centers that cover every point within r, or nullopt. Throws
  // BudgetExhausted once the node budget is spent.
  std::optional<std::vector<PointIndex>> decide(const S& r) {
    const std::size_t n = metric_.size();
    reach_.assign(n, Bits(n));
    cover_.assign(n, Bits(n));
    for (PointIndex p = 0; p < n; ++p)
      for (PointIndex c = 0; c < n; ++c)
        if (class_[c] != kNoClass && !(r < metric_(p, c))) {
          reach_[p].set(c);
          cover_[c].set(p);
        }
    class_mask_.assign(quota_.size(), Bits(n));
    Bits open(n);
    for (PointIndex c = 0; c < n; ++c)
      if (class_[c] != kNoClass) {
        class_mask_[class_[c]].set(c);
        if (quota_[class_[c]] > 0) open.set(c);
      }
    remaining_ = quota_;
    total_remaining_ = 0;
    for (auto q : quota_) total_remaining_ += q;
    chosen_.clear();
    failed_.clear();
    Bits uncovered(n);
    uncovered.set();
    ++stats.decisions;
    if (search(uncovered, open)) return chosen_;
    return std::nullopt;
  }

  SolveStats stats;

 private:
  static constexpr std::size_t kMaxMemo = 1u << 21;

  std::vector<std::uint64_t> memo_key(const Bits& uncovered) const {
    std::vector<std::uint64_t> key;
    key.reserve(uncovered.num_blocks() + remaining_.size());
    boost::to_block_range(uncovered, std::back_inserter(key));
    key.insert(key.end(), remaining_.begin(), remaining_.end());
    return key;
  }

  // Greedy packing of uncovered points whose open candidate sets are
  // pairwise disjoint; each needs its own center. Returns kNoClass if some
  // uncovered point has no open candidate at all.
  std::size_t packing_bound(const Bits& uncovered, const Bits& open) const {
    Bits used(uncovered.size());
    std::size_t count = 0;
    for (auto q = uncovered.find_first(); q != Bits::npos; q = uncovered.find_next(q)) {
      Bits cand = reach_[q] & open;
      if (cand.none()) return kNoClass;
      if (!cand.intersects(used)) {
        used |= cand;
        ++count;
      }
    }
    return count;
  }

  bool search(const Bits& uncovered, const Bits& open) {
    if (uncovered.none()) return true;
    if (total_remaining_ == 0) return false;
    if (++stats.nodes > budget_) throw BudgetExhausted{};
    const auto bound = packing_bound(uncovered, open);
    if (bound == kNoClass || bound > total_remaining_) return false;
    auto key = memo_key(uncovered);
    if (failed_.count(key)) return false;

    const auto p = uncovered.find_first();
    const Bits cand = reach_[p] & open;
    for (auto c = cand.find_first(); c != Bits::npos; c = cand.find_next(c)) {
      const auto cls = class_[c];
      Bits next_uncovered = uncovered;
      next_uncovered -= cover_[c];
      --remaining_[cls];
      --total_remaining_;
      chosen_.push_back(c);
      Bits next_open = open;
      next_open.reset(c);
      if (remaining_[cls] == 0) next_open -= class_mask_[cls];
      const bool ok = search(next_uncovered, next_open);
      if (ok) return true;
      chosen_.pop_back();
      ++total_remaining_;
      ++remaining_[cls];
    }
    if (failed_.size() < kMaxMemo) failed_.insert(std::move(key));
    return false;
  }

  const MetricSpace<S>& metric_;
  std::vector<std::size_t> class_;
  std::vector<std::size_t> quota_;
  std::uint64_t budget_;
  std::vector<Bits> reach_;  // reach_[p]: eligible centers within r of p
  std::vector<Bits> cover_;  // cover_[c]: points within r of center c
  std::vector<Bits> class_mask_;
  std::vector<std::size_t> remaining_;
  std::size_t total_remaining_ = 0;
  std::vector<PointIndex> chosen_;
  std::unordered_set<std::vector<std::uint64_t>, boost::hash<std::vector<std::uint64_t>>> failed_;
};

// Smallest pairwise distance r for which decide(r) succeeds, then quotas are
// topped up with the lowest-index unused points of each class.
template <DistanceScalar S>
SolveResult<S> threshold_search(const MetricSpace<S>& metric, const std::vector<std::size_t>& center_class,
                                const std::vector<std::size_t>& quota, std::uint64_t budget, std::string algorithm) {
  SolveResult<S> result;
  result.algorithm = std::move(algorithm);
  QuotaCoverSearch<S> search(metric, center_class, quota, budget);
  const auto radii = distinct_distances(metric);
  std::optional<std::vector<PointIndex>> witness;
  try {
    std::size_t lo = 0, hi = radii.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (auto found = search.decide(radii[mid])) {
        witness = std::move(found);
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (!witness) witness = search.decide(radii[lo]);
  } catch (const BudgetExhausted&) {
    result.stats = search.stats;
    result.optimality = Optimality::Unknown;
    return result;
  }
  result.stats = search.stats;
  if (!witness) throw std::logic_error("cover search failed at the largest distance; instance is infeasible");

  std::vector<std::size_t> used(quota.size(), 0);
  std::vector<bool> taken(metric.size(), false);
  for (auto c : *witness) {
    ++used[center_class[c]];
    taken[c] = true;
  }
  for (PointIndex p = 0; p < metric.size(); ++p) {
    const auto cls = center_class[p];
    if (cls == kNoClass || taken[p] || used[cls] >= quota[cls]) continue;
    witness->push_back(p);
    taken[p] = true;
    ++used[cls];
  }
  result.solution = Solution<S>::evaluate(metric, std::move(*witness));
  result.optimality = Optimality::Exact;
  return result;
}

}  // namespace detail

// Exact fair k-center optimum: binary search over the distinct pairwise
// distances with a backtracking cover decision. Budget exhaustion yields an
// Unknown result, never a heuristic answer.
template <DistanceScalar S>
SolveResult<S> solve_exact_fair(const FairInstance<S>& inst, std::uint64_t budget = kDefaultNodeBudget) {
  std::vector<std::size_t> cls(inst.grouping().labels().begin(), inst.grouping().labels().end());
  return detail::threshold_search(inst.metric(), cls, inst.req(), budget, "exact-fair");
}

template <DistanceScalar S>
SolveResult<S> solve_exact_forbidden(const ForbiddenInstance<S>& inst, std::uint64_t budget = kDefaultNodeBudget) {
  std::vector<std::size_t> cls(inst.size(), detail::kNoClass);
  for (auto a : inst.allowed()) cls[a] = 0;
  return detail::threshold_search(inst.metric(), cls, {inst.k()}, budget, "exact-forbidden");
}

// Unconstrained k-center optimum.
template <DistanceScalar S>
SolveResult<S> solve_exact_kcenter(const MetricSpace<S>& metric, std::size_t k, std::uint64_t budget = kDefaultNodeBudget) {
  if (k < 1 || k > metric.size()) throw InstanceError("k outside [1, n]");
  std::vector<std::size_t> cls(metric.size(), 0);
  return detail::threshold_search(metric, cls, {k}, budget, "exact-kcenter");
}

// Product over groups of C(|G_g|, req[g]), saturating at uint64 max.
template <DistanceScalar S>
std::uint64_t feasible_set_count(const FairInstance<S>& inst) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (GroupId g = 0; g < inst.group_count(); ++g) {
    const std::uint64_t n = inst.grouping().members(g).size(), r = inst.req()[g];
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
      if (c > kMax / (n - r + i)) return kMax;
      c = c * (n - r + i) / i;
    }
    if (c != 0 && total > kMax / c) return kMax;
    total *= c;
  }
  return total;
}

// Visits every feasible center set (unsorted across groups; lexicographic
// within each group). The visitor returns false to stop early.
template <DistanceScalar S>
void for_each_feasible_center_set(const FairInstance<S>& inst,
                                  const std::function<bool(std::span<const PointIndex>)>& visit) {
  std::vector<PointIndex> current;
  current.reserve(inst.k());
  const auto& grouping = inst.grouping();
  bool stop = false;
  auto rec = [&](auto&& self, GroupId g, std::size_t from, std::size_t need) -> void {
    if (stop) return;
    if (g == inst.group_count()) {
      if (!visit(current)) stop = true;
      return;
    }
    if (need == 0) {
      const std::size_t next_need = g + 1 < inst.group_count() ? inst.req()[g + 1] : 0;
      self(self, g + 1, 0, next_need);
      return;
    }
    const auto& members = grouping.members(g);
    for (std::size_t i = from; i + need <= members.size() && !stop; ++i) {
      current.push_back(members[i]);
      self(self, g, i + 1, need - 1);
      current.pop_back();
    }
  };
  rec(rec, 0, 0, inst.req()[0]);
}

// All feasible center sets (each sorted, listed lexicographically) whose cost
// equals `radius`.
template <DistanceScalar S>
std::vector<std::vector<PointIndex>> center_sets_with_cost(const FairInstance<S>& inst, const S& radius) {
  std::vector<std::vector<PointIndex>> out;
  for_each_feasible_center_set<S>(inst, [&](std::span<const PointIndex> centers) {
    if (cost(inst.metric(), centers) == radius) {
      std::vector<PointIndex> s(centers.begin(), centers.end());
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Farthest-first traversal: starts at `start`, then repeatedly takes the
// point farthest from the chosen set (lowest index on ties). Selection order.
template <DistanceScalar S>
std::vector<PointIndex> farthest_first_order(const MetricSpace<S>& m, std::size_t k, PointIndex start) {
  const std::size_t n = m.size();
  if (k < 1 || k > n) throw InstanceError("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  if (start >= n) throw InstanceError("start index " + std::to_string(start) + " out of range");
  std::vector<PointIndex> order{start};
  std::vector<bool> chosen(n, false);
  chosen[start] = true;
  std::vector<S> gap(n);
  for (PointIndex p = 0; p < n; ++p) gap[p] = m(p, start);
  while (order.size() < k) {
    PointIndex best = n;
    for (PointIndex p = 0; p < n; ++p)
      if (!chosen[p] && (best == n || gap[best] < gap[p])) best = p;
    order.push_back(best);
    chosen[best] = true;
    for (PointIndex p = 0; p < n; ++p) gap[p] = std::min(gap[p], m(p, best));
  }
  return order;
}

// Gonzalez 2-approximation for unconstrained k-center.
template <DistanceScalar S>
Solution<S> gonzalez(const MetricSpace<S>& m, std::size_t k, PointIndex start = 0) {
  return Solution<S>::evaluate(m, farthest_first_order(m, k, start));
}

/// Fair 3-approximation. Candidates come from the farthest-first traversal.
/// For every prefix length j of that order, the first j candidates are
/// assigned to group slots by a bottleneck assignment (group g has req[g]
/// slots; the weight of candidate c on a slot of g is the distance from c to
/// the nearest point of g). Each candidate, in ascending point index order, is
/// replaced by the nearest still-unused point of its matched group, and the
/// quotas left open are filled with the lowest-index unused points. The
/// cheapest of the k resulting sets is returned; ties go to the longer prefix.
///
/// Matching all k candidates alone is not enough: when two candidates share
/// an optimal cluster the assignment can push a candidate far away (ratios up
/// to 9 show up on random instances). The shortest prefix whose covering
/// radius is at most 2 * opt has candidates more than 2 * opt apart, one per
/// optimal cluster, so that prefix yields a set within 3 * opt.
template <DistanceScalar S>
Solution<S> fair_match_3approx(const FairInstance<S>& inst, PointIndex start = 0) {
  const auto& m = inst.metric();
  const auto& grouping = inst.grouping();
  const auto order = farthest_first_order(m, inst.k(), start);

  std::vector<GroupId> slot_group;
  for (GroupId g = 0; g < inst.group_count(); ++g) slot_group.insert(slot_group.end(), inst.req()[g], g);

  auto gap = [&](PointIndex c, GroupId g) {
    const auto& members = grouping.members(g);
    S best = m(c, members.front());
    for (auto p : members) best = std::min(best, m(c, p));
    return best;
  };

  auto project = [&](std::vector<PointIndex> candidates) {
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::vector<S>> weights(candidates.size(), std::vector<S>(slot_group.size()));
    for (std::size_t i = 0; i < candidates.size(); ++i)
      for (std::size_t s = 0; s < slot_group.size(); ++s) weights[i][s] = gap(candidates[i], slot_group[s]);
    const auto assignment = bottleneck_assignment(weights, slot_group.size());
    if (!assignment) throw std::logic_error("no candidate-to-slot matching");

    std::vector<bool> used(m.size(), false);
    std::vector<std::size_t> taken(inst.group_count(), 0);
    std::vector<PointIndex> centers;
    centers.reserve(inst.k());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const GroupId g = slot_group[assignment->matching.left_to_right[i]];
      PointIndex best = m.size();
      for (auto p : grouping.members(g))
        if (!used[p] && (best == m.size() || m(candidates[i], p) < m(candidates[i], best))) best = p;
      used[best] = true;
      ++taken[g];
      centers.push_back(best);
    }
    for (GroupId g = 0; g < inst.group_count(); ++g)
      for (auto p : grouping.members(g)) {
        if (taken[g] == inst.req()[g]) break;
        if (used[p]) continue;
        used[p] = true;
        ++taken[g];
        centers.push_back(p);
      }
    return Solution<S>::evaluate(m, std::move(centers));
  };

  std::optional<Solution<S>> best;
  for (std::size_t j = order.size(); j >= 1; --j) {
    auto sol = project(std::vector<PointIndex>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j)));
    if (!best || sol.radius < best->radius) best = std::move(sol);
  }
  return *best;
}

}  // namespace fairkc
