#pragma once

// Executable checks of the properties each reduction is supposed to have:
// metric axioms of the target, exact agreement with the construction
// formulas, equal optima (by exact solving), aux points in every optimum,
// and solution transfer through the map-backs.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fairkc/reductions.hpp"
#include "fairkc/solvers.hpp"

namespace fairkc {

enum class Verdict { Pass, Fail, Skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

struct ClaimCheck {
  std::string id;
  Verdict verdict = Verdict::Skipped;
  std::string detail;
  std::vector<std::string> witnesses;
};

namespace claim {
inline constexpr const char* kMetric = "metric";
inline constexpr const char* kConstruction = "construction-exactness";
inline constexpr const char* kOptEquality = "opt-equality";
inline constexpr const char* kOptBound = "opt-bound";
inline constexpr const char* kAuxMandatory = "aux-mandatory";
inline constexpr const char* kDeltaDominance = "delta-dominance";
inline constexpr const char* kTransfer = "transfer";
}  // namespace claim

template <DistanceScalar S>
struct ReductionCertificate {
  std::string reduction;
  bool metric_ok = false;
  std::vector<Violation> metric_witnesses;
  std::optional<S> opt_source;
  std::optional<S> opt_target;
  bool opt_equal = false;
  std::vector<ClaimCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (c.verdict == Verdict::Fail) return false;
    return true;
  }
  const ClaimCheck* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
  Verdict verdict(const std::string& id) const {
    const auto* c = find(id);
    return c ? c->verdict : Verdict::Skipped;
  }
};

struct VerifyOptions {
  std::uint64_t budget = kDefaultNodeBudget;
  // Optimal-set enumeration runs only on targets this small.
  std::size_t enumeration_max_points = 12;
  std::uint64_t enumeration_limit = 1'000'000;
  PointIndex start = 0;
};

namespace detail {

template <DistanceScalar S>
bool leq(const S& a, const S& b) {
  return !(b + scalar_traits<S>::tolerance() < a);
}

inline std::string format_set(const std::vector<PointIndex>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

inline std::string format_violation(const Violation& v) {
  std::ostringstream os;
  os << to_string(v.axiom) << " (" << v.i << "," << v.j << "," << v.l << ")";
  return os.str();
}

template <DistanceScalar S>
ClaimCheck metric_check(const MetricSpace<S>& target, ReductionCertificate<S>& cert) {
  ClaimCheck check{claim::kMetric, Verdict::Pass, "", {}};
  const auto report = validate(target);
  cert.metric_ok = report.ok();
  cert.metric_witnesses = report.violations;
  if (!report.ok()) {
    check.verdict = Verdict::Fail;
    check.detail = std::to_string(report.violations.size()) + " axiom violations";
    for (std::size_t i = 0; i < report.violations.size() && i < 20; ++i)
      check.witnesses.push_back(format_violation(report.violations[i]));
  } else {
    check.detail = "target satisfies all metric axioms";
  }
  return check;
}

template <DistanceScalar S>
ClaimCheck opt_equality_check(ReductionCertificate<S>& cert, const SolveResult<S>& src, const SolveResult<S>& dst) {
  ClaimCheck check{claim::kOptEquality, Verdict::Skipped, "", {}};
  if (src.solved()) cert.opt_source = src.solution->radius;
  if (dst.solved()) cert.opt_target = dst.solution->radius;
  if (!src.solved() || !dst.solved()) {
    check.detail = "exact solver budget exhausted";
    return check;
  }
  cert.opt_equal = *cert.opt_source == *cert.opt_target;
  check.verdict = cert.opt_equal ? Verdict::Pass : Verdict::Fail;
  check.detail = "opt(source) = " + to_string(*cert.opt_source) + ", opt(target) = " + to_string(*cert.opt_target);
  if (!cert.opt_equal) check.witnesses.push_back(check.detail);
  return check;
}

// Map-back must be source-feasible, no costlier than the target solution,
// and within factor 3 of opt(source) when that is known.
template <DistanceScalar S, class Source, class MapBack>
ClaimCheck transfer_check(const Source& source, const FairInstance<S>& target, const std::optional<S>& opt_source,
                          PointIndex start, MapBack&& map_back) {
  ClaimCheck check{claim::kTransfer, Verdict::Pass, "", {}};
  const auto approx = fair_match_3approx(target, start);
  std::optional<Solution<S>> mapped;
  try {
    mapped = map_back(approx);
  } catch (const ReductionError& e) {
    check.verdict = Verdict::Fail;
    check.detail = e.what();
    check.witnesses.push_back("target solution " + format_set(approx.centers));
    return check;
  }
  std::ostringstream os;
  os << "target cost " << to_string(approx.radius) << ", mapped cost " << to_string(mapped->radius);
  if (!is_feasible(source, mapped->centers)) {
    check.verdict = Verdict::Fail;
    check.witnesses.push_back("mapped solution " + format_set(mapped->centers) + " infeasible for source");
  }
  if (!leq(mapped->radius, approx.radius)) {
    check.verdict = Verdict::Fail;
    check.witnesses.push_back("mapped cost exceeds target cost");
  }
  if (opt_source) {
    os << ", opt(source) " << to_string(*opt_source);
    if (!leq(mapped->radius, S(3) * *opt_source)) {
      check.verdict = Verdict::Fail;
      check.witnesses.push_back("mapped cost exceeds 3 * opt(source)");
    }
  }
  check.detail = os.str();
  return check;
}

}  // namespace detail

template <DistanceScalar S>
ReductionCertificate<S> verify_claims(const TwoGroupReduction<S>& red, const VerifyOptions& options = {}) {
  ReductionCertificate<S> cert;
  cert.reduction = "forbidden-to-two-group";
  const auto& src = red.source;
  const auto& dst = red.target;
  const std::size_t n = src.size();
  cert.checks.push_back(detail::metric_check(dst.metric(), cert));

  {
    ClaimCheck check{claim::kConstruction, Verdict::Pass, "", {}};
    auto fail = [&](std::string w) {
      check.verdict = Verdict::Fail;
      if (check.witnesses.size() < 20) check.witnesses.push_back(std::move(w));
    };
    const S diam = diameter(src.metric());
    const S far = S(3) * diam + S(1);
    const std::size_t total = n + red.r2;
    if (dst.size() != total) fail("target has " + std::to_string(dst.size()) + " points, expected " + std::to_string(total));
    if (dst.k() != src.k() + red.r2) fail("target k = " + std::to_string(dst.k()));
    if (dst.group_count() != 2 || dst.req() != std::vector<std::size_t>{src.k(), red.r2}) fail("requirement vector differs from (k, r2)");
    if (check.verdict == Verdict::Pass) {
      for (PointIndex u = 0; u < total; ++u) {
        const GroupId expected_group = (u < n && src.is_allowed(u)) ? 0 : 1;
        if (dst.grouping().group_of(u) != expected_group) fail("point " + std::to_string(u) + " in wrong group");
        for (PointIndex v = 0; v < total; ++v) {
          S expected = u == v ? S(0) : (u < n && v < n ? src.metric()(u, v) : far);
          if (!(dst.metric()(u, v) == expected))
            fail("d'(" + std::to_string(u) + "," + std::to_string(v) + ") = " + to_string(dst.metric()(u, v)) +
                 ", expected " + to_string(expected));
        }
      }
    }
    check.detail = check.verdict == Verdict::Pass ? "aux distances equal 3D+1 = " + to_string(far)
                                                  : std::to_string(check.witnesses.size()) + "+ deviations from the construction";
    cert.checks.push_back(std::move(check));
  }

  const auto src_opt = solve_exact_forbidden(src, options.budget);
  const auto dst_opt = solve_exact_fair(dst, options.budget);
  cert.checks.push_back(detail::opt_equality_check(cert, src_opt, dst_opt));

  {
    ClaimCheck check{claim::kOptBound, Verdict::Skipped, "", {}};
    if (cert.opt_target) {
      const S diam = diameter(src.metric());
      check.verdict = *cert.opt_target <= diam ? Verdict::Pass : Verdict::Fail;
      check.detail = "opt(target) = " + to_string(*cert.opt_target) + ", D = " + to_string(diam);
    } else {
      check.detail = "exact solver budget exhausted";
    }
    cert.checks.push_back(std::move(check));
  }

  {
    ClaimCheck check{claim::kAuxMandatory, Verdict::Skipped, "", {}};
    if (!cert.opt_target) {
      check.detail = "exact solver budget exhausted";
    } else if (dst.size() > options.enumeration_max_points || feasible_set_count(dst) > options.enumeration_limit) {
      check.detail = "target too large for enumeration";
    } else {
      const auto optima = center_sets_with_cost(dst, *cert.opt_target);
      check.verdict = optima.empty() ? Verdict::Fail : Verdict::Pass;
      for (const auto& set : optima)
        for (auto x : red.aux_points)
          if (!std::binary_search(set.begin(), set.end(), x)) {
            check.verdict = Verdict::Fail;
            if (check.witnesses.size() < 20)
              check.witnesses.push_back("optimum " + detail::format_set(set) + " omits aux point " + std::to_string(x));
          }
      check.detail = std::to_string(optima.size()) + " optimal solutions enumerated";
    }
    cert.checks.push_back(std::move(check));
  }

  cert.checks.push_back(detail::transfer_check(src, dst, cert.opt_source, options.start,
                                               [&](const Solution<S>& s) { return map_back_two_group(red, s); }));
  return cert;
}

template <DistanceScalar S>
ReductionCertificate<S> verify_claims(const OnePerGroupReduction<S>& red, const VerifyOptions& options = {}) {
  ReductionCertificate<S> cert;
  cert.reduction = "two-group-to-one-per-group";
  const auto& src = red.source;
  const auto& dst = red.target;
  cert.checks.push_back(detail::metric_check(dst.metric(), cert));
  const S min_dist = *min_positive(src.metric());

  {
    ClaimCheck check{claim::kConstruction, Verdict::Pass, "", {}};
    auto fail = [&](std::string w) {
      check.verdict = Verdict::Fail;
      if (check.witnesses.size() < 20) check.witnesses.push_back(std::move(w));
    };
    if (!(red.delta == min_dist / S(2))) fail("delta = " + to_string(red.delta) + ", expected " + to_string(min_dist / S(2)));
    const auto r1 = src.req()[0], r2 = src.req()[1];
    const std::size_t expected_size = r1 * src.grouping().members(0).size() + r2 * src.grouping().members(1).size();
    if (dst.size() != expected_size || red.origin.size() != dst.size())
      fail("target has " + std::to_string(dst.size()) + " points, expected " + std::to_string(expected_size));
    if (dst.group_count() != src.k() || !dst.is_one_per_group()) fail("target is not one-per-group with k groups");
    if (check.verdict == Verdict::Pass) {
      for (GroupId j = 0; j < dst.group_count(); ++j) {
        const GroupId source_group = j < r1 ? 0 : 1;
        std::vector<PointIndex> originals;
        for (auto q : dst.grouping().members(j)) originals.push_back(red.origin[q]);
        std::sort(originals.begin(), originals.end());
        if (originals != src.grouping().members(source_group))
          fail("target group " + std::to_string(j) + " is not a copy of source group " + std::to_string(source_group));
      }
      for (PointIndex x = 0; x < dst.size(); ++x)
        for (PointIndex y = 0; y < dst.size(); ++y) {
          const S expected = x == y ? S(0) : red.origin[x] == red.origin[y] ? red.delta : src.metric()(red.origin[x], red.origin[y]);
          if (!(dst.metric()(x, y) == expected))
            fail("d'(" + std::to_string(x) + "," + std::to_string(y) + ") = " + to_string(dst.metric()(x, y)) +
                 ", expected " + to_string(expected));
        }
    }
    check.detail = check.verdict == Verdict::Pass ? "delta = " + to_string(red.delta) : "deviations from the construction";
    cert.checks.push_back(std::move(check));
  }

  const auto src_opt = solve_exact_fair(src, options.budget);
  const auto dst_opt = solve_exact_fair(dst, options.budget);
  cert.checks.push_back(detail::opt_equality_check(cert, src_opt, dst_opt));

  {
    ClaimCheck check{claim::kDeltaDominance, Verdict::Skipped, "", {}};
    if (cert.opt_source) {
      const bool ok = !(*cert.opt_source < min_dist) && red.delta < min_dist;
      check.verdict = ok ? Verdict::Pass : Verdict::Fail;
      check.detail = "opt(source) = " + to_string(*cert.opt_source) + ", smallest distance = " + to_string(min_dist) +
                     ", delta = " + to_string(red.delta);
    } else {
      check.detail = "exact solver budget exhausted";
    }
    cert.checks.push_back(std::move(check));
  }

  cert.checks.push_back(detail::transfer_check(src, dst, cert.opt_source, options.start,
                                               [&](const Solution<S>& s) { return map_back_one_per_group(red, s); }));
  return cert;
}

}  // namespace fairkc
