#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fairkc/scalar.hpp"

namespace fairkc {

using PointIndex = std::size_t;

enum class Norm { L1, L2, Linf };

inline const char* to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "L1";
    case Norm::L2: return "L2";
    case Norm::Linf: return "Linf";
  }
  return "?";
}

inline Norm parse_norm(const std::string& s) {
  if (s == "L1") return Norm::L1;
  if (s == "L2") return Norm::L2;
  if (s == "Linf") return Norm::Linf;
  throw std::invalid_argument("unknown norm '" + s + "' (expected L1, L2 or Linf)");
}

// Coordinates a metric was generated from, kept so instance files can store
// the compact point form.
template <DistanceScalar S>
struct PointCloud {
  Norm norm = Norm::L2;
  std::vector<std::vector<S>> coords;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;
};

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense n x n distance matrix. Construction only checks the shape; the metric
// axioms are checked by validate() so that broken matrices can be reported.
template <DistanceScalar S>
class MetricSpace {
 public:
  using scalar_type = S;

  explicit MetricSpace(const std::vector<std::vector<S>>& rows) : n_(rows.size()) {
    if (n_ == 0) throw MetricError("metric space needs at least one point");
    dist_.reserve(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_)
        throw MetricError("distance matrix is not square: row " + std::to_string(i) + " has " +
                          std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n_));
      dist_.insert(dist_.end(), rows[i].begin(), rows[i].end());
    }
  }

  static MetricSpace from_points(PointCloud<S> cloud) {
    const auto& pts = cloud.coords;
    if (pts.empty()) throw MetricError("point list is empty");
    const std::size_t dim = pts.front().size();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].size() != dim)
        throw MetricError("dimension mismatch: point " + std::to_string(i) + " has " + std::to_string(pts[i].size()) +
                          " coordinates, expected " + std::to_string(dim));
    if constexpr (scalar_traits<S>::exact) {
      if (cloud.norm == Norm::L2) throw MetricError("L2 distances are not exact; use double coordinates");
    }
    std::vector<std::vector<S>> rows(pts.size(), std::vector<S>(pts.size(), S(0)));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) rows[i][j] = rows[j][i] = point_distance(pts[i], pts[j], cloud.norm);
    MetricSpace m(rows);
    m.points_ = std::move(cloud);
    return m;
  }

  std::size_t size() const { return n_; }
  const S& operator()(PointIndex i, PointIndex j) const { return dist_[i * n_ + j]; }

  std::vector<std::vector<S>> rows() const {
    std::vector<std::vector<S>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i].assign(dist_.begin() + i * n_, dist_.begin() + (i + 1) * n_);
    return out;
  }

  const std::optional<PointCloud<S>>& points() const { return points_; }

  friend bool operator==(const MetricSpace& a, const MetricSpace& b) {
    return a.n_ == b.n_ && a.dist_ == b.dist_ && a.points_ == b.points_;
  }

 private:
  static S point_distance(const std::vector<S>& a, const std::vector<S>& b, Norm norm) {
    S acc(0);
    for (std::size_t d = 0; d < a.size(); ++d) {
      S diff = a[d] - b[d];
      if (diff < S(0)) diff = -diff;
      switch (norm) {
        case Norm::L1: acc = acc + diff; break;
        case Norm::Linf: acc = std::max(acc, diff); break;
        case Norm::L2: acc = acc + diff * diff; break;
      }
    }
    if constexpr (!scalar_traits<S>::exact) {
      if (norm == Norm::L2) acc = std::sqrt(acc);
    }
    return acc;
  }

  std::size_t n_;
  std::vector<S> dist_;
  std::optional<PointCloud<S>> points_;
};

enum class Axiom { ZeroDiagonal, Symmetry, PositiveOffDiagonal, TriangleInequality };

inline const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::ZeroDiagonal: return "zero-diagonal";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::PositiveOffDiagonal: return "positive-off-diagonal";
    case Axiom::TriangleInequality: return "triangle-inequality";
  }
  return "?";
}

// Witness (i, j, l): for the triangle axiom d(i,j) > d(i,l) + d(l,j); the
// other axioms only use (i, j) and repeat j in l.
struct Violation {
  Axiom axiom;
  PointIndex i, j, l;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(Axiom a) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [a](const Violation& v) { return v.axiom == a; }));
  }
};

// Full O(n^3) scan. Exact scalars compare with zero slack, doubles with 1e-9.
template <DistanceScalar S>
ValidationReport validate(const MetricSpace<S>& m) {
  const S tol = scalar_traits<S>::tolerance();
  const std::size_t n = m.size();
  ValidationReport report;
  auto& out = report.violations;
  for (PointIndex i = 0; i < n; ++i) {
    if (tol < m(i, i) || m(i, i) < -tol) out.push_back({Axiom::ZeroDiagonal, i, i, i});
    for (PointIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) {
        const S diff = m(i, j) - m(j, i);
        if (tol < diff || diff < -tol) out.push_back({Axiom::Symmetry, i, j, j});
      }
      if (!(S(0) < m(i, j))) out.push_back({Axiom::PositiveOffDiagonal, i, j, j});
    }
  }
  for (PointIndex i = 0; i < n; ++i)
    for (PointIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      for (PointIndex l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        if (m(i, l) + m(l, j) + tol < m(i, j)) out.push_back({Axiom::TriangleInequality, i, j, l});
      }
    }
  return report;
}

template <DistanceScalar S>
S diameter(const MetricSpace<S>& m) {
  S best(0);
  for (PointIndex i = 0; i < m.size(); ++i)
    for (PointIndex j = i + 1; j < m.size(); ++j) best = std::max(best, m(i, j));
  return best;
}

// Smallest distance between distinct points; nullopt for a single point.
template <DistanceScalar S>
std::optional<S> min_positive(const MetricSpace<S>& m) {
  std::optional<S> best;
  for (PointIndex i = 0; i < m.size(); ++i)
    for (PointIndex j = i + 1; j < m.size(); ++j)
      if (!best || m(i, j) < *best) best = m(i, j);
  return best;
}

// Sorted distinct entries of the matrix, 0 included.
template <DistanceScalar S>
std::vector<S> distinct_distances(const MetricSpace<S>& m) {
  std::vector<S> values;
  values.reserve(m.size() * (m.size() + 1) / 2);
  values.push_back(S(0));
  for (PointIndex i = 0; i < m.size(); ++i)
    for (PointIndex j = i + 1; j < m.size(); ++j) values.push_back(m(i, j));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace fairkc
