#pragma once

// Point sets and the distance sequences the statistics are built from.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "slide/distances.hpp"
#include "slide/errors.hpp"

namespace slide {

// Finite list of points with a metric: either Euclidean coordinates (stored
// row-major, dimension m) or abstract elements with a distance callback.
class PointSet {
 public:
  using Metric = std::function<double(std::size_t, std::size_t)>;

  PointSet() = default;

  static PointSet euclidean(std::vector<double> coords, std::size_t dim) {
    if (dim == 0) throw DomainError("point dimension must be at least 1");
    if (coords.size() % dim != 0) throw DomainError("coordinate count is not a multiple of dim");
    for (double c : coords)
      if (!std::isfinite(c)) throw DomainError("coordinates must be finite");
    PointSet set;
    set.count_ = coords.size() / dim;
    set.coords_ = std::move(coords);
    set.dim_ = dim;
    return set;
  }

  static PointSet from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return euclidean({}, 1);
    const std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (const auto& row : rows) {
      if (row.size() != dim) throw DomainError("rows have inconsistent dimension");
      coords.insert(coords.end(), row.begin(), row.end());
    }
    return euclidean(std::move(coords), dim);
  }

  // count elements identified by index; metric(i, j) is their distance.
  static PointSet with_metric(std::size_t count, Metric metric) {
    PointSet set;
    set.count_ = count;
    set.metric_ = std::move(metric);
    return set;
  }

  std::size_t size() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_euclidean() const noexcept { return !metric_; }

  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  std::span<const double> coordinates() const noexcept { return coords_; }

  double distance(std::size_t i, std::size_t j) const {
    if (metric_) return metric_(i, j);
    return std::sqrt(squared_distance(i, j));
  }

  // Sum of squared coordinate differences, accumulated in dimension order.
  double squared_distance(std::size_t i, std::size_t j) const {
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double diff = a[k] - b[k];
      sum += diff * diff;
    }
    return sum;
  }

  // Exact duplicate search. Returns the first duplicate pair found, or
  // {size(), size()} when all points are distinct.
  std::pair<std::size_t, std::size_t> find_duplicate() const {
    const std::pair<std::size_t, std::size_t> none{count_, count_};
    if (count_ < 2) return none;
    if (metric_) {
      for (std::size_t i = 0; i < count_; ++i)
        for (std::size_t j = i + 1; j < count_; ++j)
          if (metric_(i, j) == 0.0) return {i, j};
      return none;
    }
    std::vector<std::size_t> order(count_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [this](std::size_t a, std::size_t b) {
      auto pa = point(a), pb = point(b);
      return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 1; k < count_; ++k) {
      auto pa = point(order[k - 1]), pb = point(order[k]);
      if (std::equal(pa.begin(), pa.end(), pb.begin()))
        return {std::min(order[k - 1], order[k]), std::max(order[k - 1], order[k])};
    }
    return none;
  }

  bool distinct() const { return find_duplicate().first == count_; }

  // Symmetry and identity-of-indiscernibles on up to `samples` index pairs
  // spread deterministically over the set.
  bool metric_spot_check(std::size_t samples = 64) const {
    if (count_ < 2) return true;
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t i = (s * 7919) % count_;
      const std::size_t j = (s * 104729 + 1) % count_;
      if (distance(i, i) != 0.0) return false;
      if (distance(i, j) != distance(j, i)) return false;
      if (distance(i, j) < 0.0) return false;
    }
    return true;
  }

 private:
  std::vector<double> coords_;
  std::size_t dim_ = 1;
  std::size_t count_ = 0;
  Metric metric_;
};

// ---------------------------------------------------------------------------
// Exact nearest-neighbor search over Euclidean points.

class KdTree {
 public:
  explicit KdTree(const PointSet& points) : points_(points), index_(points.size()) {
    std::iota(index_.begin(), index_.end(), std::size_t{0});
    nodes_.reserve(2 * points.size() / kLeafSize + 2);
    if (!index_.empty()) build(0, index_.size(), 0);
  }

  // Squared distance from point i to its nearest other point.
  double nearest_squared(std::size_t i) const {
    double best = std::numeric_limits<double>::infinity();
    search(0, i, best);
    return best;
  }

 private:
  static constexpr std::size_t kLeafSize = 8;

  struct Node {
    std::size_t begin, end;  // index_ range
    std::size_t axis;
    double split;
    std::size_t left = 0, right = 0;  // child node ids; 0 for leaves
  };

  std::size_t build(std::size_t begin, std::size_t end, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({begin, end, 0, 0.0});
    if (end - begin <= kLeafSize) return id;

    // Split along the axis of largest spread.
    const std::size_t dim = points_.dim();
    std::size_t axis = depth % dim;
    double widest = -1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t p = begin; p < end; ++p) {
        const double c = points_.point(index_[p])[k];
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      if (hi - lo > widest) {
        widest = hi - lo;
        axis = k;
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    auto coord = [this, axis](std::size_t idx) { return points_.point(idx)[axis]; };
    std::nth_element(index_.begin() + static_cast<std::ptrdiff_t>(begin),
                     index_.begin() + static_cast<std::ptrdiff_t>(mid),
                     index_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return coord(a) < coord(b); });
    const double split = coord(index_[mid]);
    const std::size_t left = build(begin, mid, depth + 1);
    const std::size_t right = build(mid, end, depth + 1);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  void search(std::size_t node_id, std::size_t query, double& best) const {
    const Node& node = nodes_[node_id];
    if (node.left == 0) {
      for (std::size_t p = node.begin; p < node.end; ++p) {
        const std::size_t other = index_[p];
        if (other == query) continue;
        best = std::min(best, points_.squared_distance(query, other));
      }
      return;
    }
    const double diff = points_.point(query)[node.axis] - node.split;
    const std::size_t near = diff < 0.0 ? node.left : node.right;
    const std::size_t far = diff < 0.0 ? node.right : node.left;
    search(near, query, best);
    // Any point across the split is at least |diff| away along this axis, and
    // the accumulated squared sum is never smaller than one of its terms.
    if (diff * diff <= best) search(far, query, best);
  }

  const PointSet& points_;
  std::vector<std::size_t> index_;
  std::vector<Node> nodes_;
};

struct NearestNeighborOptions {
  // Above this size Euclidean sets use the k-d tree instead of the O(k^2) scan.
  std::size_t brute_force_limit = 2000;
  // Allow coincident points (zero distances); used by the level statistics.
  bool allow_duplicates = false;
};

namespace detail {

inline void require_two_points(const PointSet& points) {
  if (points.size() < 2) throw SizeError("at least two points are required");
}

inline void reject_duplicates(const PointSet& points) {
  const auto [a, b] = points.find_duplicate();
  if (a != points.size()) throw DuplicatePointError(a, b);
}

}  // namespace detail

// Unsorted nearest-neighbor distance of each point, in point order.
inline std::vector<double> nearest_neighbor_distances_unsorted(
    const PointSet& points, const NearestNeighborOptions& options = {}) {
  detail::require_two_points(points);
  if (!options.allow_duplicates) detail::reject_duplicates(points);
  const std::size_t k = points.size();
  std::vector<double> out(k, std::numeric_limits<double>::infinity());

  if (!points.is_euclidean() || k <= options.brute_force_limit) {
    if (points.is_euclidean()) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          const double sq = points.squared_distance(i, j);
          out[i] = std::min(out[i], sq);
          out[j] = std::min(out[j], sq);
        }
      for (double& v : out) v = std::sqrt(v);
    } else {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (i != j) out[i] = std::min(out[i], points.distance(i, j));
    }
    return out;
  }

  const KdTree tree(points);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::sqrt(tree.nearest_squared(i));
  return out;
}

// Descending nearest-neighbor distances of a set of distinct points.
inline DescendingDistances nn_distances(const PointSet& points,
                                        const NearestNeighborOptions& options = {}) {
  auto values = nearest_neighbor_distances_unsorted(points, options);
  const auto origin = options.allow_duplicates ? DistanceOrigin::raw
                                               : DistanceOrigin::nearest_neighbor;
  return DescendingDistances::sorted(std::move(values), origin);
}

// Default ceiling on point count for materialized pairwise distances.
inline constexpr std::size_t kDefaultPairwiseCap = 5000;

// All k(k-1)/2 interpoint distances, sorted descending.
inline DescendingDistances pairwise_distances(const PointSet& points,
                                              std::size_t cap = kDefaultPairwiseCap) {
  detail::require_two_points(points);
  const std::size_t k = points.size();
  if (k > cap)
    throw ConfigError("pairwise distances capped at " + std::to_string(cap) +
                      " points; got " + std::to_string(k));
  detail::reject_duplicates(points);
  std::vector<double> values;
  values.reserve(k * (k - 1) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) values.push_back(points.distance(i, j));
  return DescendingDistances::sorted(std::move(values), DistanceOrigin::pairwise);
}

// Gaps between consecutive values of 1-D data after sorting: the
// consecutive-points alternative to nearest-neighbor distances.
inline DescendingDistances consecutive_gaps(const PointSet& points) {
  detail::require_two_points(points);
  if (!points.is_euclidean() || points.dim() != 1)
    throw DomainError("consecutive gaps need one-dimensional coordinates");
  std::vector<double> sorted(points.coordinates().begin(), points.coordinates().end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> gaps;
  gaps.reserve(sorted.size() - 1);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap == 0.0) throw DuplicatePointError(i - 1, i);
    gaps.push_back(gap);
  }
  return DescendingDistances::sorted(std::move(gaps), DistanceOrigin::nearest_neighbor);
}

}  // namespace slide
