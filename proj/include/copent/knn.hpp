#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "copent/data.hpp"
#include "copent/parallel.hpp"

namespace copent {

enum class Norm { chebyshev, euclidean };
enum class Backend { naive, kdtree };

inline std::string_view to_string(Norm n) { return n == Norm::chebyshev ? "chebyshev" : "euclidean"; }
inline std::string_view to_string(Backend b) { return b == Backend::naive ? "naive" : "kdtree"; }

/// Distance between two points. Both search backends call this one function,
/// so their distances agree bit for bit.
inline double distance(std::span<const double> a, std::span<const double> b, Norm norm) {
  if (norm == Norm::chebyshev) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct NeighborResult {
  std::size_t query_index = 0;
  double kth_distance = 0.0;
  std::vector<std::size_t> neighbor_indices;  // nearest first
  std::vector<double> neighbor_distances;     // nondecreasing, parallel to indices

  friend bool operator==(const NeighborResult&, const NeighborResult&) = default;
};

namespace detail {

// (distance, index) with lexicographic order: distance ties go to the lower index.
struct Candidate {
  double dist;
  std::size_t index;
  friend bool operator<(const Candidate& a, const Candidate& b) {
    return a.dist < b.dist || (a.dist == b.dist && a.index < b.index);
  }
};

inline NeighborResult make_result(std::size_t query, std::vector<Candidate> best) {
  std::sort(best.begin(), best.end());
  NeighborResult r;
  r.query_index = query;
  r.neighbor_indices.reserve(best.size());
  r.neighbor_distances.reserve(best.size());
  for (const auto& c : best) {
    r.neighbor_indices.push_back(c.index);
    r.neighbor_distances.push_back(c.dist);
  }
  r.kth_distance = best.back().dist;
  return r;
}

inline void check_knn_args(const PointsView& points, std::size_t k) {
  if (points.rows == 0 || points.dim == 0) throw std::invalid_argument("knn: empty input");
  if (k == 0) throw std::invalid_argument("knn: k must be at least 1");
  if (k >= points.rows) {
    throw std::invalid_argument("knn: k=" + std::to_string(k) + " requires more than " +
                                std::to_string(k) + " points, got " + std::to_string(points.rows));
  }
  for (double v : points.values)
    if (!std::isfinite(v)) throw std::invalid_argument("knn: points must be finite");
}

}  // namespace detail

/// Exhaustive k-nearest-neighbor query for point `query` (excluded from its
/// own neighbors).
inline NeighborResult naive_neighbors(const PointsView& points, std::size_t query, std::size_t k,
                                      Norm norm) {
  std::vector<detail::Candidate> all;
  all.reserve(points.rows - 1);
  const auto q = points.row(query);
  for (std::size_t j = 0; j < points.rows; ++j) {
    if (j != query) all.push_back({distance(q, points.row(j), norm), j});
  }
  std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k - 1), all.end());
  all.resize(k);
  return detail::make_result(query, std::move(all));
}

/// Static KD-tree over a point set. Nodes split at the median of the
/// dimension with the widest spread; leaves hold at most `leaf_size` points.
/// The tree keeps a view of the points, which must outlive it.
class KdTree {
 public:
  explicit KdTree(const PointsView& points, std::size_t leaf_size = 16)
      : points_(points), leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
    order_.resize(points.rows);
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    if (!order_.empty()) build(0, order_.size());
  }

  /// k nearest neighbors of stored point `query`, itself excluded. Results
  /// match naive_neighbors exactly, including distance-tie order.
  NeighborResult neighbors(std::size_t query, std::size_t k, Norm norm) const {
    std::priority_queue<detail::Candidate> heap;  // max-heap: worst candidate on top
    search(0, points_.row(query), query, k, norm, heap);
    std::vector<detail::Candidate> best;
    best.reserve(k);
    while (!heap.empty()) {
      best.push_back(heap.top());
      heap.pop();
    }
    return detail::make_result(query, std::move(best));
  }

  std::size_t node_count() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    std::size_t begin, end;
    std::size_t left = 0, right = 0;  // 0 marks a leaf; the root is never a child
    std::size_t box;                  // offset into boxes_: dim lows then dim highs
  };

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t dim = points_.dim;
    const std::size_t id = nodes_.size();
    nodes_.push_back({begin, end, 0, 0, boxes_.size()});
    boxes_.resize(boxes_.size() + 2 * dim);
    double* lo = &boxes_[nodes_[id].box];
    double* hi = lo + dim;
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = hi[i] = points_(order_[begin], i);
    }
    for (std::size_t p = begin + 1; p < end; ++p) {
      for (std::size_t i = 0; i < dim; ++i) {
        const double v = points_(order_[p], i);
        lo[i] = std::min(lo[i], v);
        hi[i] = std::max(hi[i], v);
      }
    }
    if (end - begin <= leaf_size_) return id;

    std::size_t split_dim = 0;
    double widest = -1.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (hi[i] - lo[i] > widest) {
        widest = hi[i] - lo[i];
        split_dim = i;
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                       const double va = points_(a, split_dim), vb = points_(b, split_dim);
                       return va < vb || (va == vb && a < b);
                     });
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  // Lower bound on the distance from q to any point in the node's box. Uses
  // the same rounding path as distance(), so it never exceeds a true distance.
  double box_distance(const Node& node, std::span<const double> q, Norm norm) const {
    const std::size_t dim = points_.dim;
    const double* lo = &boxes_[node.box];
    const double* hi = lo + dim;
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      double gap = 0.0;
      if (q[i] < lo[i]) gap = lo[i] - q[i];
      else if (q[i] > hi[i]) gap = q[i] - hi[i];
      if (norm == Norm::chebyshev) acc = std::max(acc, gap);
      else acc += gap * gap;
    }
    return norm == Norm::chebyshev ? acc : std::sqrt(acc);
  }

  void search(std::size_t id, std::span<const double> q, std::size_t query, std::size_t k, Norm norm,
              std::priority_queue<detail::Candidate>& heap) const {
    const Node& node = nodes_[id];
    if (node.left == 0) {
      for (std::size_t p = node.begin; p < node.end; ++p) {
        const std::size_t j = order_[p];
        if (j == query) continue;
        const detail::Candidate c{distance(q, points_.row(j), norm), j};
        if (heap.size() < k) {
          heap.push(c);
        } else if (c < heap.top()) {
          heap.pop();
          heap.push(c);
        }
      }
      return;
    }
    const double dl = box_distance(nodes_[node.left], q, norm);
    const double dr = box_distance(nodes_[node.right], q, norm);
    const auto visit = [&](std::size_t child, double bound) {
      // Equal bound can still hide a lower-index tie, so only prune on strict excess.
      if (heap.size() == k && bound > heap.top().dist) return;
      search(child, q, query, k, norm, heap);
    };
    if (dl <= dr) {
      visit(node.left, dl);
      visit(node.right, dr);
    } else {
      visit(node.right, dr);
      visit(node.left, dl);
    }
  }

  PointsView points_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;
};

/// k nearest other points for every point, ties broken by ascending index.
inline std::vector<NeighborResult> kth_neighbor_distances(const PointsView& points, std::size_t k,
                                                          Norm norm = Norm::chebyshev,
                                                          Backend backend = Backend::kdtree,
                                                          std::size_t threads = 1) {
  detail::check_knn_args(points, k);
  std::vector<NeighborResult> out(points.rows);
  if (backend == Backend::naive) {
    parallel_for(points.rows, threads,
                 [&](std::size_t t) { out[t] = naive_neighbors(points, t, k, norm); });
  } else {
    const KdTree tree(points);
    parallel_for(points.rows, threads, [&](std::size_t t) { out[t] = tree.neighbors(t, k, norm); });
  }
  return out;
}

/// Number of other points within `radius` of points[center] on a line.
/// Strict counts |p - c| < radius, otherwise |p - c| <= radius.
inline std::size_t count_within(std::span<const double> points, std::size_t center, double radius,
                                bool strict) {
  const double c = points[center];
  std::size_t n = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == center) continue;
    const double d = std::abs(points[j] - c);
    if (strict ? d < radius : d <= radius) ++n;
  }
  return n;
}

/// count_within in O(log T) per query over a pre-sorted copy of a 1-D sample.
/// Binary searches use the same |p - c| predicate, so counts agree exactly.
class MarginalCounter {
 public:
  explicit MarginalCounter(std::span<const double> points)
      : points_(points.begin(), points.end()), sorted_(points_) {
    std::sort(sorted_.begin(), sorted_.end());
  }

  std::size_t count(std::size_t center, double radius, bool strict) const {
    const double c = points_[center];
    const auto inside = [&](double d) { return strict ? d < radius : d <= radius; };
    // Left of c the predicate flips from outside to inside; right of c, from inside to outside.
    const auto lo = std::partition_point(sorted_.begin(), sorted_.end(),
                                         [&](double v) { return v < c && !inside(c - v); });
    const auto hi = std::partition_point(sorted_.begin(), sorted_.end(),
                                         [&](double v) { return v < c || inside(v - c); });
    auto n = static_cast<std::size_t>(hi - lo);
    // The center itself is inside whenever radius > 0 (or radius == 0 non-strict).
    if (inside(0.0)) --n;
    return n;
  }

 private:
  std::vector<double> points_;
  std::vector<double> sorted_;
};

}  // namespace copent
