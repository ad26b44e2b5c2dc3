#include "geoprint/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "geoprint/error.hpp"
#include "geoprint/rng.hpp"

namespace geoprint {

void ClusterConfig::validate() const {
  if (n_cells < 1) throw Error(ErrorKind::InvalidArgument, "n_cells must be at least 1");
  if (max_iterations < 1) throw Error(ErrorKind::InvalidArgument, "max_iterations must be at least 1");
  if (!(mean_tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "mean_tolerance must be positive");
}

std::vector<std::size_t> Membership::counts() const {
  std::vector<std::size_t> out(n_clusters, 0);
  for (std::size_t a : assignment) ++out[a];
  return out;
}

namespace {

void require_feasible(std::size_t m, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "number of clusters must be at least 1");
  if (m == 0) throw Error(ErrorKind::EmptyImage, "no printable pixels");
  if (m < n) {
    throw Error(ErrorKind::Infeasible, "cannot split " + std::to_string(m) + " printable pixels into " +
                                           std::to_string(n) + " non-empty balanced cells");
  }
}

// Cost of moving one point between clusters; ordered by delta, then point index.
using MoveCandidate = std::pair<double, std::size_t>;
using MoveHeap = std::priority_queue<MoveCandidate, std::vector<MoveCandidate>, std::greater<>>;

// Lower-bounded transportation problem, solved by successive shortest paths.
//
// Start from the unconstrained optimum (every point at its nearest mean) and
// repeatedly route one unit of membership from a cluster holding more than
// floor(M/N) points to a cluster short of it. In the residual network a path
// a0 -> a1 -> ... -> ak moves one point out of each a_i into a_(i+1); the
// cost of edge (a, b) is min over points m in a of c(m,b) - c(m,a), kept in
// a lazily invalidated heap per ordered cluster pair. The starting flow has
// no negative residual cycle and each augmentation follows a shortest path,
// so the final membership is optimal and integral.
class BalancedAssigner {
 public:
  BalancedAssigner(std::span<const PixelPoint> points, std::span<const Vec2> means)
      : m_(points.size()), n_(means.size()), cost_(m_ * n_), heaps_(n_ * n_) {
    for (std::size_t m = 0; m < m_; ++m) {
      for (std::size_t c = 0; c < n_; ++c) {
        cost_[m * n_ + c] = 0.5 * squared_distance(points[m].pos(), means[c]);
      }
    }
    membership_.n_clusters = n_;
    membership_.assignment.resize(m_);
    counts_.assign(n_, 0);
    for (std::size_t m = 0; m < m_; ++m) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < n_; ++c) {
        if (cost(m, c) < cost(m, best)) best = c;
      }
      place(m, best);
    }
  }

  Membership solve() && {
    const std::size_t lower = m_ / n_;
    for (;;) {
      const auto deficit = std::find_if(counts_.begin(), counts_.end(), [&](std::size_t k) { return k < lower; });
      if (deficit == counts_.end()) break;
      augment(static_cast<std::size_t>(deficit - counts_.begin()), lower);
    }
    return std::move(membership_);
  }

 private:
  double cost(std::size_t m, std::size_t c) const { return cost_[m * n_ + c]; }

  void place(std::size_t m, std::size_t c) {
    membership_.assignment[m] = c;
    ++counts_[c];
    for (std::size_t to = 0; to < n_; ++to) {
      if (to != c) heaps_[c * n_ + to].emplace(cost(m, to) - cost(m, c), m);
    }
  }

  // Cheapest point currently in `from` to hand over to `to`, if any.
  const MoveCandidate* best_move(std::size_t from, std::size_t to) {
    MoveHeap& heap = heaps_[from * n_ + to];
    while (!heap.empty() && membership_.assignment[heap.top().second] != from) heap.pop();
    return heap.empty() ? nullptr : &heap.top();
  }

  void augment(std::size_t target, std::size_t lower) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<double> dist(n_, inf);
    std::vector<std::size_t> pred(n_, none);
    for (std::size_t c = 0; c < n_; ++c) {
      if (counts_[c] > lower) dist[c] = 0.0;
    }
    // Bellman-Ford over the N cluster nodes. The tolerance stops round-off
    // sized "improvements" from chasing zero-cost cycles.
    for (std::size_t round = 0; round < n_; ++round) {
      bool changed = false;
      for (std::size_t a = 0; a < n_; ++a) {
        if (dist[a] == inf) continue;
        for (std::size_t b = 0; b < n_; ++b) {
          if (a == b) continue;
          const MoveCandidate* move = best_move(a, b);
          if (move == nullptr) continue;
          const double candidate = dist[a] + move->first;
          if (dist[b] == inf || dist[b] - candidate > 1e-12 * (1.0 + std::abs(dist[b]))) {
            dist[b] = candidate;
            pred[b] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[target] == inf) {
      throw Error(ErrorKind::Infeasible, "balanced assignment has no augmenting path");
    }

    std::vector<std::size_t> path{target};
    while (pred[path.back()] != none) {
      path.push_back(pred[path.back()]);
      if (path.size() > n_) throw std::logic_error("cycle in balanced assignment predecessor graph");
    }
    std::reverse(path.begin(), path.end());

    std::vector<std::size_t> moved;
    moved.reserve(path.size() - 1);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      moved.push_back(best_move(path[k], path[k + 1])->second);
    }
    for (std::size_t k = 0; k < moved.size(); ++k) {
      --counts_[path[k]];
      place(moved[k], path[k + 1]);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<double> cost_;
  std::vector<MoveHeap> heaps_;
  Membership membership_;
  std::vector<std::size_t> counts_;
};

}  // namespace

std::vector<Vec2> seed_kmeanspp(std::span<const PixelPoint> points, std::size_t n, std::uint64_t rng_seed) {
  require_feasible(points.size(), n);
  SplitMix64 rng(rng_seed);
  std::vector<Vec2> means;
  means.reserve(n);
  std::vector<bool> chosen(points.size(), false);

  std::size_t first = rng.index(points.size());
  chosen[first] = true;
  means.push_back(points[first].pos());
  std::vector<double> nearest(points.size());
  for (std::size_t m = 0; m < points.size(); ++m) nearest[m] = squared_distance(points[m].pos(), means[0]);

  while (means.size() < n) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = points.size();
    if (total > 0.0) {
      const double target = rng.uniform01() * total;
      double running = 0.0;
      for (std::size_t m = 0; m < points.size(); ++m) {
        if (nearest[m] <= 0.0) continue;
        running += nearest[m];
        pick = m;
        if (running > target) break;
      }
    } else {
      // Only possible with duplicate positions; take the first unused point.
      pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
    }
    chosen[pick] = true;
    means.push_back(points[pick].pos());
    for (std::size_t m = 0; m < points.size(); ++m) {
      nearest[m] = std::min(nearest[m], squared_distance(points[m].pos(), means.back()));
    }
  }
  return means;
}

Membership assign_balanced(std::span<const PixelPoint> points, std::span<const Vec2> means) {
  require_feasible(points.size(), means.size());
  return BalancedAssigner(points, means).solve();
}

std::vector<Vec2> update_means(std::span<const PixelPoint> points, const Membership& membership,
                               std::span<const Vec2> previous) {
  const std::size_t n = membership.n_clusters;
  std::vector<Vec2> sums(n);
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t m = 0; m < points.size(); ++m) {
    const std::size_t c = membership.assignment[m];
    sums[c] = sums[c] + points[m].pos();
    ++counts[c];
  }
  std::vector<Vec2> means(n);
  for (std::size_t c = 0; c < n; ++c) {
    means[c] = counts[c] > 0 ? sums[c] * (1.0 / static_cast<double>(counts[c])) : previous[c];
  }
  return means;
}

double clustering_cost(std::span<const PixelPoint> points, const Membership& membership,
                       std::span<const Vec2> means) {
  double total = 0.0;
  for (std::size_t m = 0; m < points.size(); ++m) {
    total += 0.5 * squared_distance(points[m].pos(), means[membership.assignment[m]]);
  }
  return total;
}

GeodesicCells make_cells(std::span<const PixelPoint> points, Membership membership, std::vector<Vec2> means) {
  GeodesicCells result;
  result.cells.resize(membership.n_clusters);
  for (std::size_t m = 0; m < points.size(); ++m) result.cells[membership.assignment[m]].push_back(points[m]);
  result.means = std::move(means);
  result.membership = std::move(membership);
  return result;
}

GeodesicCells cluster_points(std::span<const PixelPoint> points, const ClusterConfig& config) {
  config.validate();
  require_feasible(points.size(), config.n_cells);

  std::vector<Vec2> means = seed_kmeanspp(points, config.n_cells, config.rng_seed);
  Membership membership;
  std::vector<double> history;
  bool converged = false;
  std::size_t iteration = 0;

  while (iteration < config.max_iterations) {
    ++iteration;
    Membership candidate = assign_balanced(points, means);
    // Keep the previous membership unless the new one is strictly cheaper,
    // so equal-cost alternatives cannot make the means oscillate.
    if (membership.assignment.empty() ||
        clustering_cost(points, candidate, means) < clustering_cost(points, membership, means)) {
      membership = std::move(candidate);
    }

    std::vector<Vec2> next = update_means(points, membership, means);
    if (clustering_cost(points, membership, next) > clustering_cost(points, membership, means)) next = means;

    double shift = 0.0;
    for (std::size_t c = 0; c < means.size(); ++c) shift = std::max(shift, distance(next[c], means[c]));
    means = std::move(next);
    history.push_back(clustering_cost(points, membership, means));
    if (shift < config.mean_tolerance) {
      converged = true;
      break;
    }
  }

  GeodesicCells result = make_cells(points, std::move(membership), std::move(means));
  result.cost_history = std::move(history);
  result.iterations_run = iteration;
  result.converged = converged;
  return result;
}

GeodesicCells cluster(const BinaryRaster& raster, const ClusterConfig& config) {
  const std::vector<PixelPoint> points = printable_set(raster);
  if (points.empty()) throw Error(ErrorKind::EmptyImage, "image has no printable pixels");
  return cluster_points(points, config);
}

}  // namespace geoprint
