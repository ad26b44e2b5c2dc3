#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geoprint/geometry.hpp"
#include "geoprint/raster.hpp"

namespace geoprint {

struct ClusterConfig {
  std::size_t n_cells = 1;
  std::uint64_t rng_seed = 0;
  std::size_t max_iterations = 100;
  /// Iteration stops once no mean moves by this much (pixels) or more.
  double mean_tolerance = 1e-6;

  void validate() const;
};

/// Hard membership: assignment[m] is the cell of point m. Equivalent to the
/// one-hot rows of the selection matrix W.
struct Membership {
  std::vector<std::size_t> assignment;
  std::size_t n_clusters = 0;

  std::vector<std::size_t> counts() const;
  friend bool operator==(const Membership&, const Membership&) = default;
};

/// Balanced partition of the printable pixels into N cells.
struct GeodesicCells {
  std::vector<std::vector<PixelPoint>> cells;
  std::vector<Vec2> means;
  Membership membership;
  /// Objective sum_m 1/2 |x_m - mu_(m)|^2 after each (assign, update) round.
  std::vector<double> cost_history;
  std::size_t iterations_run = 0;
  bool converged = false;

  std::size_t size() const noexcept { return cells.size(); }
};

/// k-means++ seeding: first mean uniform over the points, each further mean
/// drawn with probability proportional to the squared distance to the nearest
/// mean chosen so far. Deterministic in rng_seed.
std::vector<Vec2> seed_kmeanspp(std::span<const PixelPoint> points, std::size_t n, std::uint64_t rng_seed);

/// Exact solution of the balanced assignment step: minimizes
/// sum 1/2 |x_m - mu_n|^2 such that every cluster gets at least
/// floor(M/N) points. Ties go to the lowest cluster index, then the lowest
/// point index.
Membership assign_balanced(std::span<const PixelPoint> points, std::span<const Vec2> means);

/// Centroid of each cluster; an empty cluster keeps its previous mean.
std::vector<Vec2> update_means(std::span<const PixelPoint> points, const Membership& membership,
                               std::span<const Vec2> previous);

/// sum_m 1/2 |x_m - mu_assignment(m)|^2, summed in point order.
double clustering_cost(std::span<const PixelPoint> points, const Membership& membership,
                       std::span<const Vec2> means);

/// Full constrained k-means on the printable pixels of the raster.
GeodesicCells cluster(const BinaryRaster& raster, const ClusterConfig& config);
GeodesicCells cluster_points(std::span<const PixelPoint> points, const ClusterConfig& config);

/// Builds the cell lists from a membership (points keep their order).
GeodesicCells make_cells(std::span<const PixelPoint> points, Membership membership, std::vector<Vec2> means);

}  // namespace geoprint
