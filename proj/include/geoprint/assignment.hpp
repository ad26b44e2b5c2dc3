#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geoprint/geometry.hpp"
#include "geoprint/raster.hpp"

namespace geoprint {

/// A circular robot. Lengths are in pixel units, speeds in mm/s (converted
/// through PhysicalScale where time is computed).
struct RobotSpec {
  int id = 0;
  double radius = 1.0;
  Vec2 start;
  double v_print = 1.0;
  double v_travel = 1.0;

  void validate() const;
};

/// Homogeneous team: unique ids and one common radius.
class Fleet {
 public:
  Fleet() = default;
  explicit Fleet(std::vector<RobotSpec> robots);

  const std::vector<RobotSpec>& robots() const noexcept { return robots_; }
  const RobotSpec& operator[](std::size_t i) const { return robots_[i]; }
  std::size_t size() const noexcept { return robots_.size(); }
  double radius() const noexcept { return robots_.empty() ? 0.0 : robots_.front().radius; }

 private:
  std::vector<RobotSpec> robots_;
};

using CostMatrix = std::vector<std::vector<double>>;

/// Robot i goes to cell perm[i].
struct AssignmentResult {
  std::vector<std::size_t> perm;
  double total_sq_cost = 0.0;
  bool clearance_ok = false;
  double t0 = 0.0;
  double tf = 0.0;
};

/// Constant-velocity straight line from `start` at t0 to `end` at tf.
struct Trajectory {
  Vec2 start;
  Vec2 end;
  double t0 = 0.0;
  double tf = 0.0;

  /// Position at time t, clamped to [t0, tf]. Exact at both ends.
  Vec2 at(double t) const;
  double length() const { return distance(start, end); }
};

struct ClearanceReport {
  bool ok = true;
  /// Closest pair of starts (meaningless for fewer than two robots).
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
  /// 2 * sqrt(2) * r
  double required = 0.0;
};

/// entry(i, j) = |x_i(0) - mu_j|^2
CostMatrix cost_matrix(const Fleet& fleet, std::span<const Vec2> means);

/// Optimal linear assignment (Hungarian method, O(N^3)). Among optimal
/// permutations the lexicographically smallest is returned. Only perm and
/// total_sq_cost are filled in.
AssignmentResult solve_assignment(const CostMatrix& cost);

/// Minimum total cost of an assignment, no tie-breaking.
double hungarian_min_cost(const CostMatrix& cost, std::vector<std::size_t>* perm = nullptr);

/// Common arrival time: the longest approach runs at full travel speed.
double approach_duration(const Fleet& fleet, std::span<const Vec2> means, std::span<const std::size_t> perm,
                         const PhysicalScale& scale);

/// Straight-line approach of every robot to its assigned cell mean over the
/// common window [t0, tf].
std::vector<Trajectory> make_trajectories(const Fleet& fleet, std::span<const Vec2> means,
                                          const AssignmentResult& result);

/// Sufficient condition for the optimal straight-line approaches to be
/// collision free: all pairwise start distances exceed 2*sqrt(2)*r.
ClearanceReport check_clearance(const Fleet& fleet);
ClearanceReport check_clearance(std::span<const Vec2> positions, double radius);

/// Smallest center distance between any two robots over `samples` evenly
/// spaced times of the shared window.
double min_separation(std::span<const Trajectory> trajectories, std::size_t samples);

/// cost_matrix + solve_assignment + clearance + approach window.
AssignmentResult assign_robots(const Fleet& fleet, std::span<const Vec2> means, const PhysicalScale& scale);

}  // namespace geoprint
