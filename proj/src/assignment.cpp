#include "geoprint/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "geoprint/error.hpp"

namespace geoprint {

void RobotSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "robot " + std::to_string(id) + ": radius must be positive");
  }
  if (!(v_print > 0.0) || !(v_travel >= v_print) || !std::isfinite(v_travel)) {
    throw Error(ErrorKind::InvalidArgument,
                "robot " + std::to_string(id) + ": speeds must satisfy 0 < v_print <= v_travel");
  }
  if (!std::isfinite(start.x) || !std::isfinite(start.y)) {
    throw Error(ErrorKind::InvalidArgument, "robot " + std::to_string(id) + ": start must be finite");
  }
}

Fleet::Fleet(std::vector<RobotSpec> robots) : robots_(std::move(robots)) {
  std::set<int> ids;
  for (const RobotSpec& r : robots_) {
    r.validate();
    if (!ids.insert(r.id).second) throw Error(ErrorKind::InvalidArgument, "duplicate robot id " + std::to_string(r.id));
    if (r.radius != robots_.front().radius) {
      throw Error(ErrorKind::InvalidArgument, "heterogeneous robot radii are not supported");
    }
  }
}

Vec2 Trajectory::at(double t) const {
  if (t <= t0) return start;
  if (t >= tf) return end;
  const double s = (t - t0) / (tf - t0);
  return start + s * (end - start);
}

CostMatrix cost_matrix(const Fleet& fleet, std::span<const Vec2> means) {
  if (fleet.size() != means.size()) {
    throw Error(ErrorKind::InvalidArgument, "fleet has " + std::to_string(fleet.size()) + " robots but there are " +
                                                std::to_string(means.size()) + " cells");
  }
  CostMatrix cost(fleet.size(), std::vector<double>(means.size()));
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    for (std::size_t j = 0; j < means.size(); ++j) cost[i][j] = squared_distance(fleet[i].start, means[j]);
  }
  return cost;
}

namespace {

void validate_matrix(const CostMatrix& cost) {
  for (const auto& row : cost) {
    if (row.size() != cost.size()) throw Error(ErrorKind::InvalidArgument, "cost matrix must be square");
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "cost matrix entries must be finite");
    }
  }
}

// Shortest augmenting path formulation with row/column potentials. Indices
// are 1-based internally; column 0 is the virtual start.
double hungarian(const CostMatrix& a, std::vector<std::size_t>& row_to_col) {
  const std::size_t n = a.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += a[i][row_to_col[i]];
  return total;
}

CostMatrix submatrix(const CostMatrix& cost, std::size_t first_row, const std::vector<std::size_t>& cols) {
  CostMatrix sub;
  sub.reserve(cost.size() - first_row);
  for (std::size_t i = first_row; i < cost.size(); ++i) {
    std::vector<double> row;
    row.reserve(cols.size());
    for (std::size_t j : cols) row.push_back(cost[i][j]);
    sub.push_back(std::move(row));
  }
  return sub;
}

}  // namespace

double hungarian_min_cost(const CostMatrix& cost, std::vector<std::size_t>* perm) {
  validate_matrix(cost);
  std::vector<std::size_t> assignment;
  const double total = hungarian(cost, assignment);
  if (perm != nullptr) *perm = std::move(assignment);
  return total;
}

AssignmentResult solve_assignment(const CostMatrix& cost) {
  validate_matrix(cost);
  const std::size_t n = cost.size();
  std::vector<std::size_t> scratch;
  const double optimum = hungarian(cost, scratch);
  const double tolerance = 1e-9 * std::max(1.0, std::abs(optimum));

  // Fix rows in order, each to the smallest column that still admits an
  // optimal completion.
  AssignmentResult result;
  result.perm.resize(n);
  std::vector<std::size_t> free_cols(n);
  for (std::size_t j = 0; j < n; ++j) free_cols[j] = j;
  double fixed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (std::size_t k = 0; k < free_cols.size() && !placed; ++k) {
      const std::size_t j = free_cols[k];
      std::vector<std::size_t> rest = free_cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      const double completion = rest.empty() ? 0.0 : hungarian(submatrix(cost, i + 1, rest), scratch);
      if (fixed + cost[i][j] + completion <= optimum + tolerance) {
        result.perm[i] = j;
        fixed += cost[i][j];
        free_cols = std::move(rest);
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("lexicographic assignment lost optimality");
  }
  result.total_sq_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) result.total_sq_cost += cost[i][result.perm[i]];
  return result;
}

double approach_duration(const Fleet& fleet, std::span<const Vec2> means, std::span<const std::size_t> perm,
                         const PhysicalScale& scale) {
  double tf = 0.0;
  double one_pixel = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    tf = std::max(tf, distance(fleet[i].start, means[perm[i]]) * scale.pitch() / fleet[i].v_travel);
    one_pixel = std::min(one_pixel, scale.pitch() / fleet[i].v_travel);
  }
  // Everyone already in place: keep a non-empty window of one pixel of travel.
  return tf > 0.0 ? tf : one_pixel;
}

std::vector<Trajectory> make_trajectories(const Fleet& fleet, std::span<const Vec2> means,
                                          const AssignmentResult& result) {
  if (!(result.tf > result.t0)) throw Error(ErrorKind::InvalidArgument, "trajectory window requires tf > t0");
  if (result.perm.size() != fleet.size() || means.size() != fleet.size()) {
    throw Error(ErrorKind::InvalidArgument, "assignment does not match fleet and cells");
  }
  std::vector<Trajectory> out;
  out.reserve(fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    out.push_back({fleet[i].start, means[result.perm[i]], result.t0, result.tf});
  }
  return out;
}

ClearanceReport check_clearance(std::span<const Vec2> positions, double radius) {
  ClearanceReport report;
  report.required = 2.0 * std::sqrt(2.0) * radius;
  report.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double d = distance(positions[i], positions[j]);
      if (d < report.distance) {
        report.distance = d;
        report.i = i;
        report.j = j;
      }
    }
  }
  report.ok = report.distance > report.required;
  return report;
}

ClearanceReport check_clearance(const Fleet& fleet) {
  std::vector<Vec2> starts;
  starts.reserve(fleet.size());
  for (const RobotSpec& r : fleet.robots()) starts.push_back(r.start);
  return check_clearance(starts, fleet.radius());
}

double min_separation(std::span<const Trajectory> trajectories, std::size_t samples) {
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "min_separation needs at least 2 samples");
  if (trajectories.empty()) return std::numeric_limits<double>::infinity();
  const double t0 = trajectories.front().t0;
  const double tf = trajectories.front().tf;
  for (const Trajectory& tr : trajectories) {
    if (tr.t0 != t0 || tr.tf != tf) throw Error(ErrorKind::InvalidArgument, "trajectories do not share a time window");
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<Vec2> pos(trajectories.size());
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = t0 + (tf - t0) * static_cast<double>(k) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < trajectories.size(); ++i) pos[i] = trajectories[i].at(t);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = i + 1; j < pos.size(); ++j) best = std::min(best, distance(pos[i], pos[j]));
    }
  }
  return best;
}

AssignmentResult assign_robots(const Fleet& fleet, std::span<const Vec2> means, const PhysicalScale& scale) {
  AssignmentResult result = solve_assignment(cost_matrix(fleet, means));
  result.clearance_ok = check_clearance(fleet).ok;
  result.t0 = 0.0;
  result.tf = approach_duration(fleet, means, result.perm, scale);
  return result;
}

}  // namespace geoprint
