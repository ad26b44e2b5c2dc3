#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geoprint/assignment.hpp"
#include "geoprint/error.hpp"
#include "oracles.hpp"

using namespace geoprint;

namespace {

Fleet fleet_at(const std::vector<Vec2>& starts, double radius = 1.0) {
  std::vector<RobotSpec> robots;
  for (std::size_t i = 0; i < starts.size(); ++i) robots.push_back({static_cast<int>(i), radius, starts[i], 1.0, 2.0});
  return Fleet(robots);
}

}  // namespace

TEST(Fleet, Validation) {
  EXPECT_THROW(Fleet({{0, 1.0, {}, 1.0, 1.0}, {0, 1.0, {5, 5}, 1.0, 1.0}}), Error);  // duplicate id
  EXPECT_THROW(Fleet({{0, 1.0, {}, 1.0, 1.0}, {1, 2.0, {5, 5}, 1.0, 1.0}}), Error);  // radii differ
  EXPECT_THROW(Fleet({{0, 0.0, {}, 1.0, 1.0}}), Error);
  EXPECT_THROW(Fleet({{0, 1.0, {}, 2.0, 1.0}}), Error);  // v_print > v_travel
  EXPECT_THROW(Fleet({{0, 1.0, {}, 0.0, 1.0}}), Error);
}

TEST(CostMatrix, Entries) {
  EXPECT_EQ(cost_matrix(fleet_at({{0, 0}}), std::vector<Vec2>{{3, 4}})[0][0], 25.0);
  EXPECT_EQ(cost_matrix(fleet_at({{2, 2}}), std::vector<Vec2>{{2, 2}})[0][0], 0.0);
  const CostMatrix c = cost_matrix(fleet_at({{0, 0}, {10, 0}}), std::vector<Vec2>{{0, 0}, {10, 0}});
  EXPECT_EQ(c, (CostMatrix{{0, 100}, {100, 0}}));
  EXPECT_THROW(cost_matrix(fleet_at({{0, 0}}), std::vector<Vec2>{{0, 0}, {1, 1}}), Error);
}

TEST(Hungarian, SmallCases) {
  AssignmentResult r = solve_assignment({{0, 100}, {100, 0}});
  EXPECT_EQ(r.perm, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.total_sq_cost, 0.0);

  // Greedy would take (0,0) then (1,1) for 101; both permutations enumerated: 101 vs 4.
  r = solve_assignment({{1, 2}, {2, 100}});
  EXPECT_EQ(r.perm, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(r.total_sq_cost, 4.0);
}

TEST(Hungarian, LexicographicTieBreak) {
  const AssignmentResult r = solve_assignment({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  EXPECT_EQ(r.perm, (std::vector<std::size_t>{0, 1, 2}));
  const AssignmentResult s = solve_assignment({{5, 1, 1}, {1, 5, 1}, {1, 1, 5}});
  EXPECT_EQ(s.perm, (std::vector<std::size_t>{1, 2, 0}));
}

TEST(Hungarian, RejectsBadInput) {
  EXPECT_THROW(solve_assignment({{1, 2}, {3}}), Error);
  EXPECT_THROW(solve_assignment({{1, std::nan("")}, {1, 1}}), Error);
}

TEST(Hungarian, MatchesFactorialEnumeration) {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    CostMatrix cost(n, std::vector<double>(n));
    for (auto& row : cost) {
      for (double& v : row) v = trial % 2 == 0 ? static_cast<double>(gen() % 10) : std::uniform_real_distribution<>(0, 50)(gen);
    }
    const AssignmentResult r = solve_assignment(cost);
    std::vector<bool> used(n, false);
    for (std::size_t c : r.perm) {
      ASSERT_LT(c, n);
      EXPECT_FALSE(used[c]);
      used[c] = true;
    }
    EXPECT_NEAR(r.total_sq_cost, oracle::assignment_optimum(cost), 1e-9);
  }
}

TEST(Trajectory, Interpolation) {
  const Trajectory t{{0, 0}, {10, 0}, 0.0, 10.0};
  EXPECT_EQ(t.at(5.0), (Vec2{5.0, 0.0}));
  const Trajectory still{{3, 3}, {3, 3}, 0.0, 1.0};
  EXPECT_EQ(still.at(0.3), (Vec2{3.0, 3.0}));
}

TEST(Trajectory, BoundaryConditionsExact) {
  std::mt19937 gen(9);
  std::uniform_real_distribution<> u(-50, 50);
  std::vector<Vec2> starts, means;
  for (int i = 0; i < 6; ++i) {
    starts.push_back({u(gen) + 0.1 * i, u(gen)});
    means.push_back({u(gen), u(gen) + 1e-3 * i});
  }
  const Fleet fleet = fleet_at(starts, 0.01);
  const AssignmentResult r = assign_robots(fleet, means, PhysicalScale(0.7));
  const auto trajs = make_trajectories(fleet, means, r);
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    EXPECT_EQ(trajs[i].at(r.t0), starts[i]);
    EXPECT_EQ(trajs[i].at(r.tf), means[r.perm[i]]);
  }
  AssignmentResult bad = r;
  bad.tf = bad.t0;
  EXPECT_THROW(make_trajectories(fleet, means, bad), Error);
}

TEST(Trajectory, ApproachWindowUsesTravelSpeed) {
  const Fleet fleet = fleet_at({{0, 0}, {100, 0}});
  const std::vector<Vec2> means{{0, 10}, {100, 4}};
  const AssignmentResult r = assign_robots(fleet, means, PhysicalScale(0.5));
  // Longest approach is 10 px = 5 mm at 2 mm/s.
  EXPECT_DOUBLE_EQ(r.tf, 2.5);
  EXPECT_EQ(r.t0, 0.0);
}

TEST(Clearance, Threshold) {
  EXPECT_TRUE(check_clearance(fleet_at({{0, 0}, {3, 0}})).ok);
  const ClearanceReport bad = check_clearance(fleet_at({{0, 0}, {2.8, 0}, {40, 0}}));
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.i, 0u);
  EXPECT_EQ(bad.j, 1u);
  EXPECT_DOUBLE_EQ(bad.distance, 2.8);
  EXPECT_DOUBLE_EQ(bad.required, 2.0 * std::sqrt(2.0));
  EXPECT_TRUE(check_clearance(fleet_at({{0, 0}})).ok);
}

TEST(MinSeparation, Cases) {
  const std::vector<Trajectory> parallel{{{0, 0}, {10, 0}, 0, 1}, {{0, 5}, {10, 5}, 0, 1}};
  EXPECT_DOUBLE_EQ(min_separation(parallel, 11), 5.0);

  const std::vector<Trajectory> crossing{{{-1, 0}, {1, 0}, 0, 1}, {{0, -1}, {0, 1}, 0, 1}};
  EXPECT_GT(min_separation(crossing, 2), 1.0);
  EXPECT_NEAR(min_separation(crossing, 1001), 0.0, 1e-12);

  const std::vector<Trajectory> mismatched{{{0, 0}, {1, 0}, 0, 1}, {{0, 5}, {1, 5}, 0, 2}};
  EXPECT_THROW(min_separation(mismatched, 10), Error);
  EXPECT_THROW(min_separation(parallel, 1), Error);
}
