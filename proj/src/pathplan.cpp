#include "geoprint/pathplan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>

#include "geoprint/error.hpp"

namespace geoprint {

std::vector<GridPoint> bresenham(GridPoint a, GridPoint b) {
  const int dx = std::abs(b.x - a.x);
  const int dy = std::abs(b.y - a.y);
  const int sx = b.x >= a.x ? 1 : -1;
  const int sy = b.y >= a.y ? 1 : -1;
  const bool x_drives = dx >= dy;
  const int steps = x_drives ? dx : dy;
  const long long driving = x_drives ? dx : dy;
  const long long passive = x_drives ? dy : dx;

  std::vector<GridPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  GridPoint p = a;
  long long error = 2 * passive - driving;
  for (int k = 0;; ++k) {
    out.push_back(p);
    if (k == steps) break;
    if (error >= 0) {
      (x_drives ? p.y : p.x) += x_drives ? sy : sx;
      error -= 2 * driving;
    }
    error += 2 * passive;
    (x_drives ? p.x : p.y) += x_drives ? sx : sy;
  }
  return out;
}

std::string_view to_string(SegmentMode mode) {
  switch (mode) {
    case SegmentMode::Print: return "PRINT";
    case SegmentMode::Travel: return "TRAVEL";
    case SegmentMode::Break: return "BREAK";
  }
  return "?";
}

SegmentMode segment_mode_from_string(std::string_view text) {
  if (text == "PRINT") return SegmentMode::Print;
  if (text == "TRAVEL") return SegmentMode::Travel;
  if (text == "BREAK") return SegmentMode::Break;
  throw Error(ErrorKind::Parse, "unknown segment mode '" + std::string(text) + "'");
}

bool MotionPlan::has_print() const {
  return std::any_of(segments.begin(), segments.end(),
                     [](const MotionSegment& s) { return s.mode == SegmentMode::Print; });
}

namespace {

double path_length(const std::vector<GridPoint>& path) {
  double total = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) total += distance(to_vec(path[k - 1]), to_vec(path[k]));
  return total;
}

void append(MotionPlan& plan, MotionSegment segment) {
  switch (segment.mode) {
    case SegmentMode::Print: plan.print_length += segment.length; break;
    case SegmentMode::Travel: plan.travel_length += segment.length; break;
    case SegmentMode::Break: plan.break_length += segment.length; break;
  }
  plan.segments.push_back(segment);
}

}  // namespace

MotionPlan serpentine_plan(std::span<const PixelPoint> cell, int robot_id) {
  if (cell.empty()) throw Error(ErrorKind::InvalidArgument, "cannot plan an empty cell");
  std::map<int, std::vector<int>> rows;
  for (const PixelPoint& p : cell) rows[p.row].push_back(p.col);

  MotionPlan plan;
  plan.robot_id = robot_id;
  bool forward = true;
  std::optional<GridPoint> previous;
  for (auto& [row, cols] : rows) {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    if (!forward) std::reverse(cols.begin(), cols.end());

    const GridPoint row_start{cols.front(), row};
    if (previous) {
      append(plan, {to_vec(*previous), to_vec(row_start), SegmentMode::Break,
                    path_length(bresenham(*previous, row_start))});
    }
    std::size_t run_begin = 0;
    for (std::size_t k = 1; k <= cols.size(); ++k) {
      if (k < cols.size() && std::abs(cols[k] - cols[k - 1]) == 1) continue;
      const Vec2 a{static_cast<double>(cols[run_begin]), static_cast<double>(row)};
      const Vec2 b{static_cast<double>(cols[k - 1]), static_cast<double>(row)};
      append(plan, {a, b, SegmentMode::Print, std::abs(b.x - a.x)});
      if (k < cols.size()) {
        const Vec2 next{static_cast<double>(cols[k]), static_cast<double>(row)};
        append(plan, {b, next, SegmentMode::Travel, std::abs(next.x - b.x)});
      }
      run_begin = k;
    }
    previous = GridPoint{cols.back(), row};
    forward = !forward;
  }
  return plan;
}

void prepend_lead_in(MotionPlan& plan, Vec2 from) {
  if (plan.segments.empty()) return;
  const Vec2 to = plan.segments.front().start;
  const double length = distance(from, to);
  if (length == 0.0) return;
  plan.segments.insert(plan.segments.begin(), MotionSegment{from, to, SegmentMode::Travel, length});
  plan.travel_length += length;
}

std::vector<Vec2> segment_polyline(const MotionSegment& segment) {
  if (segment.mode != SegmentMode::Break) return {segment.start, segment.end};
  const GridPoint a{static_cast<int>(std::lround(segment.start.x)), static_cast<int>(std::lround(segment.start.y))};
  const GridPoint b{static_cast<int>(std::lround(segment.end.x)), static_cast<int>(std::lround(segment.end.y))};
  std::vector<Vec2> out;
  for (GridPoint p : bresenham(a, b)) out.push_back(to_vec(p));
  return out;
}

std::vector<PixelPoint> printed_pixels(const MotionPlan& plan) {
  std::vector<PixelPoint> out;
  for (const MotionSegment& s : plan.segments) {
    if (s.mode != SegmentMode::Print) continue;
    const int row = static_cast<int>(std::lround(s.start.y));
    const int a = static_cast<int>(std::lround(s.start.x));
    const int b = static_cast<int>(std::lround(s.end.x));
    const int step = b >= a ? 1 : -1;
    for (int c = a;; c += step) {
      out.push_back({c, row});
      if (c == b) break;
    }
  }
  return out;
}

double printing_time(const MotionPlan& plan, const RobotSpec& robot, const PhysicalScale& scale) {
  robot.validate();
  return plan.print_length * scale.pitch() / robot.v_print +
         (plan.travel_length + plan.break_length) * scale.pitch() / robot.v_travel;
}

double objective(std::span<const double> times) {
  if (times.empty()) throw Error(ErrorKind::InvalidArgument, "objective needs at least one time");
  double product = 1.0;
  double sum = 0.0;
  for (double t : times) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "objective requires every T_i > 0");
    product *= t;
    sum += t;
  }
  return product / sum;
}

CostReport make_cost_report(const Fleet& fleet, std::span<const MotionPlan> plans, const AssignmentResult& assignment,
                            const PhysicalScale& scale) {
  if (plans.size() != fleet.size()) throw Error(ErrorKind::InvalidArgument, "one plan per robot required");
  CostReport report;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const double approach = assignment.tf - assignment.t0;
    const double t = printing_time(plans[i], fleet[i], scale);
    report.approach_times.push_back(approach);
    report.print_times.push_back(t);
    report.makespan = std::max(report.makespan, approach + t);
    if (!plans[i].has_print()) report.no_print.push_back(i);
  }
  if (std::all_of(report.print_times.begin(), report.print_times.end(), [](double t) { return t > 0.0; })) {
    report.objective = objective(report.print_times);
  }
  return report;
}

}  // namespace geoprint
