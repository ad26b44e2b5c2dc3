#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geoprint/assignment.hpp"
#include "geoprint/geometry.hpp"
#include "geoprint/raster.hpp"

namespace geoprint {

/// Integer line from a to b inclusive. The axis with the larger extent
/// drives (x on ties); every point advances it by exactly one, and the
/// passive axis steps when the ideal line reaches the half-cell mark.
std::vector<GridPoint> bresenham(GridPoint a, GridPoint b);

enum class SegmentMode { Print, Travel, Break };

std::string_view to_string(SegmentMode mode);
SegmentMode segment_mode_from_string(std::string_view text);

/// One straight piece of a robot's path. PRINT and in-row TRAVEL segments
/// are horizontal; BREAK segments follow the Bresenham path between rows
/// and their length is the summed step length of that path.
struct MotionSegment {
  Vec2 start;
  Vec2 end;
  SegmentMode mode = SegmentMode::Print;
  double length = 0.0;
};

struct MotionPlan {
  int robot_id = 0;
  std::vector<MotionSegment> segments;
  double print_length = 0.0;   // rho_1
  double travel_length = 0.0;  // rho_0
  double break_length = 0.0;   // rho_break

  bool has_print() const;
};

/// Boustrophedon raster of one cell: rows top to bottom, alternating
/// direction starting left-to-right, spanning only the first to the last
/// printable pixel of the row. Empty rows are skipped.
MotionPlan serpentine_plan(std::span<const PixelPoint> cell, int robot_id = 0);

/// Prepends a TRAVEL segment from `from` (e.g. the cell mean where the
/// approach ends) to the first point of the plan.
void prepend_lead_in(MotionPlan& plan, Vec2 from);

/// Waypoints the robot passes through on a segment.
std::vector<Vec2> segment_polyline(const MotionSegment& segment);

/// Pixels sprayed by the plan's PRINT segments, repeats included.
std::vector<PixelPoint> printed_pixels(const MotionPlan& plan);

/// T_i = rho_1 * pitch / v_print + (rho_0 + rho_break) * pitch / v_travel
double printing_time(const MotionPlan& plan, const RobotSpec& robot, const PhysicalScale& scale);

/// prod(T_i) / sum(T_i); every T_i must be positive.
double objective(std::span<const double> times);

struct CostReport {
  std::vector<double> approach_times;
  std::vector<double> print_times;
  /// Absent when some T_i is zero.
  std::optional<double> objective;
  double makespan = 0.0;
  /// Robots whose plan has no PRINT segment.
  std::vector<std::size_t> no_print;
};

/// plans[i] belongs to robot i of the fleet.
CostReport make_cost_report(const Fleet& fleet, std::span<const MotionPlan> plans, const AssignmentResult& assignment,
                            const PhysicalScale& scale);

}  // namespace geoprint
