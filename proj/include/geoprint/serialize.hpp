#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geoprint/assignment.hpp"
#include "geoprint/clustering.hpp"
#include "geoprint/pathplan.hpp"
#include "geoprint/simulate.hpp"

namespace geoprint {

using nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// {n, means: [[x,y]...], assignment: [cell per printable pixel, row-major], cost_history: [...]}
json cells_to_json(const GeodesicCells& cells);
/// Rebuilds the cells against the raster the assignment refers to.
GeodesicCells cells_from_json(const json& j, const BinaryRaster& raster);

/// {perm, total_sq_cost, clearance_ok, t0, tf}
json assignment_to_json(const AssignmentResult& result);
AssignmentResult assignment_from_json(const json& j);

/// {robots: [{id, radius, start: [x,y], v_print, v_travel}]}
json fleet_to_json(const Fleet& fleet);
Fleet fleet_from_json(const json& j);

/// Header robot_id,seq,mode,x0,y0,x1,y1,length_px; one row per segment.
std::string plans_to_csv(std::span<const MotionPlan> plans);
/// Plans in robot_id order of first appearance; per-mode totals are
/// re-accumulated from the segment lengths.
std::vector<MotionPlan> plans_from_csv(std::string_view text);

/// Header robot_id,approach_time,T_i; footer row "objective,<objective>,<makespan>"
/// (objective is "nan" when some T_i is zero).
std::string cost_report_to_csv(const Fleet& fleet, const CostReport& report);

/// {makespan, completion: [...], events: [{t, i, j, d}]}
json outcome_to_json(const SimOutcome& outcome);

std::string read_text(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace geoprint
