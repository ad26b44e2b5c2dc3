#include "geoprint/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "geoprint/error.hpp"

namespace geoprint {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "expected [x, y] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

template <typename Fn>
auto parse_guard(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid ") + what + ": " + e.what());
  }
}

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto result = std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw Error(ErrorKind::Parse, "plan CSV line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= line.size(); ++k) {
    if (k == line.size() || line[k] == ',') {
      fields.push_back(line.substr(start, k - start));
      start = k + 1;
    }
  }
  return fields;
}

}  // namespace

json cells_to_json(const GeodesicCells& cells) {
  json means = json::array();
  for (const Vec2& m : cells.means) means.push_back(vec_to_json(m));
  return json{{"n", cells.size()},
              {"means", means},
              {"assignment", cells.membership.assignment},
              {"cost_history", cells.cost_history}};
}

GeodesicCells cells_from_json(const json& j, const BinaryRaster& raster) {
  return parse_guard("cells JSON", [&] {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Vec2> means;
    for (const json& m : j.at("means")) means.push_back(vec_from_json(m));
    if (means.size() != n) throw Error(ErrorKind::Parse, "cells JSON: means count differs from n");
    Membership membership{j.at("assignment").get<std::vector<std::size_t>>(), n};
    const std::vector<PixelPoint> points = printable_set(raster);
    if (membership.assignment.size() != points.size()) {
      throw Error(ErrorKind::Parse, "cells JSON: assignment length does not match the image's printable pixels");
    }
    for (std::size_t a : membership.assignment) {
      if (a >= n) throw Error(ErrorKind::Parse, "cells JSON: cell index out of range");
    }
    GeodesicCells cells = make_cells(points, std::move(membership), std::move(means));
    cells.cost_history = j.value("cost_history", std::vector<double>{});
    cells.iterations_run = cells.cost_history.size();
    return cells;
  });
}

json assignment_to_json(const AssignmentResult& result) {
  return json{{"perm", result.perm},
              {"total_sq_cost", result.total_sq_cost},
              {"clearance_ok", result.clearance_ok},
              {"t0", result.t0},
              {"tf", result.tf}};
}

AssignmentResult assignment_from_json(const json& j) {
  return parse_guard("assignment JSON", [&] {
    AssignmentResult r;
    r.perm = j.at("perm").get<std::vector<std::size_t>>();
    r.total_sq_cost = j.at("total_sq_cost").get<double>();
    r.clearance_ok = j.at("clearance_ok").get<bool>();
    r.t0 = j.at("t0").get<double>();
    r.tf = j.at("tf").get<double>();
    std::vector<bool> seen(r.perm.size(), false);
    for (std::size_t c : r.perm) {
      if (c >= r.perm.size() || seen[c]) throw Error(ErrorKind::Parse, "assignment JSON: perm is not a permutation");
      seen[c] = true;
    }
    return r;
  });
}

json fleet_to_json(const Fleet& fleet) {
  json robots = json::array();
  for (const RobotSpec& r : fleet.robots()) {
    robots.push_back({{"id", r.id},
                      {"radius", r.radius},
                      {"start", vec_to_json(r.start)},
                      {"v_print", r.v_print},
                      {"v_travel", r.v_travel}});
  }
  return json{{"robots", robots}};
}

Fleet fleet_from_json(const json& j) {
  return parse_guard("fleet JSON", [&] {
    std::vector<RobotSpec> robots;
    for (const json& r : j.at("robots")) {
      robots.push_back({r.at("id").get<int>(), r.at("radius").get<double>(), vec_from_json(r.at("start")),
                        r.at("v_print").get<double>(), r.at("v_travel").get<double>()});
    }
    return Fleet(std::move(robots));
  });
}

std::string plans_to_csv(std::span<const MotionPlan> plans) {
  std::string out = "robot_id,seq,mode,x0,y0,x1,y1,length_px\n";
  for (const MotionPlan& plan : plans) {
    for (std::size_t k = 0; k < plan.segments.size(); ++k) {
      const MotionSegment& s = plan.segments[k];
      out += std::to_string(plan.robot_id) + ',' + std::to_string(k) + ',' + std::string(to_string(s.mode)) + ',' +
             format_number(s.start.x) + ',' + format_number(s.start.y) + ',' + format_number(s.end.x) + ',' +
             format_number(s.end.y) + ',' + format_number(s.length) + '\n';
    }
  }
  return out;
}

std::vector<MotionPlan> plans_from_csv(std::string_view text) {
  std::vector<MotionPlan> plans;
  std::map<int, std::size_t> slot;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1 || line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw Error(ErrorKind::Parse, "plan CSV line " + std::to_string(line_no) + ": expected 8 fields");
    const int id = static_cast<int>(parse_double(f[0], line_no));
    auto [it, inserted] = slot.try_emplace(id, plans.size());
    if (inserted) {
      plans.emplace_back();
      plans.back().robot_id = id;
    }
    MotionPlan& plan = plans[it->second];
    MotionSegment s{{parse_double(f[3], line_no), parse_double(f[4], line_no)},
                    {parse_double(f[5], line_no), parse_double(f[6], line_no)},
                    segment_mode_from_string(f[2]),
                    parse_double(f[7], line_no)};
    switch (s.mode) {
      case SegmentMode::Print: plan.print_length += s.length; break;
      case SegmentMode::Travel: plan.travel_length += s.length; break;
      case SegmentMode::Break: plan.break_length += s.length; break;
    }
    plan.segments.push_back(s);
  }
  return plans;
}

std::string cost_report_to_csv(const Fleet& fleet, const CostReport& report) {
  std::string out = "robot_id,approach_time,T_i\n";
  for (std::size_t i = 0; i < report.print_times.size(); ++i) {
    out += std::to_string(fleet[i].id) + ',' + format_number(report.approach_times[i]) + ',' +
           format_number(report.print_times[i]) + '\n';
  }
  out += "objective," + format_number(report.objective.value_or(std::nan(""))) + ',' +
         format_number(report.makespan) + '\n';
  return out;
}

json outcome_to_json(const SimOutcome& outcome) {
  json events = json::array();
  for (const ProximityEvent& e : outcome.events) events.push_back({{"t", e.t}, {"i", e.i}, {"j", e.j}, {"d", e.d}});
  return json{{"makespan", outcome.makespan}, {"completion", outcome.completion}, {"events", events}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace geoprint
