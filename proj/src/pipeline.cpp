#include "geoprint/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "geoprint/error.hpp"
#include "geoprint/rng.hpp"

namespace geoprint {

void PipelineConfig::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive");
  };
  if (n_robots < 1) throw Error(ErrorKind::InvalidArgument, "n_robots must be at least 1");
  positive(pitch, "pitch");
  positive(v_print, "v_print");
  positive(v_travel, "v_travel");
  positive(radius, "radius");
  positive(dt, "dt");
  if (v_print > v_travel) throw Error(ErrorKind::InvalidArgument, "v_print must not exceed v_travel");
  if (starts && starts->size() != n_robots) {
    throw Error(ErrorKind::InvalidArgument, "starts lists " + std::to_string(starts->size()) + " positions for " +
                                                std::to_string(n_robots) + " robots");
  }
}

json config_to_json(const PipelineConfig& config) {
  json j{{"image", config.image},   {"n_robots", config.n_robots}, {"rng_seed", config.rng_seed},
         {"pitch", config.pitch},   {"v_print", config.v_print},   {"v_travel", config.v_travel},
         {"radius", config.radius}, {"dt", config.dt},             {"output_dir", config.output_dir}};
  if (config.starts) {
    json starts = json::array();
    for (const Vec2& s : *config.starts) starts.push_back({s.x, s.y});
    j["starts"] = starts;
  } else {
    j["starts"] = nullptr;
  }
  return j;
}

PipelineConfig config_from_json(const json& j) {
  static const std::set<std::string> known{"image", "n_robots", "rng_seed", "pitch",  "v_print",   "v_travel",
                                           "radius", "starts",  "dt",       "output_dir"};
  if (!j.is_object()) throw Error(ErrorKind::Parse, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorKind::Parse, "unknown config field '" + key + "'");
  }
  PipelineConfig c;
  try {
    c.image = j.value("image", c.image);
    c.n_robots = j.value("n_robots", c.n_robots);
    c.rng_seed = j.value("rng_seed", c.rng_seed);
    c.pitch = j.value("pitch", c.pitch);
    c.v_print = j.value("v_print", c.v_print);
    c.v_travel = j.value("v_travel", c.v_travel);
    c.radius = j.value("radius", c.radius);
    c.dt = j.value("dt", c.dt);
    c.output_dir = j.value("output_dir", c.output_dir);
    if (j.contains("starts") && !j.at("starts").is_null()) {
      std::vector<Vec2> starts;
      for (const json& s : j.at("starts")) {
        if (!s.is_array() || s.size() != 2) throw Error(ErrorKind::Parse, "starts entries must be [x, y]");
        starts.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
      }
      c.starts = std::move(starts);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid config: ") + e.what());
  }
  return c;
}

std::vector<Vec2> auto_starts(std::size_t n, double radius, int raster_width, int raster_height, std::uint64_t seed) {
  constexpr int kMaxAttempts = 10'000;
  // Decorrelate from the clustering stream, which uses the same seed.
  SplitMix64 rng(seed ^ 0x5157A27DULL);
  const double clearance = 2.0 * std::sqrt(2.0) * radius;
  const double top = raster_height - 1 + 2.0 * radius;
  const double band = std::max(raster_height / 4.0, 8.0 * radius);
  const double right = std::max(raster_width - 1.0, 0.0);

  std::vector<Vec2> starts;
  int attempts = 0;
  while (starts.size() < n) {
    if (attempts++ >= kMaxAttempts) {
      throw Error(ErrorKind::Clearance, "could not place " + std::to_string(n) + " robots with clearance " +
                                            std::to_string(clearance) + " after " + std::to_string(kMaxAttempts) +
                                            " attempts");
    }
    const Vec2 candidate{rng.uniform(0.0, right), rng.uniform(top, top + band)};
    bool clear = true;
    for (const Vec2& s : starts) clear = clear && distance(s, candidate) > clearance;
    if (clear) starts.push_back(candidate);
  }
  return starts;
}

Fleet make_fleet(const PipelineConfig& config, const BinaryRaster& raster) {
  const std::vector<Vec2> starts =
      config.starts ? *config.starts
                    : auto_starts(config.n_robots, config.radius, raster.width(), raster.height(), config.rng_seed);
  std::vector<RobotSpec> robots;
  for (std::size_t i = 0; i < config.n_robots; ++i) {
    robots.push_back({static_cast<int>(i), config.radius, starts[i], config.v_print, config.v_travel});
  }
  return Fleet(std::move(robots));
}

std::vector<MotionPlan> build_plans(const GeodesicCells& cells, const Fleet& fleet, const AssignmentResult& assignment) {
  std::vector<MotionPlan> plans;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const std::size_t cell = assignment.perm[i];
    if (cells.cells[cell].empty()) {
      MotionPlan blank;
      blank.robot_id = fleet[i].id;
      plans.push_back(std::move(blank));
      continue;
    }
    MotionPlan plan = serpentine_plan(cells.cells[cell], fleet[i].id);
    prepend_lead_in(plan, cells.means[cell]);
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::size_t auto_frame_stride(double duration, double dt, std::size_t target_frames) {
  const double ticks = std::ceil(duration / dt);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ticks / static_cast<double>(target_frames))));
}

namespace {

void write_outputs(const PipelineConfig& config, const PipelineResult& r) {
  const std::filesystem::path out = config.output_dir;
  write_json(out / "config.json", config_to_json(config));
  write_json(out / "cells.json", cells_to_json(r.cells));
  write_text(out / "cells.ppm", render_cells(r.raster.width(), r.raster.height(), r.cells).to_ppm());
  write_json(out / "fleet.json", fleet_to_json(r.fleet));
  write_json(out / "assignment.json", assignment_to_json(r.assignment));
  write_text(out / "plan.csv", plans_to_csv(r.plans));
  write_text(out / "cost.csv", cost_report_to_csv(r.fleet, r.report));
  write_json(out / "outcome.json", outcome_to_json(r.outcome));
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

PipelineResult run_with_cells(const PipelineConfig& config, const BinaryRaster& raster, GeodesicCells cells,
                              const PipelineOptions& options) {
  config.validate();
  const PhysicalScale scale(config.pitch);
  PipelineResult r;
  r.raster = raster;
  r.cells = std::move(cells);
  r.fleet = make_fleet(config, raster);

  const ClearanceReport clearance = check_clearance(r.fleet);
  if (!clearance.ok && !options.force) {
    throw Error(ErrorKind::Clearance, "robots " + std::to_string(clearance.i) + " and " + std::to_string(clearance.j) +
                                          " start " + format_number(clearance.distance) +
                                          " apart; clearance requires more than " + format_number(clearance.required));
  }
  r.assignment = assign_robots(r.fleet, r.cells.means, scale);
  r.trajectories = make_trajectories(r.fleet, r.cells.means, r.assignment);
  r.plans = build_plans(r.cells, r.fleet, r.assignment);
  r.report = make_cost_report(r.fleet, r.plans, r.assignment, scale);

  SimConfig sim;
  sim.dt = config.dt;
  sim.frame_stride = auto_frame_stride(r.report.makespan, config.dt);
  sim.allow_clearance_violation = options.force;

  FrameSink sink;
  const std::filesystem::path frames_dir = std::filesystem::path(config.output_dir) / "frames";
  if (options.write_outputs) {
    prepare_dir(config.output_dir);
    if (options.write_frames) {
      prepare_dir(frames_dir);
      sink = [&](std::size_t index, const std::string& ppm) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05zu.ppm", index);
        write_text(frames_dir / name, ppm);
      };
    }
  }
  r.outcome = simulate(r.fleet, r.trajectories, r.plans, raster, scale, sim, sink);
  if (options.write_outputs) write_outputs(config, r);
  return r;
}

PipelineResult run_pipeline(const PipelineConfig& config, const PipelineOptions& options) {
  config.validate();
  const BinaryRaster raster = load_pbm(config.image);
  ClusterConfig cluster_config;
  cluster_config.n_cells = config.n_robots;
  cluster_config.rng_seed = config.rng_seed;
  GeodesicCells cells = cluster(raster, cluster_config);
  return run_with_cells(config, raster, std::move(cells), options);
}

int exit_code(const Error& error) {
  switch (error.kind()) {
    case ErrorKind::Infeasible:
    case ErrorKind::EmptyImage: return 2;
    case ErrorKind::Clearance: return 3;
    case ErrorKind::Parse:
    case ErrorKind::Io:
    case ErrorKind::InvalidArgument: return 4;
  }
  return 4;
}

}  // namespace geoprint
