// geoprint: split a binary image into balanced cells, assign robots, plan
// serpentine print paths and replay them.
//
// PBM convention: black (1) pixels are printed, white (0) pixels are blank.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geoprint/error.hpp"
#include "geoprint/pipeline.hpp"
#include "geoprint/suite.hpp"

namespace fs = std::filesystem;
using namespace geoprint;

namespace {

struct Flags {
  std::string config_path;
  std::string image;
  std::size_t n_robots = 0;
  std::uint64_t seed = 0;
  double pitch = 0.0;
  double v_print = 0.0;
  double v_travel = 0.0;
  double radius = 0.0;
  double dt = 0.0;
  std::string out;
  std::vector<std::string> starts;
  bool force = false;
};

void add_config_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--image", f.image, "input PBM (P1 or P4); black pixels are printed");
  cmd->add_option("--n-robots", f.n_robots, "number of robots / cells");
  cmd->add_option("--seed", f.seed, "RNG seed for seeding and robot placement");
  cmd->add_option("--pitch", f.pitch, "mm per pixel");
  cmd->add_option("--v-print", f.v_print, "printing speed, mm/s");
  cmd->add_option("--v-travel", f.v_travel, "travel speed, mm/s");
  cmd->add_option("--radius", f.radius, "robot radius, pixels");
  cmd->add_option("--dt", f.dt, "simulation time step, s");
  cmd->add_option("--start", f.starts, "robot start 'x,y' in pixels (repeat once per robot)");
  cmd->add_option("--out", f.out, "output directory");
}

Vec2 parse_start(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "--start expects 'x,y', got '" + text + "'");
  }
}

PipelineConfig resolve(const CLI::App* cmd, const Flags& f) {
  PipelineConfig c;
  if (!f.config_path.empty()) c = config_from_json(read_json(f.config_path));
  if (cmd->count("--image")) c.image = f.image;
  if (cmd->count("--n-robots")) c.n_robots = f.n_robots;
  if (cmd->count("--seed")) c.rng_seed = f.seed;
  if (cmd->count("--pitch")) c.pitch = f.pitch;
  if (cmd->count("--v-print")) c.v_print = f.v_print;
  if (cmd->count("--v-travel")) c.v_travel = f.v_travel;
  if (cmd->count("--radius")) c.radius = f.radius;
  if (cmd->count("--dt")) c.dt = f.dt;
  if (cmd->count("--out")) c.output_dir = f.out;
  if (!f.starts.empty()) {
    std::vector<Vec2> starts;
    for (const std::string& s : f.starts) starts.push_back(parse_start(s));
    c.starts = std::move(starts);
  }
  if (c.image.empty()) throw Error(ErrorKind::InvalidArgument, "no input image (--image or config 'image')");
  c.validate();
  return c;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
}

void require_clearance(const Fleet& fleet, bool force) {
  const ClearanceReport c = check_clearance(fleet);
  if (c.ok) return;
  const std::string msg = "robots " + std::to_string(c.i) + " and " + std::to_string(c.j) + " start " +
                          format_number(c.distance) + " apart; clearance needs more than " +
                          format_number(c.required);
  if (!force) throw Error(ErrorKind::Clearance, msg);
  std::cerr << "warning: " << msg << " (continuing because of --force)\n";
}

std::vector<std::string> read_cost_row(const fs::path& path, std::string& objective) {
  const std::string text = read_text(path);
  std::vector<std::string> times;
  std::size_t pos = text.find('\n') + 1;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw Error(ErrorKind::Parse, path.string() + ": bad row");
    if (line.compare(0, c1, "objective") == 0) {
      objective = line.substr(c1 + 1, c2 - c1 - 1);
    } else {
      times.push_back(line.substr(c2 + 1));
    }
  }
  return times;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced multi-robot raster printing planner"};
  app.require_subcommand(1);
  Flags f;

  std::string suite_dir = "suite";
  std::uint64_t suite_seed = 2020;
  auto* gen = app.add_subcommand("gen-suite", "write the synthetic flatness suite as PBM images");
  gen->add_option("--out", suite_dir, "output directory");
  gen->add_option("--seed", suite_seed, "suite seed");

  auto* cluster_cmd = app.add_subcommand("cluster", "partition the printable pixels into balanced cells");
  add_config_flags(cluster_cmd, f);

  std::string cells_path;
  auto* assign_cmd = app.add_subcommand("assign", "place robots and assign them to cells");
  add_config_flags(assign_cmd, f);
  assign_cmd->add_option("--cells", cells_path, "cells.json from 'cluster'")->required();
  assign_cmd->add_flag("--force", f.force, "continue despite a clearance violation");

  std::string fleet_path, assignment_path, plan_path;
  auto* plan_cmd = app.add_subcommand("plan", "serpentine plans and printing times");
  add_config_flags(plan_cmd, f);
  plan_cmd->add_option("--cells", cells_path, "cells.json")->required();
  plan_cmd->add_option("--fleet", fleet_path, "fleet.json")->required();
  plan_cmd->add_option("--assignment", assignment_path, "assignment.json")->required();

  auto* sim_cmd = app.add_subcommand("simulate", "replay approach and plans on a fixed clock");
  add_config_flags(sim_cmd, f);
  sim_cmd->add_option("--cells", cells_path, "cells.json")->required();
  sim_cmd->add_option("--fleet", fleet_path, "fleet.json")->required();
  sim_cmd->add_option("--assignment", assignment_path, "assignment.json")->required();
  sim_cmd->add_option("--plan", plan_path, "plan.csv")->required();
  sim_cmd->add_flag("--force", f.force, "run despite a clearance violation");

  auto* pipe_cmd = app.add_subcommand("pipeline", "run every stage and write the full artifact tree");
  add_config_flags(pipe_cmd, f);
  pipe_cmd->add_flag("--force", f.force, "continue despite a clearance violation");

  std::vector<std::string> run_dirs;
  std::string report_out = "flatness.csv";
  auto* report_cmd = app.add_subcommand("report", "tabulate T_i of several pipeline runs (one row per run)");
  report_cmd->add_option("--runs", run_dirs, "pipeline output directories")->required();
  report_cmd->add_option("--out", report_out, "output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (*gen) {
      for (const fs::path& p : gen_suite(suite_dir, suite_seed)) std::cout << p.string() << "\n";
      return 0;
    }
    if (*report_cmd) {
      std::string table;
      std::size_t width = 0;
      std::string rows;
      for (const std::string& dir : run_dirs) {
        std::string objective;
        const auto times = read_cost_row(fs::path(dir) / "cost.csv", objective);
        width = std::max(width, times.size());
        double lo = 0.0, hi = 0.0;
        std::string row = fs::path(dir).filename().string();
        for (std::size_t k = 0; k < times.size(); ++k) {
          const double t = std::stod(times[k]);
          lo = k == 0 ? t : std::min(lo, t);
          hi = k == 0 ? t : std::max(hi, t);
          row += "," + times[k];
        }
        row += "," + objective + "," + format_number(lo > 0.0 ? hi / lo : 0.0) + "\n";
        rows += row;
      }
      table = "run";
      for (std::size_t k = 0; k < width; ++k) table += ",T_" + std::to_string(k + 1);
      table += ",objective,max_min_ratio\n" + rows;
      write_text(report_out, table);
      std::cout << table;
      return 0;
    }

    const CLI::App* cmd = app.get_subcommands().front();
    const PipelineConfig config = resolve(cmd, f);
    const fs::path out = config.output_dir;

    if (*pipe_cmd) {
      PipelineOptions options;
      options.force = f.force;
      const PipelineResult r = run_pipeline(config, options);
      std::cout << "cells: " << r.cells.size() << ", iterations: " << r.cells.iterations_run
                << ", makespan: " << format_number(r.report.makespan) << " s, objective: "
                << format_number(r.report.objective.value_or(std::nan(""))) << "\n";
      return 0;
    }

    const BinaryRaster raster = load_pbm(config.image);
    const PhysicalScale scale(config.pitch);
    ensure_dir(out);
    write_json(out / "config.json", config_to_json(config));

    if (*cluster_cmd) {
      ClusterConfig cc;
      cc.n_cells = config.n_robots;
      cc.rng_seed = config.rng_seed;
      const GeodesicCells cells = cluster(raster, cc);
      write_json(out / "cells.json", cells_to_json(cells));
      write_text(out / "cells.ppm", render_cells(raster.width(), raster.height(), cells).to_ppm());
      return 0;
    }

    const GeodesicCells cells = cells_from_json(read_json(cells_path), raster);
    if (*assign_cmd) {
      const Fleet fleet = make_fleet(config, raster);
      require_clearance(fleet, f.force);
      const AssignmentResult result = assign_robots(fleet, cells.means, scale);
      write_json(out / "fleet.json", fleet_to_json(fleet));
      write_json(out / "assignment.json", assignment_to_json(result));
      return 0;
    }

    const Fleet fleet = fleet_from_json(read_json(fleet_path));
    const AssignmentResult assignment = assignment_from_json(read_json(assignment_path));
    if (assignment.perm.size() != fleet.size() || cells.size() != fleet.size()) {
      throw Error(ErrorKind::InvalidArgument, "fleet, cells and assignment sizes differ");
    }
    if (*plan_cmd) {
      const std::vector<MotionPlan> plans = build_plans(cells, fleet, assignment);
      write_text(out / "plan.csv", plans_to_csv(plans));
      write_text(out / "cost.csv", cost_report_to_csv(fleet, make_cost_report(fleet, plans, assignment, scale)));
      return 0;
    }

    if (*sim_cmd) {
      require_clearance(fleet, f.force);
      const std::vector<MotionPlan> plans = plans_from_csv(read_text(plan_path));
      if (plans.size() != fleet.size()) throw Error(ErrorKind::Parse, "plan.csv does not cover every robot");
      const std::vector<Trajectory> trajectories = make_trajectories(fleet, cells.means, assignment);
      const CostReport report = make_cost_report(fleet, plans, assignment, scale);
      SimConfig sim;
      sim.dt = config.dt;
      sim.frame_stride = auto_frame_stride(report.makespan, config.dt);
      sim.allow_clearance_violation = f.force;
      const fs::path frames = out / "frames";
      ensure_dir(frames);
      const SimOutcome outcome =
          simulate(fleet, trajectories, plans, raster, scale, sim, [&](std::size_t index, const std::string& ppm) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%05zu.ppm", index);
            write_text(frames / name, ppm);
          });
      write_json(out / "outcome.json", outcome_to_json(outcome));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return 0;
}
