#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geoprint/assignment.hpp"
#include "geoprint/clustering.hpp"
#include "geoprint/error.hpp"
#include "geoprint/pathplan.hpp"
#include "geoprint/raster.hpp"
#include "geoprint/serialize.hpp"
#include "geoprint/simulate.hpp"

namespace geoprint {

struct PipelineConfig {
  std::string image;
  std::size_t n_robots = 5;
  std::uint64_t rng_seed = 1;
  double pitch = 1.0;     // mm per pixel
  double v_print = 10.0;  // mm/s
  double v_travel = 30.0; // mm/s
  double radius = 2.0;    // pixels
  /// Explicit robot starts in pixel units; seeded placement when absent.
  std::optional<std::vector<Vec2>> starts;
  double dt = 0.05;  // s
  std::string output_dir = "out";

  void validate() const;
};

json config_to_json(const PipelineConfig& config);
/// Unknown keys are rejected; missing keys keep their defaults.
PipelineConfig config_from_json(const json& j);

/// Seeded rejection sampling of robot starts in a band below the image,
/// accepting a position only if it clears every placed robot by more than
/// 2*sqrt(2)*r. Gives up after 10,000 rejected draws.
std::vector<Vec2> auto_starts(std::size_t n, double radius, int raster_width, int raster_height, std::uint64_t seed);

/// Fleet from the config (explicit or automatic starts).
Fleet make_fleet(const PipelineConfig& config, const BinaryRaster& raster);

/// Per-robot plans: the serpentine raster of the assigned cell, entered by a
/// TRAVEL lead-in from the cell mean. A blank cell yields an empty plan.
std::vector<MotionPlan> build_plans(const GeodesicCells& cells, const Fleet& fleet, const AssignmentResult& assignment);

/// Frame stride that keeps a run near `target_frames` frames.
std::size_t auto_frame_stride(double duration, double dt, std::size_t target_frames = 50);

struct PipelineResult {
  BinaryRaster raster;
  GeodesicCells cells;
  Fleet fleet;
  AssignmentResult assignment;
  std::vector<Trajectory> trajectories;
  std::vector<MotionPlan> plans;
  CostReport report;
  SimOutcome outcome;
};

struct PipelineOptions {
  bool force = false;         // run despite a clearance failure
  bool write_outputs = true;  // write the artifact tree under output_dir
  bool write_frames = true;
};

/// load -> cluster -> assign -> plan -> simulate -> report.
PipelineResult run_pipeline(const PipelineConfig& config, const PipelineOptions& options = {});

/// Same stages on an in-memory raster with precomputed cells (used for the
/// strip baseline).
PipelineResult run_with_cells(const PipelineConfig& config, const BinaryRaster& raster, GeodesicCells cells,
                              const PipelineOptions& options = {});

/// Exit status for an error: 2 infeasible, 3 clearance, 4 I/O, parse or
/// invalid input.
int exit_code(const Error& error);

}  // namespace geoprint
