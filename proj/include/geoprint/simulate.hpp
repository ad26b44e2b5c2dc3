#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoprint/assignment.hpp"
#include "geoprint/pathplan.hpp"
#include "geoprint/raster.hpp"
#include "geoprint/render.hpp"

namespace geoprint {

struct SimConfig {
  double dt = 0.05;
  std::size_t frame_stride = 1;
  /// Defaults to 2r (robots touching).
  std::optional<double> proximity_threshold;
  /// Run even if the starts violate the clearance bound.
  bool allow_clearance_violation = false;

  void validate() const;
};

/// A contiguous interval during which two robot centers were closer than the
/// threshold. `t` and `d` are the time and value of the closest approach.
struct ProximityEvent {
  double t = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
};

struct StateSample {
  double t = 0.0;
  std::vector<Vec2> positions;
};

struct SimOutcome {
  double makespan = 0.0;
  std::vector<double> completion;
  std::size_t frames_emitted = 0;
  std::vector<ProximityEvent> events;
  std::size_t printed_count = 0;
  /// Sprays that hit an already printed pixel.
  std::size_t overprinted = 0;
  /// Printed-pixel count at each frame instant.
  std::vector<std::size_t> frame_printed;
  std::vector<double> frame_times;
};

/// Canvas placement: covers [origin_x, origin_x + width) x [origin_y, ...).
struct FrameLayout {
  int origin_x = 0;
  int origin_y = 0;
  int width = 0;
  int height = 0;
};

/// Everything a frame shows.
struct WorldState {
  int raster_width = 0;
  int raster_height = 0;
  FrameLayout layout;
  std::vector<std::uint8_t> printed;  // raster-sized mask
  std::vector<Vec2> robots;
  double radius = 0.0;
  std::vector<std::vector<GridPoint>> trails;  // per robot, in raster coordinates
};

/// Canvas large enough for the raster and a disk of `radius` around every
/// given position.
FrameLayout frame_layout(int raster_width, int raster_height, std::span<const Vec2> positions, double radius);

RgbImage render_frame(const WorldState& state);

/// Called with the frame number and the encoded P3 image.
using FrameSink = std::function<void(std::size_t index, const std::string& ppm)>;

/// Kinematic replay on a fixed clock: approach along the straight-line
/// trajectories until tf, then follow the motion plan at the speed of each
/// segment's mode. Ends when every plan is exhausted.
SimOutcome simulate(const Fleet& fleet, std::span<const Trajectory> trajectories, std::span<const MotionPlan> plans,
                    const BinaryRaster& raster, const PhysicalScale& scale, const SimConfig& config,
                    const FrameSink& sink = {});

/// Intervals of sampled instants with a pair closer than `threshold`.
std::vector<ProximityEvent> proximity_events(std::span<const StateSample> history, double threshold);

}  // namespace geoprint
