#include "geoprint/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoprint/error.hpp"

namespace geoprint {

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
  if (frame_stride < 1) throw Error(ErrorKind::InvalidArgument, "frame_stride must be at least 1");
  if (proximity_threshold && !(*proximity_threshold > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "proximity threshold must be positive");
  }
}

FrameLayout frame_layout(int raster_width, int raster_height, std::span<const Vec2> positions, double radius) {
  int x0 = 0, y0 = 0, x1 = raster_width, y1 = raster_height;
  for (const Vec2& p : positions) {
    x0 = std::min(x0, static_cast<int>(std::floor(p.x - radius)));
    y0 = std::min(y0, static_cast<int>(std::floor(p.y - radius)));
    x1 = std::max(x1, static_cast<int>(std::ceil(p.x + radius)) + 1);
    y1 = std::max(y1, static_cast<int>(std::ceil(p.y + radius)) + 1);
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

RgbImage render_frame(const WorldState& state) {
  FrameLayout layout = state.layout;
  if (layout.width == 0 && layout.height == 0) layout = {0, 0, state.raster_width, state.raster_height};
  RgbImage image(layout.width, layout.height);
  const auto shift = [&](GridPoint p) { return GridPoint{p.x - layout.origin_x, p.y - layout.origin_y}; };

  for (std::size_t r = 0; r < state.trails.size(); ++r) {
    const auto& trail = state.trails[r];
    for (std::size_t k = 0; k < trail.size(); ++k) {
      const GridPoint a = shift(trail[k]);
      const GridPoint b = k + 1 < trail.size() ? shift(trail[k + 1]) : a;
      image.draw_line(a, b, light_color(r));
    }
  }
  for (int row = 0; row < state.raster_height && !state.printed.empty(); ++row) {
    for (int col = 0; col < state.raster_width; ++col) {
      if (state.printed[static_cast<std::size_t>(row) * static_cast<std::size_t>(state.raster_width) +
                        static_cast<std::size_t>(col)] != 0) {
        image.set(col - layout.origin_x, row - layout.origin_y, kInk);
      }
    }
  }
  for (std::size_t r = 0; r < state.robots.size(); ++r) {
    const Vec2 c{state.robots[r].x - layout.origin_x, state.robots[r].y - layout.origin_y};
    image.fill_disk(c, state.radius, palette_color(r));
  }
  return image;
}

namespace {

struct Leg {
  Vec2 a;
  Vec2 b;
  double length = 0.0;
  double speed = 0.0;  // pixels per second
  bool print = false;
};

class RobotRunner {
 public:
  RobotRunner(const MotionPlan& plan, const RobotSpec& robot, const PhysicalScale& scale, Vec2 rest)
      : position_(rest) {
    for (const MotionSegment& s : plan.segments) {
      const double speed = (s.mode == SegmentMode::Print ? robot.v_print : robot.v_travel) / scale.pitch();
      const std::vector<Vec2> pts = segment_polyline(s);
      if (pts.size() == 2 && pts[0] == pts[1]) {
        legs_.push_back({pts[0], pts[1], 0.0, speed, s.mode == SegmentMode::Print});
        continue;
      }
      for (std::size_t k = 1; k < pts.size(); ++k) {
        legs_.push_back({pts[k - 1], pts[k], distance(pts[k - 1], pts[k]), speed, s.mode == SegmentMode::Print});
      }
    }
  }

  bool done() const { return leg_ >= legs_.size(); }
  Vec2 position() const { return position_; }

  /// Consumes `budget` seconds of motion; calls spray(col, row) for every
  /// pixel newly passed on a PRINT leg.
  template <typename Spray>
  void advance(double budget, Spray&& spray) {
    while (leg_ < legs_.size()) {
      const Leg& leg = legs_[leg_];
      const double needed = (leg.length - along_) / leg.speed;
      if (needed <= budget) {
        budget -= needed;
        mark(leg, leg.length, spray);
        position_ = leg.b;
        ++leg_;
        along_ = 0.0;
        sprayed_ = 0;
        continue;
      }
      along_ += budget * leg.speed;
      mark(leg, along_, spray);
      const double s = along_ / leg.length;
      position_ = leg.a + s * (leg.b - leg.a);
      return;
    }
  }

 private:
  template <typename Spray>
  void mark(const Leg& leg, double along, Spray&& spray) {
    if (!leg.print) return;
    const int step = leg.b.x >= leg.a.x ? 1 : -1;
    const auto reached = static_cast<int>(std::floor(along + 1e-9));
    const int row = static_cast<int>(std::lround(leg.a.y));
    const int first = static_cast<int>(std::lround(leg.a.x));
    for (; sprayed_ <= reached; ++sprayed_) spray(first + step * sprayed_, row);
  }

  std::vector<Leg> legs_;
  std::size_t leg_ = 0;
  double along_ = 0.0;
  int sprayed_ = 0;  // pixels of the current PRINT leg already sprayed
  Vec2 position_;
};

}  // namespace

SimOutcome simulate(const Fleet& fleet, std::span<const Trajectory> trajectories, std::span<const MotionPlan> plans,
                    const BinaryRaster& raster, const PhysicalScale& scale, const SimConfig& config,
                    const FrameSink& sink) {
  config.validate();
  const std::size_t n = fleet.size();
  if (trajectories.size() != n || plans.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "fleet, trajectories and plans must have the same size");
  }
  if (!config.allow_clearance_violation) {
    const ClearanceReport clearance = check_clearance(fleet);
    if (!clearance.ok) {
      throw Error(ErrorKind::Clearance, "robots " + std::to_string(clearance.i) + " and " +
                                            std::to_string(clearance.j) + " start too close");
    }
  }
  const double tf = n == 0 ? 0.0 : trajectories.front().tf;
  const double threshold = config.proximity_threshold.value_or(2.0 * fleet.radius());

  std::vector<RobotRunner> runners;
  double analytic_end = tf;
  for (std::size_t i = 0; i < n; ++i) {
    runners.emplace_back(plans[i], fleet[i], scale, trajectories[i].end);
    analytic_end = std::max(analytic_end, tf + printing_time(plans[i], fleet[i], scale));
  }
  const auto max_ticks = static_cast<std::size_t>(std::ceil(analytic_end / config.dt)) + 2;

  SimOutcome outcome;
  outcome.completion.assign(n, std::numeric_limits<double>::quiet_NaN());
  WorldState world;
  world.raster_width = raster.width();
  world.raster_height = raster.height();
  world.printed.assign(raster.values().size(), 0);
  world.radius = fleet.radius();
  world.trails.resize(n);
  world.robots.resize(n);
  {
    std::vector<Vec2> extent;
    for (const Trajectory& tr : trajectories) {
      extent.push_back(tr.start);
      extent.push_back(tr.end);
    }
    world.layout = frame_layout(raster.width(), raster.height(), extent, fleet.radius());
  }

  std::vector<StateSample> history;
  const auto spray = [&](int col, int row) {
    if (!raster.contains(col, row)) return;
    auto& cell = world.printed[raster.index(col, row)];
    if (cell != 0) {
      ++outcome.overprinted;
    } else {
      cell = 1;
      ++outcome.printed_count;
    }
  };
  const auto record = [&](std::size_t tick, double t, bool final_tick) {
    for (std::size_t i = 0; i < n; ++i) {
      const GridPoint g{static_cast<int>(std::lround(world.robots[i].x)), static_cast<int>(std::lround(world.robots[i].y))};
      if (world.trails[i].empty() || world.trails[i].back() != g) world.trails[i].push_back(g);
    }
    history.push_back({t, world.robots});
    if (tick % config.frame_stride == 0 || final_tick) {
      outcome.frame_times.push_back(t);
      outcome.frame_printed.push_back(outcome.printed_count);
      if (sink) sink(outcome.frames_emitted, render_frame(world).to_ppm());
      ++outcome.frames_emitted;
    }
  };

  for (std::size_t i = 0; i < n; ++i) world.robots[i] = trajectories[i].start;
  double previous = 0.0;
  for (std::size_t tick = 0;; ++tick) {
    if (tick > max_ticks) throw std::logic_error("simulation exceeded its analytic duration");
    const double t = static_cast<double>(tick) * config.dt;
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (t < tf) {
        world.robots[i] = trajectories[i].at(t);
        all_done = false;
        continue;
      }
      if (!runners[i].done()) runners[i].advance(t - std::max(previous, tf), spray);
      world.robots[i] = runners[i].position();
      if (runners[i].done() && std::isnan(outcome.completion[i])) outcome.completion[i] = t;
      all_done = all_done && runners[i].done();
    }
    previous = t;
    record(tick, t, all_done);
    if (all_done) break;
  }

  for (double c : outcome.completion) outcome.makespan = std::max(outcome.makespan, c);
  outcome.events = proximity_events(history, threshold);
  return outcome;
}

std::vector<ProximityEvent> proximity_events(std::span<const StateSample> history, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorKind::InvalidArgument, "proximity threshold must be positive");
  std::vector<ProximityEvent> events;
  if (history.empty()) return events;
  const std::size_t n = history.front().positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::optional<ProximityEvent> open;
      for (const StateSample& s : history) {
        const double d = distance(s.positions[i], s.positions[j]);
        if (d < threshold) {
          if (!open) open = ProximityEvent{s.t, i, j, d, s.t, s.t};
          open->t_end = s.t;
          if (d < open->d) {
            open->d = d;
            open->t = s.t;
          }
        } else if (open) {
          events.push_back(*open);
          open.reset();
        }
      }
      if (open) events.push_back(*open);
    }
  }
  std::sort(events.begin(), events.end(), [](const ProximityEvent& a, const ProximityEvent& b) {
    if (a.t_begin != b.t_begin) return a.t_begin < b.t_begin;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return events;
}

}  // namespace geoprint
