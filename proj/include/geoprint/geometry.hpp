#pragma once

#include <cmath>
#include <compare>

namespace geoprint {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double squared_norm(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(squared_norm(a)); }
constexpr double squared_distance(Vec2 a, Vec2 b) { return squared_norm(a - b); }
inline double distance(Vec2 a, Vec2 b) { return std::sqrt(squared_distance(a, b)); }

/// Integer lattice point. Unlike PixelPoint it may lie outside any raster.
struct GridPoint {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

constexpr Vec2 to_vec(GridPoint p) { return {static_cast<double>(p.x), static_cast<double>(p.y)}; }

}  // namespace geoprint
