#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "geoprint/clustering.hpp"
#include "geoprint/geometry.hpp"

namespace geoprint {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kInk{32, 32, 32};

/// Distinct flat color for cell / robot index i (fixed table, then cycles).
Rgb palette_color(std::size_t i);
/// palette_color blended halfway to white.
Rgb light_color(std::size_t i);

class RgbImage {
 public:
  RgbImage(int width, int height, Rgb fill = kWhite);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  Rgb at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, Rgb c) {
    if (contains(x, y)) pixels_[index(x, y)] = c;
  }
  void fill_disk(Vec2 center, double radius, Rgb c);
  void draw_line(GridPoint a, GridPoint b, Rgb c);

  /// Plain P3 encoding, one image row per line.
  std::string to_ppm() const;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

/// Raster-sized image, every cell in its own color, means marked with a
/// black cross.
RgbImage render_cells(int width, int height, const GeodesicCells& cells);

}  // namespace geoprint
