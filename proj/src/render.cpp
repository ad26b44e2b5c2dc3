#include "geoprint/render.hpp"

#include <algorithm>
#include <cmath>

#include "geoprint/pathplan.hpp"

namespace geoprint {

Rgb palette_color(std::size_t i) {
  static constexpr std::array<Rgb, 10> table{{
      {230, 25, 75},
      {60, 180, 75},
      {0, 130, 200},
      {245, 130, 48},
      {145, 30, 180},
      {70, 240, 240},
      {240, 50, 230},
      {210, 245, 60},
      {0, 128, 128},
      {170, 110, 40},
  }};
  return table[i % table.size()];
}

Rgb light_color(std::size_t i) {
  Rgb c = palette_color(i);
  for (auto& v : c) v = static_cast<std::uint8_t>((v + 255) / 2);
  return c;
}

RgbImage::RgbImage(int width, int height, Rgb fill)
    : width_(std::max(width, 0)), height_(std::max(height, 0)),
      pixels_(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_), fill) {}

void RgbImage::fill_disk(Vec2 center, double radius, Rgb c) {
  const int x0 = static_cast<int>(std::floor(center.x - radius));
  const int x1 = static_cast<int>(std::ceil(center.x + radius));
  const int y0 = static_cast<int>(std::floor(center.y - radius));
  const int y1 = static_cast<int>(std::ceil(center.y + radius));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (squared_distance({static_cast<double>(x), static_cast<double>(y)}, center) <= radius * radius) set(x, y, c);
    }
  }
}

void RgbImage::draw_line(GridPoint a, GridPoint b, Rgb c) {
  for (GridPoint p : bresenham(a, b)) set(p.x, p.y, c);
}

std::string RgbImage::to_ppm() const {
  std::string out = "P3\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n255\n";
  out.reserve(out.size() + pixels_.size() * 12);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Rgb& p = pixels_[index(x, y)];
      if (x > 0) out += ' ';
      out += std::to_string(p[0]);
      out += ' ';
      out += std::to_string(p[1]);
      out += ' ';
      out += std::to_string(p[2]);
    }
    out += '\n';
  }
  return out;
}

RgbImage render_cells(int width, int height, const GeodesicCells& cells) {
  RgbImage image(width, height);
  for (std::size_t n = 0; n < cells.cells.size(); ++n) {
    for (const PixelPoint& p : cells.cells[n]) image.set(p.col, p.row, palette_color(n));
  }
  for (const Vec2& mean : cells.means) {
    const int x = static_cast<int>(std::lround(mean.x));
    const int y = static_cast<int>(std::lround(mean.y));
    for (int d = -1; d <= 1; ++d) {
      image.set(x + d, y, {0, 0, 0});
      image.set(x, y + d, {0, 0, 0});
    }
  }
  return image;
}

}  // namespace geoprint
