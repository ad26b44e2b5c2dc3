#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "geoprint/geometry.hpp"

namespace geoprint {

/// A pixel of a raster, addressed by column and row. Its position is the
/// pixel center in pixel units, i.e. exactly (col, row).
struct PixelPoint {
  int col = 0;
  int row = 0;

  constexpr Vec2 pos() const { return {static_cast<double>(col), static_cast<double>(row)}; }
  constexpr GridPoint grid() const { return {col, row}; }

  friend constexpr auto operator<=>(const PixelPoint&, const PixelPoint&) = default;
};

/// u x v grid of binary pixels, row-major. A value of 1 is a printable
/// (ink) pixel, 0 is blank.
class BinaryRaster {
 public:
  BinaryRaster() = default;

  /// Throws Error(InvalidArgument) if the size does not match or a value is
  /// not 0/1.
  BinaryRaster(int width, int height, std::vector<std::uint8_t> values);

  /// All-blank raster.
  static BinaryRaster blank(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  const std::vector<std::uint8_t>& values() const noexcept { return values_; }

  bool contains(int col, int row) const noexcept {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }
  bool printable(int col, int row) const { return values_[index(col, row)] != 0; }
  void set(int col, int row, bool on) { values_[index(col, row)] = on ? 1 : 0; }

  std::size_t index(int col, int row) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  friend bool operator==(const BinaryRaster&, const BinaryRaster&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> values_;
};

/// Physical length of one pixel (mm/pixel).
class PhysicalScale {
 public:
  explicit PhysicalScale(double pitch);
  double pitch() const noexcept { return pitch_; }

 private:
  double pitch_;
};

/// Parses a plain (P1) or raw (P4) PBM image. PBM black (1) is printable.
/// Errors carry the byte offset at which parsing failed.
BinaryRaster parse_pbm(std::string_view bytes);
BinaryRaster load_pbm(const std::filesystem::path& path);

/// Plain P1 encoding, one raster row per line.
std::string to_pbm(const BinaryRaster& raster);
void write_pbm(const BinaryRaster& raster, const std::filesystem::path& path);

/// Printable pixels (the set P1) in row-major order.
std::vector<PixelPoint> printable_set(const BinaryRaster& raster);
std::size_t count_printable(const BinaryRaster& raster);

inline Vec2 to_physical(PixelPoint p, const PhysicalScale& scale) { return p.pos() * scale.pitch(); }

}  // namespace geoprint
