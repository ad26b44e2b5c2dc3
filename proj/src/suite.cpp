#include "geoprint/suite.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "geoprint/error.hpp"
#include "geoprint/rng.hpp"

namespace geoprint {

BinaryRaster checkerboard(int width, int height) {
  BinaryRaster r = BinaryRaster::blank(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) r.set(x, y, (x + y) % 2 == 0);
  }
  return r;
}

namespace {

void fill_disk(BinaryRaster& r, int cx, int cy, int radius) {
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius && r.contains(cx + dx, cy + dy)) r.set(cx + dx, cy + dy, true);
    }
  }
}

void fill_ellipse(BinaryRaster& r, Vec2 c, double a, double b, double angle) {
  const double ca = std::cos(angle), sa = std::sin(angle);
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      const double dx = x - c.x, dy = y - c.y;
      const double u = ca * dx + sa * dy, v = -sa * dx + ca * dy;
      if ((u * u) / (a * a) + (v * v) / (b * b) <= 1.0) r.set(x, y, true);
    }
  }
}

void fill_annulus(BinaryRaster& r, Vec2 c, double inner, double outer) {
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      const double d2 = squared_distance({static_cast<double>(x), static_cast<double>(y)}, c);
      if (d2 <= outer * outer && d2 >= inner * inner) r.set(x, y, true);
    }
  }
}

BinaryRaster random_blobs(std::uint64_t seed, int size, int count, double min_axis, double max_axis) {
  SplitMix64 rng(seed);
  BinaryRaster r = BinaryRaster::blank(size, size);
  const double margin = max_axis * 0.8;
  for (int k = 0; k < count; ++k) {
    const Vec2 c{rng.uniform(margin, size - 1 - margin), rng.uniform(margin, size - 1 - margin)};
    const double a = rng.uniform(min_axis, max_axis);
    const double b = rng.uniform(min_axis, max_axis);
    fill_ellipse(r, c, a, b, rng.uniform(0.0, std::numbers::pi));
  }
  return r;
}

const std::map<char, std::array<const char*, 7>>& font() {
  static const std::map<char, std::array<const char*, 7>> glyphs{
      {'A', {"01110", "10001", "10001", "11111", "10001", "10001", "10001"}},
      {'I', {"11111", "00100", "00100", "00100", "00100", "00100", "11111"}},
      {'K', {"10001", "10010", "10100", "11000", "10100", "10010", "10001"}},
      {'M', {"10001", "11011", "10101", "10101", "10001", "10001", "10001"}},
      {'N', {"10001", "11001", "10101", "10011", "10001", "10001", "10001"}},
      {'R', {"11110", "10001", "10001", "11110", "10100", "10010", "10001"}},
      {'S', {"01111", "10000", "10000", "01110", "00001", "00001", "11110"}},
      {'W', {"10001", "10001", "10001", "10101", "10101", "10101", "01010"}},
  };
  return glyphs;
}

}  // namespace

BinaryRaster four_fold_disks(int size, int disk_radius) {
  BinaryRaster r = BinaryRaster::blank(size, size);
  const int near = size / 4 - 1;
  const int far = size - 1 - near;
  for (auto [cx, cy] : std::array<std::pair<int, int>, 4>{{{near, near}, {far, near}, {far, far}, {near, far}}}) {
    fill_disk(r, cx, cy, disk_radius);
  }
  return r;
}

BinaryRaster draw_text(const std::vector<std::string>& lines, int scale, int width, int height) {
  BinaryRaster r = BinaryRaster::blank(width, height);
  const int line_height = 8 * scale;
  const int top = (height - static_cast<int>(lines.size()) * line_height + scale) / 2;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const int text_width = static_cast<int>(lines[l].size()) * 6 * scale - scale;
    const int left = (width - text_width) / 2;
    for (std::size_t k = 0; k < lines[l].size(); ++k) {
      const auto glyph = font().find(lines[l][k]);
      if (glyph == font().end()) throw Error(ErrorKind::InvalidArgument, std::string("no glyph for '") + lines[l][k] + "'");
      for (int gy = 0; gy < 7; ++gy) {
        for (int gx = 0; gx < 5; ++gx) {
          if (glyph->second[static_cast<std::size_t>(gy)][gx] != '1') continue;
          for (int sy = 0; sy < scale; ++sy) {
            for (int sx = 0; sx < scale; ++sx) {
              const int x = left + (static_cast<int>(k) * 6 + gx) * scale + sx;
              const int y = top + static_cast<int>(l) * line_height + gy * scale + sy;
              if (r.contains(x, y)) r.set(x, y, true);
            }
          }
        }
      }
    }
  }
  return r;
}

std::vector<SuiteImage> flatness_suite(std::uint64_t seed) {
  SplitMix64 seeds(seed);
  std::vector<SuiteImage> suite;
  suite.push_back({"blobs_large", random_blobs(seeds.next(), 64, 4, 7.0, 13.0)});
  suite.push_back({"blobs_small", random_blobs(seeds.next(), 64, 7, 4.0, 8.0)});

  BinaryRaster ring = BinaryRaster::blank(64, 64);
  fill_annulus(ring, {31.5, 31.5}, 16.0, 27.0);
  suite.push_back({"ring", std::move(ring)});

  BinaryRaster rings = BinaryRaster::blank(64, 64);
  fill_annulus(rings, {31.5, 31.5}, 22.0, 29.0);
  fill_annulus(rings, {31.5, 31.5}, 8.0, 15.0);
  suite.push_back({"concentric_rings", std::move(rings)});

  suite.push_back({"glyphs_ink", draw_text({"INK"}, 3, 64, 64)});
  suite.push_back({"glyphs_swarm", draw_text({"SWARM", "INK"}, 2, 64, 64)});

  BinaryRaster mixed = random_blobs(seeds.next(), 64, 3, 5.0, 9.0);
  fill_annulus(mixed, {31.5, 31.5}, 24.0, 29.0);
  suite.push_back({"ring_and_blobs", std::move(mixed)});

  BinaryRaster bands = BinaryRaster::blank(64, 64);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) bands.set(x, y, (x + y) % 12 < 5);
  }
  suite.push_back({"diagonal_bands", std::move(bands)});
  return suite;
}

std::vector<std::filesystem::path> gen_suite(const std::filesystem::path& dir, std::uint64_t seed) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<SuiteImage> images = flatness_suite(seed);
  images.push_back({"best_symmetric4", four_fold_disks()});
  images.push_back({"worst_checkerboard", checkerboard(32, 32)});
  std::vector<std::filesystem::path> written;
  for (std::size_t k = 0; k < images.size(); ++k) {
    const std::string prefix = k < 8 ? "img" + std::to_string(k + 1) + "_" : std::string();
    const auto path = dir / (prefix + images[k].name + ".pbm");
    write_pbm(images[k].raster, path);
    written.push_back(path);
  }
  return written;
}

GeodesicCells strip_partition(const BinaryRaster& raster, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "strip count must be at least 1");
  const std::vector<PixelPoint> points = printable_set(raster);
  const auto w = static_cast<std::size_t>(raster.width());
  Membership membership{std::vector<std::size_t>(points.size()), n};
  for (std::size_t m = 0; m < points.size(); ++m) {
    membership.assignment[m] = std::min(n - 1, static_cast<std::size_t>(points[m].col) * n / w);
  }
  std::vector<Vec2> centers(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = static_cast<double>(k * w / n);
    const double hi = static_cast<double>((k + 1) * w / n);
    centers[k] = {(lo + hi - 1.0) / 2.0, (raster.height() - 1) / 2.0};
  }
  std::vector<Vec2> means = update_means(points, membership, centers);
  GeodesicCells cells = make_cells(points, std::move(membership), std::move(means));
  cells.converged = true;
  return cells;
}

}  // namespace geoprint
