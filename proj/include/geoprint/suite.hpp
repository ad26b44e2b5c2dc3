#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "geoprint/clustering.hpp"
#include "geoprint/raster.hpp"

namespace geoprint {

struct SuiteImage {
  std::string name;
  BinaryRaster raster;
};

/// Pixel (c, r) is printable when c + r is even.
BinaryRaster checkerboard(int width, int height);

/// Four identical filled disks placed with exact 4-fold rotational symmetry
/// about the image center.
BinaryRaster four_fold_disks(int size = 64, int disk_radius = 9);

/// Block text in a 5x7 font (letters AIKMNRSW only), each font cell scaled
/// to `scale` x `scale` pixels.
BinaryRaster draw_text(const std::vector<std::string>& lines, int scale, int width, int height);

/// The eight deterministic flatness images: blobs, rings, glyphs, bands.
std::vector<SuiteImage> flatness_suite(std::uint64_t seed);

/// flatness_suite + "best_symmetric4" + "worst_checkerboard" as PBM files.
/// Returns the written paths.
std::vector<std::filesystem::path> gen_suite(const std::filesystem::path& dir, std::uint64_t seed);

/// Comparison baseline: N equal-width vertical strips, each strip one cell,
/// means at strip centroids (strip center when a strip is blank). No balance
/// guarantee.
GeodesicCells strip_partition(const BinaryRaster& raster, std::size_t n);

}  // namespace geoprint
