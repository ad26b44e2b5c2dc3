#include "geoprint/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "geoprint/error.hpp"

namespace geoprint {

BinaryRaster::BinaryRaster(int width, int height, std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width < 0 || height < 0) {
    throw Error(ErrorKind::InvalidArgument, "raster dimensions must be non-negative");
  }
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorKind::InvalidArgument, "raster value count does not match width x height");
  }
  if (std::any_of(values_.begin(), values_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(ErrorKind::InvalidArgument, "raster values must be 0 or 1");
  }
}

BinaryRaster BinaryRaster::blank(int width, int height) {
  return BinaryRaster(width, height,
                      std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                                static_cast<std::size_t>(std::max(height, 0))));
}

PhysicalScale::PhysicalScale(double pitch) : pitch_(pitch) {
  if (!(pitch > 0.0) || !std::isfinite(pitch)) {
    throw Error(ErrorKind::InvalidArgument, "pixel pitch must be positive and finite");
  }
}

namespace {

[[noreturn]] void parse_error(std::size_t offset, const std::string& msg) {
  throw Error(ErrorKind::Parse, "PBM parse error at byte " + std::to_string(offset) + ": " + msg);
}

bool is_pbm_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_pbm_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  int read_dimension(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) parse_error(start, std::string(what) + " is too large");
      ++pos_;
    }
    if (pos_ == start) {
      parse_error(start, std::string("expected ") + what);
    }
    if (value == 0) parse_error(start, std::string(what) + " must be positive");
    return static_cast<int>(value);
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

BinaryRaster parse_pbm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) {
    parse_error(0, "missing P1/P4 magic number");
  }
  const bool plain = bytes[1] == '1';
  HeaderReader header(bytes);
  header.advance();
  header.advance();
  if (header.pos() < bytes.size() && !is_pbm_space(bytes[header.pos()]) && bytes[header.pos()] != '#') {
    parse_error(header.pos(), "magic number must be followed by whitespace");
  }
  const int width = header.read_dimension("width");
  const int height = header.read_dimension("height");
  const std::size_t total = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> values(total);

  std::size_t pos = header.pos();
  if (plain) {
    std::size_t filled = 0;
    while (pos < bytes.size()) {
      const char c = bytes[pos];
      if (is_pbm_space(c)) {
        ++pos;
      } else if (c == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n' && bytes[pos] != '\r') ++pos;
      } else if (c == '0' || c == '1') {
        if (filled == total) parse_error(pos, "more pixel values than width x height");
        values[filled++] = static_cast<std::uint8_t>(c - '0');
        ++pos;
      } else {
        parse_error(pos, std::string("non-binary symbol '") + c + "'");
      }
    }
    if (filled != total) {
      parse_error(pos, "expected " + std::to_string(total) + " pixel values, found " +
                           std::to_string(filled));
    }
  } else {
    if (pos >= bytes.size() || !is_pbm_space(bytes[pos])) {
      parse_error(pos, "expected single whitespace before raster data");
    }
    ++pos;
    const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
    const std::size_t need = row_bytes * static_cast<std::size_t>(height);
    if (bytes.size() - pos != need) {
      parse_error(pos, "expected " + std::to_string(need) + " bytes of raster data, found " +
                           std::to_string(bytes.size() - pos));
    }
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const auto byte = static_cast<unsigned char>(
            bytes[pos + static_cast<std::size_t>(r) * row_bytes + static_cast<std::size_t>(c / 8)]);
        values[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] =
            static_cast<std::uint8_t>((byte >> (7 - c % 8)) & 1U);
      }
    }
  }
  return BinaryRaster(width, height, std::move(values));
}

BinaryRaster load_pbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pbm(buf.str());
}

std::string to_pbm(const BinaryRaster& raster) {
  std::string out = "P1\n" + std::to_string(raster.width()) + " " + std::to_string(raster.height()) + "\n";
  out.reserve(out.size() + raster.values().size() * 2);
  for (int r = 0; r < raster.height(); ++r) {
    for (int c = 0; c < raster.width(); ++c) {
      if (c > 0) out += ' ';
      out += raster.printable(c, r) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

void write_pbm(const BinaryRaster& raster, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << to_pbm(raster);
}

std::vector<PixelPoint> printable_set(const BinaryRaster& raster) {
  std::vector<PixelPoint> points;
  for (int r = 0; r < raster.height(); ++r) {
    for (int c = 0; c < raster.width(); ++c) {
      if (raster.printable(c, r)) points.push_back({c, r});
    }
  }
  return points;
}

std::size_t count_printable(const BinaryRaster& raster) {
  return static_cast<std::size_t>(std::count(raster.values().begin(), raster.values().end(), 1));
}

}  // namespace geoprint
