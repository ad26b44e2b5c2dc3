#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "geoprint/error.hpp"
#include "geoprint/raster.hpp"
#include "geoprint/suite.hpp"

using namespace geoprint;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no geoprint::Error thrown";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Pbm, PlainDiagonal) {
  const BinaryRaster r = parse_pbm("P1\n2 2\n1 0\n0 1\n");
  EXPECT_EQ(r.width(), 2);
  EXPECT_EQ(r.height(), 2);
  EXPECT_EQ(r.values(), (std::vector<std::uint8_t>{1, 0, 0, 1}));
}

TEST(Pbm, AllWhiteHasNoPrintablePixels) {
  const BinaryRaster r = parse_pbm("P1\n1 1\n0\n");
  EXPECT_TRUE(printable_set(r).empty());
}

TEST(Pbm, CommentsAndPackedDigits) {
  const BinaryRaster r = parse_pbm("P1 # comment\n# another\n3\n2\n101\n010");
  EXPECT_EQ(r.values(), (std::vector<std::uint8_t>{1, 0, 1, 0, 1, 0}));
}

TEST(Pbm, RawFormat) {
  // 10 x 2: row bytes 0b10000000 0b01000000, 0b00000000 0b11000000
  const std::string bytes = std::string("P4\n10 2\n") + '\x80' + '\x40' + '\x00' + '\xC0';
  const BinaryRaster r = parse_pbm(bytes);
  EXPECT_EQ(r.width(), 10);
  EXPECT_TRUE(r.printable(0, 0));
  EXPECT_TRUE(r.printable(9, 0));
  EXPECT_FALSE(r.printable(8, 0));
  EXPECT_TRUE(r.printable(8, 1));
  EXPECT_TRUE(r.printable(9, 1));
  EXPECT_EQ(count_printable(r), 4u);
}

TEST(Pbm, CheckerboardFileCount) {
  const auto path = std::filesystem::temp_directory_path() / "geoprint_checker16.pbm";
  write_pbm(checkerboard(16, 16), path);
  EXPECT_EQ(count_printable(load_pbm(path)), 128u);
  std::filesystem::remove(path);
}

TEST(Pbm, Errors) {
  EXPECT_EQ(kind_of([] { parse_pbm("P2\n1 1\n0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_pbm("P1\nx 1\n0\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_pbm("P1\n2 2\n1 0 1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_pbm("P1\n1 1\n0 1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_pbm("P4\n8 2\n\x01"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { load_pbm("/nonexistent/image.pbm"); }), ErrorKind::Io);
}

TEST(Pbm, ErrorNamesByteOffset) {
  try {
    parse_pbm("P1\n2 1\n1 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("byte 9"), std::string::npos) << e.what();
  }
}

TEST(Pbm, RoundTripProperty) {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + static_cast<int>(gen() % 40);
    const int h = 1 + static_cast<int>(gen() % 40);
    std::vector<std::uint8_t> values(static_cast<std::size_t>(w * h));
    for (auto& v : values) v = static_cast<std::uint8_t>(gen() % 2);
    const BinaryRaster r(w, h, values);
    EXPECT_EQ(parse_pbm(to_pbm(r)), r);
    EXPECT_EQ(printable_set(r).size() + static_cast<std::size_t>(std::count(values.begin(), values.end(), 0)),
              values.size());
  }
}

TEST(Raster, RejectsBadValues) {
  EXPECT_EQ(kind_of([] { BinaryRaster(2, 1, {1, 2}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { BinaryRaster(2, 2, {1, 0}); }), ErrorKind::InvalidArgument);
}

TEST(PrintableSet, RowMajorOrder) {
  EXPECT_TRUE(printable_set(BinaryRaster::blank(4, 3)).empty());
  const auto full = printable_set(BinaryRaster(3, 3, std::vector<std::uint8_t>(9, 1)));
  ASSERT_EQ(full.size(), 9u);
  for (std::size_t k = 0; k < 9; ++k) {
    EXPECT_EQ(full[k], (PixelPoint{static_cast<int>(k % 3), static_cast<int>(k / 3)}));
  }
  const auto diag = printable_set(BinaryRaster(2, 2, {1, 0, 0, 1}));
  EXPECT_EQ(diag, (std::vector<PixelPoint>{{0, 0}, {1, 1}}));
}

TEST(Physical, Scaling) {
  EXPECT_EQ(to_physical({3, 4}, PhysicalScale(1.0)), (Vec2{3.0, 4.0}));
  EXPECT_EQ(to_physical({3, 4}, PhysicalScale(0.5)), (Vec2{1.5, 2.0}));
  EXPECT_EQ(to_physical({0, 0}, PhysicalScale(0.37)), (Vec2{0.0, 0.0}));
  EXPECT_EQ(kind_of([] { PhysicalScale(0.0); }), ErrorKind::InvalidArgument);
}
