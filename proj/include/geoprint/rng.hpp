#pragma once

#include <cstddef>
#include <cstdint>

namespace geoprint {

/// SplitMix64 (Steele, Lea, Flood 2014). The whole state is one 64-bit word:
///
///   state  += 0x9E3779B97F4A7C15
///   z       = state
///   z       = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z       = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output  = z ^ (z >> 31)
///
/// uniform01() takes the top 53 bits of one output and scales by 2^-53, so
/// every seed reproduces bit-for-bit in any language with 64-bit integers.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  constexpr double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi).
  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Uniform index in [0, n); n must be positive.
  constexpr std::size_t index(std::size_t n) noexcept {
    auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace geoprint
