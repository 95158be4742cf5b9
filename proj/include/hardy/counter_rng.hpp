#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace hardy {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless hash of (seed, stream, counter). Sample i of any estimator draws
/// from stream i, so results do not depend on how samples are split across
/// workers.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t counter) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) + counter);
}

/// Domain tags keep unrelated draws made from the same seed independent.
namespace stream_tag {
inline constexpr std::uint64_t torus = 0x746f727573000000ULL;
inline constexpr std::uint64_t signs = 0x7369676e73000000ULL;
inline constexpr std::uint64_t gauss = 0x6761757373000000ULL;
inline constexpr std::uint64_t search = 0x7365617263680000ULL;
inline constexpr std::uint64_t instance = 0x696e7374616e6365ULL;
}  // namespace stream_tag

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() noexcept { return counter_hash(seed_, stream_, counter_++); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniform_open_low() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double sign() noexcept { return (next_u64() >> 63) != 0 ? -1.0 : 1.0; }

  /// Pair of independent standard normals (Box-Muller).
  std::complex<double> normal_pair() noexcept {
    const double radius = std::sqrt(-2.0 * std::log(uniform_open_low()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace hardy
