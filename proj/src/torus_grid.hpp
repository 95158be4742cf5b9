#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/counter_rng.hpp"
#include "hardy/estimate.hpp"

namespace hardy::detail {

/// Tensor trapezoid grid on T^k at the doubled resolution. Points whose every
/// index is even form the base grid used for the refinement error estimate.
struct TorusGrid {
  std::vector<unsigned> log2_size;
  std::uint64_t points = 1;

  /// Writes the coordinates of point i; returns true for base-grid points.
  bool point(std::uint64_t i, std::span<TorusPoint> out) const {
    bool base = true;
    for (std::size_t j = 0; j < log2_size.size(); ++j) {
      const unsigned bits = log2_size[j];
      const std::uint64_t idx = i & ((std::uint64_t{1} << bits) - 1);
      i >>= bits;
      out[j].turns = idx << (64 - bits);
      base = base && (idx % 2 == 0);
    }
    return base;
  }
};

/// Grid for exponents bounded by `max_exponents` under `policy`, each
/// variable refined `extra_levels` more times, or nullopt when the doubled
/// grid exceeds policy.max_points.
inline std::optional<TorusGrid> make_grid(std::span<const std::uint64_t> max_exponents,
                                          const GridPolicy& policy, unsigned extra_levels = 0) {
  TorusGrid grid;
  for (const std::uint64_t e : max_exponents) {
    if (e > policy.max_points) return std::nullopt;
    const std::uint64_t wanted = std::max(policy.oversample * e, policy.min_points);
    const std::uint64_t base = std::bit_ceil(std::max<std::uint64_t>(wanted, 1));
    const unsigned bits = static_cast<unsigned>(std::countr_zero(base)) + 1 + extra_levels;
    if (bits >= 63) return std::nullopt;
    const std::uint64_t fine = std::uint64_t{1} << bits;
    if (fine > policy.max_points || grid.points > policy.max_points / fine) return std::nullopt;
    grid.points *= fine;
    grid.log2_size.push_back(bits);
  }
  return grid;
}

inline void random_torus_point(std::uint64_t seed, std::uint64_t i, std::span<TorusPoint> out) {
  for (std::size_t j = 0; j < out.size(); ++j) out[j].turns = counter_hash(seed ^ stream_tag::torus, i, j);
}

}  // namespace hardy::detail
