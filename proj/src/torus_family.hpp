#pragma once

// Shared evaluation engine: a family of terms z^{alpha_n} x_n on the active
// coordinates of the polytorus, integrated for several coefficient patterns
// over one common point set (common random numbers across patterns).

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/estimate.hpp"
#include "hardy/spaces.hpp"
#include "torus_grid.hpp"

namespace hardy::detail {

struct TorusFamily {
  SpaceSpec space;
  std::vector<Element> elements;
  /// Per term: (active variable, exponent) pairs with nonzero exponent.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> monomials;
  /// Largest exponent of each active variable.
  std::vector<std::uint64_t> max_exponent;

  std::size_t variables() const noexcept { return max_exponent.size(); }
  std::size_t size() const noexcept { return elements.size(); }
};

/// Compresses the prime slots used by `alphas` to consecutive active
/// variables; slots no term uses integrate out and are dropped.
TorusFamily make_torus_family(const SpaceSpec& space, std::span<const MultiIndex> alphas,
                              std::vector<Element> elements);

/// One-variable family sum_n x_n z^{exponent_n}.
TorusFamily make_circle_family(const SpaceSpec& space, std::span<const std::uint64_t> exponents,
                               std::vector<Element> elements);

struct SamplingPlan {
  std::optional<TorusGrid> grid;  // empty: Monte Carlo
  std::uint64_t points = 0;
  std::uint64_t seed = 0;
};

/// Trapezoid grid when allowed and within cfg.grid.max_points, otherwise
/// cfg.samples Monte Carlo points drawn from cfg.seed.
SamplingPlan plan_sampling(const TorusFamily& family, bool grid_allowed, const SamplerConfig& cfg);

/// For each pattern c: (int ||sum_n c_n z^{alpha_n} x_n||^p dz)^{1/p}.
std::vector<Estimate> pattern_norms(const TorusFamily& family,
                                    std::span<const std::vector<Complex>> patterns, double p,
                                    const SamplingPlan& plan, const SamplerConfig& cfg);

/// Exact mean of values^q (sorted summation, so the result does not depend on
/// the order of `values`); returns the common value when all are equal.
double sorted_power_mean(std::vector<double> values, double q);

}  // namespace hardy::detail
