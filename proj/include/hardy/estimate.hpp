#pragma once

#include <cstdint>
#include <string_view>

namespace hardy {

enum class Mode { exact, quadrature, mc };

std::string_view to_string(Mode mode);

/// A numeric result together with how it was obtained.
///
/// `stderr_` is the Monte Carlo standard error and is zero outside mc mode.
/// `abs_error` is the grid-refinement error estimate, including that of
/// inner L_r(T^k) norms under an outer average (zero for exact values). A Monte Carlo estimate whose samples were all
/// identical also reports a zero standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  double abs_error = 0.0;
  std::uint64_t samples_used = 0;
  Mode mode = Mode::exact;

  static Estimate exact(double v) { return {v, 0.0, 0.0, 0, Mode::exact}; }
};

/// Sizing rule for tensor-product trapezoid grids on tori.
///
/// A variable whose largest absolute exponent is e gets a base grid of
/// max(oversample * e, min_points) points rounded up to a power of two; the
/// reported value comes from the doubled grid and the error estimate from
/// the difference between the two. Grids whose doubled size exceeds
/// `max_points` fall back to Monte Carlo with `fallback_samples` points.
///
/// A single-element norm keeps doubling the grid while the error estimate
/// exceeds `refine_tolerance` times the value and the budget allows.
/// CombinationNorm refines the same way once, on the all-ones combination,
/// within `combination_max_points`.
struct GridPolicy {
  std::uint64_t min_points = 64;
  std::uint64_t oversample = 8;
  std::uint64_t max_points = std::uint64_t{1} << 18;
  std::uint64_t fallback_samples = 4096;
  std::uint64_t fallback_seed = 0x5eed5eed5eed5eedULL;
  double refine_tolerance = 1e-10;
  std::uint64_t combination_max_points = std::uint64_t{1} << 14;
};

enum class Method { automatic, monte_carlo };

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  /// Sign sums over at most this many vectors are enumerated exactly.
  unsigned exact_cutoff = 20;
  /// Outer sign draws for two-stage estimators once enumeration is off.
  std::uint64_t sign_samples = 256;
  GridPolicy grid{};
  Method method = Method::automatic;
  unsigned threads = 1;

  /// Throws DomainError when the invariants (samples >= 1,
  /// exact_cutoff <= 24, threads >= 1) do not hold.
  void validate() const;
};

}  // namespace hardy
