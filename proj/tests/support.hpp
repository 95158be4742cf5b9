#pragma once

// Generators and brute-force oracles shared by the test suites. The oracles
// deliberately avoid the library's code paths: plain double angles instead
// of fixed-point turns, full sign enumeration instead of half patterns,
// Simpson's rule instead of Gauss-Kronrod.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "hardy/spaces.hpp"

namespace oracle {

using Complex = std::complex<double>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

/// Exponent vector of n by division against an explicit prime list.
inline std::vector<std::uint32_t> exponents(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint32_t> e;
  for (std::size_t i = 0; n > 1; ++i) {
    e.push_back(0);
    while (n % primes.at(i) == 0) {
      n /= primes[i];
      ++e.back();
    }
  }
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

/// (1/2pi) int_0^{2pi} |f(t)|^r dt by the trapezoid rule in double angles.
inline double circle_lr(const std::function<Complex(double)>& f, double r, std::size_t points) {
  double s = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points);
    s += std::pow(std::abs(f(t)), r);
  }
  return std::pow(s / static_cast<double>(points), 1.0 / r);
}

/// sum_k c_k e^{ikt}.
inline std::function<Complex(double)> trig(std::map<std::int64_t, Complex> coeffs) {
  return [coeffs](double t) {
    Complex s{};
    for (const auto& [k, c] : coeffs) s += c * std::polar(1.0, static_cast<double>(k) * t);
    return s;
  };
}

/// (1/pi) int_0^pi |sin(N t/2)/sin(t/2)| dt, composite Simpson on each arc.
inline double kernel_l1(std::uint64_t N, int panels_per_arc = 400) {
  const double n = static_cast<double>(N);
  auto f = [n](double t) {
    const double s = std::sin(t / 2.0);
    return s == 0.0 ? n : std::abs(std::sin(n * t / 2.0) / s);
  };
  double total = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    if (a >= std::numbers::pi) break;
    const double b = std::min(std::numbers::pi, 2.0 * std::numbers::pi * static_cast<double>(k + 1) / n);
    const double h = (b - a) / panels_per_arc;
    double s = f(a) + f(b);
    for (int i = 1; i < panels_per_arc; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    total += s * h / 3.0;
  }
  return total / std::numbers::pi;
}

/// (mean over all 2^m sign patterns of ||sum eps_n x_n||^q)^{1/q} for
/// coordinate vectors under `norm`.
inline double sign_average(const std::vector<std::vector<Complex>>& xs, double q,
                           const std::function<double(const std::vector<Complex>&)>& norm) {
  const std::size_t m = xs.size();
  if (m == 0) return 0.0;
  const std::size_t d = xs.front().size();
  double s = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Complex> sum(d);
    for (std::size_t n = 0; n < m; ++n) {
      const double e = (mask >> n) & 1U ? -1.0 : 1.0;
      for (std::size_t i = 0; i < d; ++i) sum[i] += e * xs[n][i];
    }
    s += std::pow(norm(sum), q);
  }
  return std::pow(s / static_cast<double>(std::uint64_t{1} << m), 1.0 / q);
}

inline double lr_norm(const std::vector<Complex>& v, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (auto c : v) m = std::max(m, std::abs(c));
    return m;
  }
  double s = 0.0;
  for (auto c : v) s += std::pow(std::abs(c), r);
  return std::pow(s, 1.0 / r);
}

}  // namespace oracle

namespace gen {

using Complex = std::complex<double>;

/// Complex number with standard normal parts.
inline Complex complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline std::vector<Complex> coords(std::mt19937_64& rng, std::size_t d) {
  std::vector<Complex> v(d);
  for (auto& c : v) c = complex_normal(rng);
  return v;
}

inline std::size_t uniform_int(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// A coordinate space: l_r^d for r in {1, 1.5, 2, 3, inf}, Hilbert or Sup.
inline hardy::SpaceSpec coordinate_space(std::mt19937_64& rng, std::size_t max_d) {
  const std::size_t d = uniform_int(rng, 1, max_d);
  switch (uniform_int(rng, 0, 6)) {
    case 0: return hardy::SpaceSpec::sequence(1.0, d);
    case 1: return hardy::SpaceSpec::sequence(1.5, d);
    case 2: return hardy::SpaceSpec::sequence(2.0, d);
    case 3: return hardy::SpaceSpec::sequence(3.0, d);
    case 4: return hardy::SpaceSpec::sequence(INFINITY, d);
    case 5: return hardy::SpaceSpec::hilbert(d);
    default: return hardy::SpaceSpec::sup(d);
  }
}

inline std::vector<hardy::Element> elements(std::mt19937_64& rng, const hardy::SpaceSpec& space,
                                            std::size_t count) {
  std::vector<hardy::Element> xs;
  for (std::size_t i = 0; i < count; ++i) xs.emplace_back(coords(rng, space.dimension()));
  return xs;
}

}  // namespace gen
