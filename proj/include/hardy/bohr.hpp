#pragma once

// Prime indexing and the n <-> alpha(n) correspondence behind the Bohr lift
// of Dirichlet series to the infinite polytorus.

#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace hardy {

/// Largest integer any factorization or index computation accepts.
inline constexpr std::uint64_t kMaxIndex = (std::uint64_t{1} << 63) - 1;

/// Sieves larger than this are refused with ResourceError.
inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 28;

/// A point on the unit circle stored as a 64-bit fraction of a full turn:
/// `turns` represents exp(2*pi*i * turns / 2^64).
///
/// Raising to an integer power is one wrapping multiplication, so exponents
/// such as 2^60 are reduced exactly instead of losing every bit of the angle.
struct TorusPoint {
  std::uint64_t turns = 0;

  /// exp(2*pi*i*k/n), rounded down to the fixed-point grid.
  static TorusPoint root_of_unity(std::uint64_t k, std::uint64_t n);
  /// exp(2*pi*i*t) for real t (any value, reduced mod 1).
  static TorusPoint from_turns(double t);
  /// Angle of a nonzero complex number.
  static TorusPoint from_complex(std::complex<double> z);

  constexpr TorusPoint pow(std::int64_t e) const noexcept {
    return {turns * static_cast<std::uint64_t>(e)};
  }
  constexpr TorusPoint operator*(TorusPoint o) const noexcept { return {turns + o.turns}; }

  std::complex<double> value() const noexcept;

  friend constexpr bool operator==(TorusPoint, TorusPoint) = default;
};

/// Converts a fixed-point angle to the corresponding unimodular number.
std::complex<double> unit_from_turns(std::uint64_t turns) noexcept;

/// Exponent sequence alpha with trailing zeros trimmed; slot i belongs to the
/// (i+1)-th prime.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> exponents);
  MultiIndex(std::initializer_list<std::uint32_t> exponents);

  std::span<const std::uint32_t> exponents() const noexcept { return exponents_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  bool empty() const noexcept { return exponents_.empty(); }
  /// Exponent of slot i; zero past the stored length.
  std::uint32_t operator[](std::size_t i) const noexcept {
    return i < exponents_.size() ? exponents_[i] : 0;
  }
  /// Total degree |alpha|.
  std::uint64_t degree() const noexcept;

  MultiIndex operator+(const MultiIndex& other) const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<std::uint32_t> exponents_;
};

/// All primes up to `limit`, ascending. Immutable once built.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }

  /// Requires n <= limit().
  bool is_prime(std::uint64_t n) const;
  /// Zero-based slot of prime p in the table; throws DomainError if p is not
  /// a tabulated prime.
  std::size_t slot_of(std::uint64_t p) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<bool> composite_odd_;  // entry i describes 2*i + 1
};

struct PrimeAP {
  std::uint64_t start = 0;
  std::uint64_t step = 0;
  std::uint64_t length = 0;

  std::uint64_t term(std::uint64_t k) const noexcept { return start + k * step; }
  friend bool operator==(const PrimeAP&, const PrimeAP&) = default;
};

PrimeTable primes_up_to(std::uint64_t limit);

/// Process-wide table covering at least `at_least`; grows on demand and is
/// safe to call from several threads.
std::shared_ptr<const PrimeTable> shared_prime_table(std::uint64_t at_least);

/// The (slot+1)-th prime: nth_prime(0) == 2.
std::uint64_t nth_prime(std::size_t slot);

/// alpha(n). Throws DomainError for n == 0 or n > kMaxIndex, ResourceError
/// when a prime factor lies beyond kMaxSieveLimit.
MultiIndex factorize(std::uint64_t n);

/// n(alpha). Throws OverflowError when the product exceeds kMaxIndex.
std::uint64_t index_of(const MultiIndex& alpha);

/// Fixed-point angle of z^alpha. Throws ArityError when z is too short.
std::uint64_t monomial_turns(const MultiIndex& alpha, std::span<const TorusPoint> z);

/// z^alpha on the polytorus.
std::complex<double> monomial_eval(const MultiIndex& alpha, std::span<const TorusPoint> z);

/// Arithmetic progression of `length` primes, all <= bound, with the smallest
/// start and then the smallest step. Requires length >= 2 and bound >= length.
std::optional<PrimeAP> prime_ap_search(std::uint64_t length, std::uint64_t bound);

}  // namespace hardy
