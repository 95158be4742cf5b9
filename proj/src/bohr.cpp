#include "hardy/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

TorusPoint TorusPoint::root_of_unity(std::uint64_t k, std::uint64_t n) {
  if (n == 0) throw DomainError("root_of_unity: n must be positive");
  const unsigned __int128 scaled = (static_cast<unsigned __int128>(k % n) << 64) / n;
  return {static_cast<std::uint64_t>(scaled)};
}

TorusPoint TorusPoint::from_turns(double t) {
  double frac = t - std::floor(t);
  if (frac >= 1.0) frac = 0.0;
  // 2^64 * frac, split so the conversion never overflows.
  const double hi = std::floor(std::ldexp(frac, 32));
  const double lo = std::ldexp(frac, 64) - std::ldexp(hi, 32);
  const auto lo_int = static_cast<std::uint64_t>(std::clamp(lo, 0.0, 4294967295.0));
  return {(static_cast<std::uint64_t>(hi) << 32) + lo_int};
}

TorusPoint TorusPoint::from_complex(std::complex<double> z) {
  if (z == std::complex<double>{}) throw DomainError("from_complex: zero has no angle");
  return from_turns(std::arg(z) / (2.0 * std::numbers::pi));
}

std::complex<double> TorusPoint::value() const noexcept { return unit_from_turns(turns); }

std::complex<double> unit_from_turns(std::uint64_t turns) noexcept {
  // Quadrant first so quarter turns come out exact.
  const unsigned quadrant = static_cast<unsigned>(turns >> 62);
  const std::uint64_t rest = turns & ((std::uint64_t{1} << 62) - 1);
  const double angle = std::ldexp(static_cast<double>(rest), -62) * (std::numbers::pi / 2.0);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

MultiIndex::MultiIndex(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {
  while (!exponents_.empty() && exponents_.back() == 0) exponents_.pop_back();
}

MultiIndex::MultiIndex(std::initializer_list<std::uint32_t> exponents)
    : MultiIndex(std::vector<std::uint32_t>(exponents)) {}

std::uint64_t MultiIndex::degree() const noexcept {
  std::uint64_t total = 0;
  for (auto e : exponents_) total += e;
  return total;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  std::vector<std::uint32_t> sum(std::max(size(), other.size()), 0);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (*this)[i] + other[i];
  return MultiIndex(std::move(sum));
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit > kMaxSieveLimit) {
    throw ResourceError("prime sieve up to " + std::to_string(limit) +
                        " exceeds the budget of " + std::to_string(kMaxSieveLimit));
  }
  if (limit < 2) return;
  const std::uint64_t odd_count = (limit + 1) / 2;
  composite_odd_.assign(odd_count, false);
  composite_odd_[0] = true;  // 1
  for (std::uint64_t p = 3; p * p <= limit; p += 2) {
    if (composite_odd_[p / 2]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite_odd_[m / 2] = true;
  }
  primes_.reserve(static_cast<std::size_t>(1.3 * limit / std::max(1.0, std::log(double(limit)))) + 8);
  primes_.push_back(2);
  for (std::uint64_t i = 1; i < odd_count; ++i) {
    if (!composite_odd_[i]) primes_.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) {
    throw DomainError("is_prime: " + std::to_string(n) + " is beyond the table limit " +
                      std::to_string(limit_));
  }
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return !composite_odd_[n / 2];
}

std::size_t PrimeTable::slot_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) {
    throw DomainError(std::to_string(p) + " is not a tabulated prime");
  }
  return static_cast<std::size_t>(it - primes_.begin());
}

PrimeTable primes_up_to(std::uint64_t limit) {
  if (limit < 1) throw DomainError("primes_up_to: limit must be at least 1");
  return PrimeTable(limit);
}

namespace {

std::mutex g_table_mutex;
std::shared_ptr<const PrimeTable> g_table;

}  // namespace

std::shared_ptr<const PrimeTable> shared_prime_table(std::uint64_t at_least) {
  std::lock_guard lock(g_table_mutex);
  if (g_table && g_table->limit() >= at_least) return g_table;
  if (at_least > kMaxSieveLimit) {
    throw ResourceError("prime table up to " + std::to_string(at_least) +
                        " exceeds the budget of " + std::to_string(kMaxSieveLimit));
  }
  std::uint64_t limit = std::max<std::uint64_t>(at_least, std::uint64_t{1} << 16);
  if (g_table) limit = std::max(limit, 2 * g_table->limit());
  limit = std::min(limit, kMaxSieveLimit);
  g_table = std::make_shared<const PrimeTable>(limit);
  return g_table;
}

std::uint64_t nth_prime(std::size_t slot) {
  auto table = shared_prime_table(0);
  while (table->size() <= slot) {
    if (table->limit() >= kMaxSieveLimit) {
      throw ResourceError("prime slot " + std::to_string(slot) + " is beyond the sieve budget");
    }
    table = shared_prime_table(table->limit() * 2);
  }
  return table->primes()[slot];
}

MultiIndex factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > kMaxIndex) throw DomainError("factorize: n exceeds 2^63 - 1");

  std::vector<std::uint32_t> exponents;
  auto bump = [&](std::size_t slot) {
    if (exponents.size() <= slot) exponents.resize(slot + 1, 0);
    ++exponents[slot];
  };

  std::uint64_t rest = n;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
  auto table = shared_prime_table(std::min(root, kMaxSieveLimit));
  const auto primes = table->primes();
  std::size_t slot = 0;
  for (; slot < primes.size(); ++slot) {
    const std::uint64_t p = primes[slot];
    if (p * p > rest) break;
    while (rest % p == 0) {
      rest /= p;
      bump(slot);
    }
  }
  if (rest > 1) {
    if (slot == primes.size() && rest > table->limit() &&
        std::uint64_t{primes.back()} * primes.back() < rest) {
      throw ResourceError("factorize: " + std::to_string(n) +
                          " has a cofactor too large for trial division within budget");
    }
    // rest is prime; locate its slot.
    if (rest > kMaxSieveLimit) {
      throw ResourceError("factorize: prime factor " + std::to_string(rest) +
                          " lies beyond the sieve budget");
    }
    bump(shared_prime_table(rest)->slot_of(rest));
  }
  return MultiIndex(std::move(exponents));
}

std::uint64_t index_of(const MultiIndex& alpha) {
  std::uint64_t n = 1;
  const auto exps = alpha.exponents();
  for (std::size_t slot = 0; slot < exps.size(); ++slot) {
    if (exps[slot] == 0) continue;
    const std::uint64_t p = nth_prime(slot);
    for (std::uint32_t k = 0; k < exps[slot]; ++k) {
      std::uint64_t next = 0;
      if (__builtin_mul_overflow(n, p, &next) || next > kMaxIndex) {
        throw OverflowError("index_of: product exceeds 2^63 - 1");
      }
      n = next;
    }
  }
  return n;
}

std::uint64_t monomial_turns(const MultiIndex& alpha, std::span<const TorusPoint> z) {
  const auto exps = alpha.exponents();
  if (z.size() < exps.size()) {
    throw ArityError("monomial needs " + std::to_string(exps.size()) +
                     " torus coordinates, got " + std::to_string(z.size()));
  }
  std::uint64_t turns = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) turns += z[i].turns * exps[i];
  return turns;
}

std::complex<double> monomial_eval(const MultiIndex& alpha, std::span<const TorusPoint> z) {
  return unit_from_turns(monomial_turns(alpha, z));
}

std::optional<PrimeAP> prime_ap_search(std::uint64_t length, std::uint64_t bound) {
  if (length < 2) throw DomainError("prime_ap_search: length must be at least 2");
  if (bound < length) throw DomainError("prime_ap_search: bound must be at least length");
  const PrimeTable table(bound);
  for (const std::uint64_t start : table.primes()) {
    const std::uint64_t max_step = (bound - start) / (length - 1);
    for (std::uint64_t step = 1; step <= max_step; ++step) {
      bool all_prime = true;
      for (std::uint64_t k = 1; k < length && all_prime; ++k) {
        all_prime = table.is_prime(start + k * step);
      }
      if (all_prime) return PrimeAP{start, step, length};
    }
  }
  return std::nullopt;
}

}  // namespace hardy
