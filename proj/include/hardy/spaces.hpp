#pragma once

// Norm oracles for the finite-dimensional complex Banach spaces used as
// coefficient targets: l_r^d, sup-norm spaces, Hilbert space and
// trigonometric-polynomial models of L_r(T^k).

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/estimate.hpp"

namespace hardy {

using Complex = std::complex<double>;

/// l_r^d; r may be +infinity.
struct SequenceSpace {
  double r;
  std::size_t d;
  friend bool operator==(const SequenceSpace&, const SequenceSpace&) = default;
};
struct HilbertSpace {
  std::size_t d;
  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;
};
struct SupSpace {
  std::size_t d;
  friend bool operator==(const SupSpace&, const SupSpace&) = default;
};
/// L_r(T^k) restricted to trigonometric polynomials, 1 <= r < infinity.
struct FunctionLrSpace {
  double r;
  std::size_t k;
  friend bool operator==(const FunctionLrSpace&, const FunctionLrSpace&) = default;
};

class SpaceSpec {
 public:
  using Variant = std::variant<SequenceSpace, HilbertSpace, SupSpace, FunctionLrSpace>;

  /// Validates r >= 1 and positive dimensions (DomainError otherwise).
  explicit SpaceSpec(Variant v);

  static SpaceSpec sequence(double r, std::size_t d) { return SpaceSpec(SequenceSpace{r, d}); }
  static SpaceSpec hilbert(std::size_t d) { return SpaceSpec(HilbertSpace{d}); }
  static SpaceSpec sup(std::size_t d) { return SpaceSpec(SupSpace{d}); }
  static SpaceSpec function_lr(double r, std::size_t k) {
    return SpaceSpec(FunctionLrSpace{r, k});
  }
  /// The complex scalars, i.e. Hilbert(1).
  static SpaceSpec scalars() { return hilbert(1); }

  const Variant& variant() const noexcept { return v_; }
  bool is_function_space() const noexcept { return std::holds_alternative<FunctionLrSpace>(v_); }
  /// Coordinate length for sequence-type spaces, torus dimension k for L_r.
  std::size_t dimension() const noexcept;
  /// True when the norm comes from an inner product (Hilbert, l_2, L_2).
  bool is_hilbert() const noexcept;
  std::string describe() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  Variant v_;
};

/// Exponent vector of one trigonometric monomial; any signed integers with
/// |e| <= 2^62.
using Frequency = std::vector<std::int64_t>;

inline constexpr std::int64_t kMaxTrigExponent = std::int64_t{1} << 62;

class TrigPolynomial {
 public:
  explicit TrigPolynomial(std::size_t variables = 1) : variables_(variables) {}

  std::size_t variables() const noexcept { return variables_; }
  const std::map<Frequency, Complex>& terms() const noexcept { return terms_; }

  /// Adds c * w^f (merging with an existing monomial).
  TrigPolynomial& add(Frequency f, Complex c);

  Complex operator()(std::span<const TorusPoint> w) const;

  std::uint64_t max_abs_exponent(std::size_t var) const;

  friend bool operator==(const TrigPolynomial&, const TrigPolynomial&) = default;

 private:
  std::size_t variables_;
  std::map<Frequency, Complex> terms_;
};

/// A vector of some space: complex coordinates, or a trigonometric
/// polynomial for L_r(T^k).
class Element {
 public:
  Element() = default;
  Element(std::vector<Complex> coords) : data_(std::move(coords)) {}
  Element(std::initializer_list<Complex> coords) : data_(std::vector<Complex>(coords)) {}
  Element(TrigPolynomial f) : data_(std::move(f)) {}

  bool is_function() const noexcept { return std::holds_alternative<TrigPolynomial>(data_); }
  /// Throws ShapeError for function elements.
  std::span<const Complex> coords() const;
  const TrigPolynomial& function() const;

  bool is_zero() const noexcept;

  Element scaled(Complex c) const;
  /// *this += c * x; both must have the same shape.
  Element& add_scaled(const Element& x, Complex c);

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::variant<std::vector<Complex>, TrigPolynomial> data_;
};

Element zero_element(const SpaceSpec& space);

/// Throws ShapeError when x does not belong to `space`.
void check_conforms(const SpaceSpec& space, const Element& x);

/// Exact norm of a coordinate vector in a sequence-type space.
double coordinate_norm(const SpaceSpec& space, std::span<const Complex> coords);

/// Norm of x. Exact for sequence-type spaces; for L_r(T^k) a trapezoid rule
/// with grid-doubling error estimate, Monte Carlo when the grid is over
/// budget, and Parseval for r = 2 in that case.
Estimate norm(const SpaceSpec& space, const Element& x, const GridPolicy& policy = {});

/// sum_beta c_beta w^beta with exact fixed-point exponent reduction.
Complex trig_eval(const Element& x, std::span<const TorusPoint> w);

/// s_n = e_1 + ... + e_n in Sup(m), with n one-based.
Element summing_basis_vector(std::size_t n, std::size_t m);

struct SummingCombination {
  Element element;  // in Sup(m)
  double norm;      // sup_k |a_k + ... + a_m|
};

/// sum_n a_n s_n and its norm via the tail-sum formula.
SummingCombination summing_combination(std::span<const Complex> a);

/// Repeated norm evaluation of combinations sum_n c_n x_n over a fixed family.
///
/// Coordinate spaces sum into a scratch buffer. Function spaces precompute
/// the family on one sampling grid (the doubled trapezoid grid, or the Monte
/// Carlo fallback points) so each call is a weighted power mean, or an exact
/// Parseval sum for r = 2 when the grid is over budget. Copies share the
/// precomputed data and own their scratch, so give each thread its own copy.
class CombinationNorm {
 public:
  CombinationNorm(const SpaceSpec& space, std::vector<Element> family,
                  const GridPolicy& policy = {});

  const SpaceSpec& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return family_size_; }

  double operator()(std::span<const Complex> coeffs) { return estimate(coeffs).value; }

  /// The norm with its error: the grid difference against the base subgrid,
  /// or the standard error on the Monte Carlo fallback.
  Estimate estimate(std::span<const Complex> coeffs);

  struct FunctionData;

 private:
  SpaceSpec space_;
  std::size_t family_size_ = 0;
  std::shared_ptr<const std::vector<Complex>> coords_;  // family_size x d, row major
  std::shared_ptr<const FunctionData> function_;
  std::vector<Complex> scratch_;
};

}  // namespace hardy
