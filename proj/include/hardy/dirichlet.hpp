#pragma once

// Vector-valued Dirichlet polynomials sum_n x_n n^{-s}, their Bohr lift to
// the polytorus and H_p(X) norm evaluation.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/estimate.hpp"
#include "hardy/spaces.hpp"

namespace hardy {

class DirichletPolynomial {
 public:
  explicit DirichletPolynomial(SpaceSpec space) : space_(std::move(space)) {}
  DirichletPolynomial(SpaceSpec space, std::map<std::uint64_t, Element> terms);

  const SpaceSpec& space() const noexcept { return space_; }
  const std::map<std::uint64_t, Element>& terms() const noexcept { return terms_; }

  /// Sets x_n. Throws DomainError for n == 0, ShapeError for a foreign element.
  DirichletPolynomial& set(std::uint64_t n, Element x);

  /// True when every stored coefficient is zero (including no terms at all).
  bool is_zero() const noexcept;

  DirichletPolynomial scaled(Complex c) const;

  friend bool operator==(const DirichletPolynomial&, const DirichletPolynomial&) = default;

 private:
  SpaceSpec space_;
  std::map<std::uint64_t, Element> terms_;
};

/// The lifted polynomial sum_alpha x_{n(alpha)} z^alpha.
struct PolytorusPolynomial {
  SpaceSpec space;
  std::map<MultiIndex, Element> terms;
  /// Largest prime slot used by any key.
  std::size_t variables = 0;
};

/// x_n, or the zero element when n is not in the support.
Element coefficient(const DirichletPolynomial& d, std::uint64_t n);

/// Terms with n <= N.
DirichletPolynomial partial_sum(const DirichletPolynomial& d, std::uint64_t N);

/// Scales x_n by n^{-sigma}; sigma must be non-negative.
DirichletPolynomial vertical_translate(const DirichletPolynomial& d, double sigma);

PolytorusPolynomial bohr_lift(const DirichletPolynomial& d);

/// ||f||_{L_p(T^infty, X)} for a lifted polynomial.
///
/// Exact when the norm is constant or Parseval applies (p = 2, Hilbert X);
/// trapezoid quadrature for p = 2 on at most four active variables when the
/// grid fits the budget; Monte Carlo over the active coordinates otherwise.
Estimate polytorus_norm(const PolytorusPolynomial& f, double p, const SamplerConfig& cfg = {});

/// ||D||_{H_p(X)}, computed as polytorus_norm(bohr_lift(D)).
Estimate hp_norm(const DirichletPolynomial& d, double p, const SamplerConfig& cfg = {});

/// (int_T ||sum_n x_n z^n||^p dz)^{1/p} where xs[0] multiplies z^1.
Estimate circle_hp_norm(std::span<const Element> xs, const SpaceSpec& space, double p,
                        const SamplerConfig& cfg = {});

/// (1/2pi) int |sum_{n=1}^N e^{in theta}| d theta, adaptive Gauss-Kronrod on the
/// arcs between consecutive zeros; absolute error at most 1e-8.
Estimate dirichlet_kernel_l1(std::uint64_t N);

}  // namespace hardy
