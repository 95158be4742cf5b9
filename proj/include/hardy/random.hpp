#pragma once

// Randomized norm averages (Rademacher, Steinhaus, Gaussian), the Rad(X) and
// H_p^rad(X) norms, and checkers for Kahane's inequality and the contraction
// principle.

#include <span>

#include "hardy/dirichlet.hpp"
#include "hardy/estimate.hpp"
#include "hardy/spaces.hpp"

namespace hardy {

enum class GaussianKind { complex_standard, real_standard };

/// (E ||sum_n eps_n x_n||^q)^{1/q} over independent random signs.
///
/// Up to cfg.exact_cutoff vectors every sign pattern is enumerated (using
/// ||S|| = ||-S||, half of them); the result is then bit-identical under
/// flipping the sign of any x_n, and independent of the order of xs up to
/// rounding. Beyond that, Monte Carlo.
Estimate rademacher_average(std::span<const Element> xs, const SpaceSpec& space, double q,
                            const SamplerConfig& cfg = {});

/// Same with independent uniform unimodular multipliers. Closed form for a
/// single vector and for q = 2 in Hilbert space, Monte Carlo otherwise.
Estimate steinhaus_average(std::span<const Element> xs, const SpaceSpec& space, double q,
                           const SamplerConfig& cfg = {});

/// Same with standard Gaussians: complex with E|g|^2 = 1 by default, real
/// N(0,1) on request.
Estimate gaussian_average(std::span<const Element> xs, const SpaceSpec& space, double q,
                          const SamplerConfig& cfg = {},
                          GaussianKind kind = GaussianKind::complex_standard);

/// ||(x_n)||_{Rad(X)} = E ||sum_n eps_n x_n||.
Estimate rad_norm(std::span<const Element> xs, const SpaceSpec& space, const SamplerConfig& cfg = {});

/// E_eps ||sum_n eps_n x_n n^{-s}||_{H_p(X)}.
///
/// The outer expectation enumerates sign patterns when the support has at
/// most cfg.exact_cutoff nonzero terms and samples cfg.sign_samples patterns
/// otherwise. All patterns share one set of torus points. The reported
/// stderr averages the inner standard errors and, for a sampled outer
/// stage, adds the outer one in quadrature; treat it as approximate.
Estimate hprad_norm(const DirichletPolynomial& d, double p, const SamplerConfig& cfg = {});

/// (E||S||^p)^{1/p} / E||S|| for S = sum eps_n x_n. Throws
/// UndefinedRatioError when S vanishes identically.
double kahane_ratio(std::span<const Element> xs, const SpaceSpec& space, double p,
                    const SamplerConfig& cfg = {});

struct ContractionCheck {
  Estimate lhs;  // E||sum eps_n a_n x_n||
  Estimate rhs;  // (pi/2) E||sum eps_n x_n||
  bool holds;
};

/// Requires max |a_n| <= 1 (PreconditionError otherwise).
ContractionCheck contraction_check(std::span<const Element> xs, std::span<const Complex> a,
                                   const SpaceSpec& space, const SamplerConfig& cfg = {});

}  // namespace hardy
