#pragma once

// RUC/RUD ratios, lower bounds on the extremal constants by derivative-free
// search, type/cotype witnesses, and the growth experiments built on the
// Dirichlet kernel and the summing basis.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/bohr.hpp"
#include "hardy/dirichlet.hpp"
#include "hardy/estimate.hpp"
#include "hardy/spaces.hpp"

namespace hardy {

struct RatioReport {
  Estimate numerator;
  Estimate denominator;
  double ratio = 0.0;  // numerator.value / denominator.value
  std::string instance;
};

/// ||D||_{H_p^rad(X)} / ||D||_{H_p(X)}. Both norms use the same seed, so the
/// H_p norm is the all-plus pattern of the randomized one.
RatioReport ruc_ratio(const DirichletPolynomial& d, double p, const SamplerConfig& cfg = {});

/// ||D||_{H_p(X)} / ||D||_{H_p^rad(X)}.
RatioReport rud_ratio(const DirichletPolynomial& d, double p, const SamplerConfig& cfg = {});

struct SearchConfig {
  unsigned restarts = 4;
  /// Ratio evaluations allowed per restart.
  unsigned iterations = 200;
  double magnitude_step = 0.5;
  double phase_step = 1.5707963267948966;
  /// Both steps shrink by this factor after a sweep without improvement.
  double decay = 0.5;
  /// A restart stops once the magnitude step falls below this.
  double min_step = 1e-3;

  void validate() const;
};

struct SearchResult {
  /// Best coefficients found, normalized to max |a_n| = 1.
  std::vector<Complex> coefficients;
  RatioReport best;
  /// Ratio at the all-ones starting point.
  double start_ratio = 0.0;
  std::uint64_t evaluations = 0;
};

/// Maximizes ruc_ratio(sum_n a_n x_n n^{-s}) over complex a with
/// max |a_n| = 1, where vectors[i] is x_{i+1}. Restart 0 starts from all
/// ones, later restarts from random points; each runs a compass search over
/// magnitudes and phases and keeps the incumbent on ties. Every evaluation
/// uses cfg.seed, so comparisons share their random numbers. The result is
/// a lower bound on the RUC constant of the family.
SearchResult ruc_constant_search(const SpaceSpec& space, std::span<const Element> vectors, double p,
                                 const SearchConfig& scfg, const SamplerConfig& cfg = {});

/// (E||sum eps_n x_n||^2)^{1/2} / (sum ||x_n||^2)^{1/2}. Mode and stderr
/// come from the sign average.
Estimate type_constant_witness(std::span<const Element> xs, const SpaceSpec& space,
                             const SamplerConfig& cfg = {});

/// (sum ||x_n||^2)^{1/2} / (E||sum eps_n x_n||^2)^{1/2}.
Estimate cotype_constant_witness(std::span<const Element> xs, const SpaceSpec& space,
                               const SamplerConfig& cfg = {});

struct PrimeApRow {
  std::uint64_t length = 0;
  std::optional<PrimeAP> ap;
  Estimate lhs;  // sqrt(N)
  Estimate rhs;  // L1 norm of the Dirichlet kernel of length N
  /// ||sum_{n in A_N} w^n||_{L_1(T)} evaluated directly on the progression.
  Estimate rhs_direct;
  double ratio = 0.0;
};

/// For each length N: a prime progression A_N within `bound`, and the
/// comparison sqrt(N) against the L1 norm of sum_{n in A_N} w^n. Lengths with
/// no progression within bound produce a row with an empty `ap`.
std::vector<PrimeApRow> experiment_prime_ap(std::span<const std::uint64_t> lengths,
                                            std::uint64_t bound, const SamplerConfig& cfg = {});

struct LacunaryRow {
  std::uint64_t length = 0;
  Estimate lhs;  // ||sum_{n<=N} w^n||_{L_2} = sqrt(N)
  Estimate rhs;  // ||sum_{n<=N} w^n||_{L_1}
  double ratio = 0.0;
};

/// Unit coefficients on the powers of two; lifts to sum_n z_1^n.
std::vector<LacunaryRow> experiment_lacunary_power(std::span<const std::uint64_t> lengths,
                                                   const SamplerConfig& cfg = {});

struct SummingReport {
  /// || sup_k |sum_{n=k}^m a_n n^{-s}| ||_{H_2}
  Estimate sup_norm;
  double l2 = 0.0;
  double ratio = 0.0;
  /// sup_norm + 3 stderr >= l2.
  bool lower_bound_holds = false;
};

/// Monte Carlo over the Bohr lift, taking the maximal tail sum per sample.
SummingReport experiment_summing_basis(std::span<const Complex> a, const SamplerConfig& cfg = {});

struct KernelRow {
  std::uint64_t length = 0;
  Estimate l1;
  double asymptote = 0.0;  // (4/pi^2) ln N
};

struct KernelReport {
  std::vector<KernelRow> rows;
  /// Least-squares fit l1 ~ slope * ln N + intercept (needs two distinct N).
  double slope = 0.0;
  double intercept = 0.0;
};

KernelReport experiment_kernel(std::span<const std::uint64_t> lengths);

}  // namespace hardy
