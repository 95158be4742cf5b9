#include "torus_family.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hardy/errors.hpp"
#include "moments.hpp"

namespace hardy::detail {

TorusFamily make_torus_family(const SpaceSpec& space, std::span<const MultiIndex> alphas,
                              std::vector<Element> elements) {
  if (alphas.size() != elements.size()) throw ShapeError("torus family: size mismatch");
  std::map<std::size_t, std::uint32_t> active;  // prime slot -> variable
  for (const auto& alpha : alphas) {
    const auto exps = alpha.exponents();
    for (std::size_t slot = 0; slot < exps.size(); ++slot) {
      if (exps[slot] != 0) active.emplace(slot, 0);
    }
  }
  std::uint32_t next = 0;
  for (auto& [slot, var] : active) var = next++;

  TorusFamily family{space, std::move(elements), {}, std::vector<std::uint64_t>(active.size(), 0)};
  for (const auto& alpha : alphas) {
    auto& mono = family.monomials.emplace_back();
    const auto exps = alpha.exponents();
    for (std::size_t slot = 0; slot < exps.size(); ++slot) {
      if (exps[slot] == 0) continue;
      const std::uint32_t var = active.at(slot);
      mono.emplace_back(var, exps[slot]);
      family.max_exponent[var] = std::max<std::uint64_t>(family.max_exponent[var], exps[slot]);
    }
  }
  return family;
}

TorusFamily make_circle_family(const SpaceSpec& space, std::span<const std::uint64_t> exponents,
                               std::vector<Element> elements) {
  if (exponents.size() != elements.size()) throw ShapeError("circle family: size mismatch");
  TorusFamily family{space, std::move(elements), {}, {0}};
  for (const auto e : exponents) {
    auto& mono = family.monomials.emplace_back();
    if (e != 0) mono.emplace_back(0, e);
    family.max_exponent[0] = std::max(family.max_exponent[0], e);
  }
  return family;
}

SamplingPlan plan_sampling(const TorusFamily& family, bool grid_allowed, const SamplerConfig& cfg) {
  SamplingPlan plan;
  plan.seed = cfg.seed;
  if (grid_allowed && cfg.method == Method::automatic) {
    plan.grid = make_grid(family.max_exponent, cfg.grid);
  }
  plan.points = plan.grid ? plan.grid->points : cfg.samples;
  return plan;
}

namespace {

Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct PatternWorker {
  const TorusFamily* family;
  std::span<const std::vector<Complex>> patterns;
  const SamplingPlan* plan;
  double p;
  CombinationNorm norm;
  std::vector<TorusPoint> z;
  std::vector<Complex> phase;
  std::vector<Complex> coeffs;

  void operator()(std::uint64_t i, std::span<Moments> acc) {
    bool base = false;
    if (plan->grid) {
      base = plan->grid->point(i, z);
    } else {
      random_torus_point(plan->seed, i, z);
    }
    for (std::size_t n = 0; n < family->size(); ++n) {
      std::uint64_t turns = 0;
      for (const auto& [var, e] : family->monomials[n]) turns += z[var].turns * e;
      phase[n] = unit_from_turns(turns);
    }
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      const auto& pattern = patterns[k];
      for (std::size_t n = 0; n < phase.size(); ++n) coeffs[n] = mul(pattern[n], phase[n]);
      const Estimate inner = norm.estimate(coeffs);
      const double raw = inner.value;
      const double value = powered(raw, p);
      acc[3 * k].add(raw, value);
      if (base) acc[3 * k + 1].add(raw, value);
      const double err = inner_error(inner);
      acc[3 * k + 2].add(err, err);
    }
  }
};

}  // namespace

std::vector<Estimate> pattern_norms(const TorusFamily& family,
                                    std::span<const std::vector<Complex>> patterns, double p,
                                    const SamplingPlan& plan, const SamplerConfig& cfg) {
  for (const auto& pattern : patterns) {
    if (pattern.size() != family.size()) throw ShapeError("pattern length mismatch");
  }
  PatternWorker proto{&family,
                      patterns,
                      &plan,
                      p,
                      CombinationNorm(family.space, family.elements, cfg.grid),
                      std::vector<TorusPoint>(family.variables()),
                      std::vector<Complex>(family.size()),
                      std::vector<Complex>(family.size())};
  const auto moments = accumulate(plan.points, 3 * patterns.size(), cfg.threads, proto);

  std::vector<Estimate> out;
  out.reserve(patterns.size());
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    Estimate e;
    if (plan.grid) {
      e = power_mean_estimate(moments[3 * k], p, Mode::quadrature);
      const Estimate base = power_mean_estimate(moments[3 * k + 1], p, Mode::quadrature);
      e.abs_error = std::abs(e.value - base.value);
    } else {
      e = power_mean_estimate(moments[3 * k], p, Mode::mc);
    }
    // Perturbing every inner norm by at most delta moves the outer power
    // mean by at most delta.
    const Moments& err = moments[3 * k + 2];
    if (err.max_raw > 0.0) e.abs_error += err.max_raw;
    out.push_back(e);
  }
  return out;
}

double sorted_power_mean(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) return values.front();
  double sum = 0.0;
  for (double v : values) sum += powered(v, q);
  const double mean = sum / static_cast<double>(values.size());
  return q == 1.0 ? mean : std::pow(mean, 1.0 / q);
}

}  // namespace hardy::detail
