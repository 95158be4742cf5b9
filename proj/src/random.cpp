#include "hardy/random.hpp"

#include <cmath>
#include <numbers>

#include "hardy/counter_rng.hpp"
#include "hardy/errors.hpp"
#include "moments.hpp"
#include "torus_family.hpp"

namespace hardy {

namespace {

void check_q(double q) {
  if (!(q >= 1.0) || std::isinf(q)) throw DomainError("moment q must lie in [1, infinity)");
}

std::vector<Element> nonzero_members(std::span<const Element> xs, const SpaceSpec& space) {
  std::vector<Element> out;
  for (const auto& x : xs) {
    check_conforms(space, x);
    if (!x.is_zero()) out.push_back(x);
  }
  return out;
}

double parseval(const SpaceSpec& space, const std::vector<Element>& xs, const GridPolicy& policy) {
  double s = 0.0;
  for (const auto& x : xs) {
    const double v = norm(space, x, policy).value;
    s += v * v;
  }
  return std::sqrt(s);
}

// Sign pattern number i of the half enumeration: eps_0 = +1, eps_n = -1 when
// bit n-1 of i is set.
double half_pattern_sign(std::uint64_t i, std::size_t n) {
  if (n == 0) return 1.0;
  return ((i >> (n - 1)) & 1U) != 0 ? -1.0 : 1.0;
}

// Monte Carlo (E||sum_n c_n x_n||^q)^{1/q} with c drawn by `draw`.
template <class Draw>
Estimate sampled_average(const std::vector<Element>& xs, const SpaceSpec& space, double q,
                         const SamplerConfig& cfg, Draw draw) {
  struct Worker {
    CombinationNorm norm;
    std::vector<Complex> coeffs;
    Draw draw;
    double q;
    void operator()(std::uint64_t i, std::span<detail::Moments> acc) {
      draw(i, coeffs);
      const Estimate inner = norm.estimate(coeffs);
      acc[0].add(inner.value, detail::powered(inner.value, q));
      const double err = detail::inner_error(inner);
      acc[1].add(err, err);
    }
  };
  Worker proto{CombinationNorm(space, xs, cfg.grid), std::vector<Complex>(xs.size()), draw, q};
  const auto m = detail::accumulate(cfg.samples, 2, cfg.threads, proto);
  Estimate e = detail::power_mean_estimate(m[0], q, Mode::mc);
  if (m[1].max_raw > 0.0) e.abs_error += m[1].max_raw;
  return e;
}

}  // namespace

Estimate rademacher_average(std::span<const Element> xs, const SpaceSpec& space, double q,
                            const SamplerConfig& cfg) {
  check_q(q);
  cfg.validate();
  const auto members = nonzero_members(xs, space);
  const std::size_t m = members.size();
  if (m == 0) return Estimate::exact(0.0);

  if (m <= cfg.exact_cutoff) {
    const std::uint64_t patterns = std::uint64_t{1} << (m - 1);
    std::vector<double> values(patterns);
    std::vector<double> errors(patterns);
    struct Fill {
      CombinationNorm norm;
      std::vector<Complex> coeffs;
      std::vector<double>* out;
      std::vector<double>* err;
      void operator()(std::uint64_t i) {
        for (std::size_t n = 0; n < coeffs.size(); ++n) coeffs[n] = half_pattern_sign(i, n);
        const Estimate inner = norm.estimate(coeffs);
        (*out)[i] = inner.value;
        (*err)[i] = detail::inner_error(inner);
      }
    };
    detail::parallel_for(patterns, cfg.threads,
                         Fill{CombinationNorm(space, members, cfg.grid), std::vector<Complex>(m), &values, &errors});
    Estimate e = Estimate::exact(detail::sorted_power_mean(std::move(values), q));
    e.samples_used = patterns * 2;
    const double err = *std::max_element(errors.begin(), errors.end());
    if (err > 0.0) {
      e.abs_error = err;
      e.mode = Mode::quadrature;
    }
    return e;
  }

  const std::uint64_t seed = cfg.seed ^ stream_tag::signs;
  return sampled_average(members, space, q, cfg, [seed](std::uint64_t i, std::vector<Complex>& c) {
    CounterRng rng(seed, i);
    for (auto& z : c) z = rng.sign();
  });
}

Estimate steinhaus_average(std::span<const Element> xs, const SpaceSpec& space, double q,
                           const SamplerConfig& cfg) {
  check_q(q);
  cfg.validate();
  const auto members = nonzero_members(xs, space);
  if (members.empty()) return Estimate::exact(0.0);
  if (members.size() == 1) return norm(space, members.front(), cfg.grid);
  if (q == 2.0 && space.is_hilbert()) return Estimate::exact(parseval(space, members, cfg.grid));

  const std::uint64_t seed = cfg.seed ^ stream_tag::torus;
  return sampled_average(members, space, q, cfg, [seed](std::uint64_t i, std::vector<Complex>& c) {
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = unit_from_turns(counter_hash(seed, i, n));
  });
}

Estimate gaussian_average(std::span<const Element> xs, const SpaceSpec& space, double q,
                          const SamplerConfig& cfg, GaussianKind kind) {
  check_q(q);
  cfg.validate();
  const auto members = nonzero_members(xs, space);
  if (members.empty()) return Estimate::exact(0.0);
  if (members.size() == 1) {
    // (E|g|^q)^{1/q} ||x||; |g|^2 is Exp(1) for the complex Gaussian.
    const double moment = kind == GaussianKind::complex_standard
                              ? std::tgamma(1.0 + q / 2.0)
                              : std::pow(2.0, q / 2.0) * std::tgamma((q + 1.0) / 2.0) /
                                    std::sqrt(std::numbers::pi);
    Estimate e = norm(space, members.front(), cfg.grid);
    e.value *= std::pow(moment, 1.0 / q);
    return e;
  }
  if (q == 2.0 && space.is_hilbert()) return Estimate::exact(parseval(space, members, cfg.grid));

  const std::uint64_t seed = cfg.seed ^ stream_tag::gauss;
  if (kind == GaussianKind::complex_standard) {
    return sampled_average(members, space, q, cfg, [seed](std::uint64_t i, std::vector<Complex>& c) {
      CounterRng rng(seed, i);
      for (auto& z : c) z = rng.normal_pair() * (1.0 / std::numbers::sqrt2);
    });
  }
  return sampled_average(members, space, q, cfg, [seed](std::uint64_t i, std::vector<Complex>& c) {
    CounterRng rng(seed, i);
    for (std::size_t n = 0; n < c.size(); n += 2) {
      const Complex pair = rng.normal_pair();
      c[n] = pair.real();
      if (n + 1 < c.size()) c[n + 1] = pair.imag();
    }
  });
}

Estimate rad_norm(std::span<const Element> xs, const SpaceSpec& space, const SamplerConfig& cfg) {
  return rademacher_average(xs, space, 1.0, cfg);
}

Estimate hprad_norm(const DirichletPolynomial& d, double p, const SamplerConfig& cfg) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("exponent p must lie in [1, infinity)");
  cfg.validate();
  std::vector<MultiIndex> alphas;
  std::vector<Element> xs;
  for (const auto& [n, x] : d.terms()) {
    if (x.is_zero()) continue;
    alphas.push_back(factorize(n));
    xs.push_back(x);
  }
  const std::size_t m = xs.size();
  if (m == 0) return Estimate::exact(0.0);
  // A single term, or Parseval, makes every sign pattern give the same norm.
  if (m == 1 || (p == 2.0 && d.space().is_hilbert() && cfg.method == Method::automatic)) {
    return hp_norm(d, p, cfg);
  }

  const auto family = detail::make_torus_family(d.space(), alphas, std::move(xs));
  const auto plan = detail::plan_sampling(family, p == 2.0 && family.variables() <= 4, cfg);

  const bool enumerate = m <= cfg.exact_cutoff;
  const std::uint64_t count = enumerate ? (std::uint64_t{1} << (m - 1)) : cfg.sign_samples;
  std::vector<std::vector<Complex>> patterns(count, std::vector<Complex>(m));
  for (std::uint64_t i = 0; i < count; ++i) {
    CounterRng rng(cfg.seed ^ stream_tag::signs, i);
    for (std::size_t n = 0; n < m; ++n) {
      patterns[i][n] = enumerate ? half_pattern_sign(i, n) : rng.sign();
    }
  }

  const auto inner = detail::pattern_norms(family, patterns, p, plan, cfg);
  std::vector<double> values;
  double inner_se = 0.0;
  double inner_err = 0.0;
  for (const auto& e : inner) {
    values.push_back(e.value);
    inner_se += e.stderr_;
    inner_err += e.abs_error;
  }
  const double k = static_cast<double>(count);
  Estimate out;
  out.mode = inner.front().mode;
  out.samples_used = plan.points * count;
  out.abs_error = inner_err / k;
  inner_se /= k;
  if (enumerate) {
    out.value = detail::sorted_power_mean(values, 1.0);
    out.stderr_ = inner_se;
  } else {
    detail::Moments outer;
    for (double v : values) outer.add(v, v);
    out.value = detail::power_mean_estimate(outer, 1.0, Mode::mc).value;
    const double outer_var = count > 1 ? outer.m2 / (k - 1.0) / k : 0.0;
    out.stderr_ = std::sqrt(outer_var + inner_se * inner_se);
    out.mode = Mode::mc;
  }
  return out;
}

double kahane_ratio(std::span<const Element> xs, const SpaceSpec& space, double p,
                    const SamplerConfig& cfg) {
  const Estimate first = rademacher_average(xs, space, 1.0, cfg);
  if (first.value == 0.0) throw UndefinedRatioError("kahane_ratio: the sign sum vanishes identically");
  return rademacher_average(xs, space, p, cfg).value / first.value;
}

ContractionCheck contraction_check(std::span<const Element> xs, std::span<const Complex> a,
                                   const SpaceSpec& space, const SamplerConfig& cfg) {
  if (xs.size() != a.size()) throw ShapeError("contraction_check: need one multiplier per vector");
  std::vector<Element> scaled;
  scaled.reserve(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) {
    if (std::abs(a[n]) > 1.0 + 1e-12) {
      throw PreconditionError("contraction_check: multiplier " + std::to_string(n) +
                              " has modulus above 1");
    }
    scaled.push_back(xs[n].scaled(a[n]));
  }
  const double half_pi = std::numbers::pi / 2.0;
  ContractionCheck out{rad_norm(scaled, space, cfg), rad_norm(xs, space, cfg), false};
  out.rhs.value *= half_pi;
  out.rhs.stderr_ *= half_pi;
  out.rhs.abs_error *= half_pi;
  const double noise = std::hypot(out.lhs.stderr_, out.rhs.stderr_);
  out.holds = out.lhs.value <= out.rhs.value * (1.0 + 1e-12) + 3.0 * noise;
  return out;
}

}  // namespace hardy
