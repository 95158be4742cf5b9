#include "hardy/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardy/counter_rng.hpp"
#include "hardy/errors.hpp"
#include "hardy/random.hpp"
#include "moments.hpp"
#include "torus_grid.hpp"

namespace hardy {

namespace {

std::string describe_instance(const DirichletPolynomial& d, double p) {
  std::ostringstream os;
  os << d.space().describe() << " terms=" << d.terms().size() << " p=" << p;
  return os.str();
}

RatioReport make_ratio(Estimate numerator, Estimate denominator, std::string instance) {
  if (!(denominator.value > 0.0)) throw UndefinedRatioError("ratio with zero denominator: " + instance);
  const double ratio = numerator.value / denominator.value;
  return {numerator, denominator, ratio, std::move(instance)};
}

}  // namespace

RatioReport ruc_ratio(const DirichletPolynomial& d, double p, const SamplerConfig& cfg) {
  if (d.is_zero()) throw UndefinedRatioError("ruc_ratio: zero polynomial");
  return make_ratio(hprad_norm(d, p, cfg), hp_norm(d, p, cfg), describe_instance(d, p));
}

RatioReport rud_ratio(const DirichletPolynomial& d, double p, const SamplerConfig& cfg) {
  if (d.is_zero()) throw UndefinedRatioError("rud_ratio: zero polynomial");
  return make_ratio(hp_norm(d, p, cfg), hprad_norm(d, p, cfg), describe_instance(d, p));
}

void SearchConfig::validate() const {
  if (restarts < 1 || iterations < 1) throw DomainError("search: restarts and iterations must be at least 1");
  if (!(decay > 0.0 && decay < 1.0)) throw DomainError("search: decay must lie in (0, 1)");
  if (!(magnitude_step > 0.0 && phase_step > 0.0 && min_step > 0.0)) {
    throw DomainError("search: steps must be positive");
  }
}

namespace {

struct SearchPoint {
  std::vector<double> magnitude;
  std::vector<double> phase;
};

std::vector<Complex> coefficients_of(const SearchPoint& x) {
  const double top = *std::max_element(x.magnitude.begin(), x.magnitude.end());
  std::vector<Complex> a(x.magnitude.size());
  if (top <= 0.0) return a;
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = std::polar(x.magnitude[n] / top, x.phase[n]);
  return a;
}

class RatioObjective {
 public:
  RatioObjective(const SpaceSpec& space, std::span<const Element> vectors, double p,
                 const SamplerConfig& cfg)
      : space_(space), vectors_(vectors), p_(p), cfg_(cfg) {}

  /// Empty when the combination vanishes.
  std::optional<RatioReport> operator()(const std::vector<Complex>& a) {
    ++evaluations;
    DirichletPolynomial d(space_);
    for (std::size_t n = 0; n < vectors_.size(); ++n) {
      if (a[n] == Complex{} || vectors_[n].is_zero()) continue;
      d.set(n + 1, vectors_[n].scaled(a[n]));
    }
    if (d.is_zero()) return std::nullopt;
    return ruc_ratio(d, p_, cfg_);
  }

  std::uint64_t evaluations = 0;

 private:
  const SpaceSpec& space_;
  std::span<const Element> vectors_;
  double p_;
  const SamplerConfig& cfg_;
};

}  // namespace

SearchResult ruc_constant_search(const SpaceSpec& space, std::span<const Element> vectors, double p,
                                 const SearchConfig& scfg, const SamplerConfig& cfg) {
  scfg.validate();
  cfg.validate();
  const std::size_t n_vec = vectors.size();
  if (n_vec == 0) throw DomainError("ruc_constant_search: need at least one vector");
  for (const auto& x : vectors) check_conforms(space, x);
  if (std::all_of(vectors.begin(), vectors.end(), [](const Element& x) { return x.is_zero(); })) {
    throw DomainError("ruc_constant_search: all vectors are zero");
  }

  RatioObjective objective(space, vectors, p, cfg);
  SearchResult result;
  bool have_best = false;

  for (unsigned restart = 0; restart < scfg.restarts; ++restart) {
    SearchPoint x{std::vector<double>(n_vec, 1.0), std::vector<double>(n_vec, 0.0)};
    if (restart > 0) {
      CounterRng rng(cfg.seed ^ stream_tag::search, restart);
      for (std::size_t n = 0; n < n_vec; ++n) {
        x.magnitude[n] = 0.1 + 0.9 * rng.uniform();
        x.phase[n] = 2.0 * std::numbers::pi * rng.uniform();
      }
    }
    const std::uint64_t budget_end = objective.evaluations + scfg.iterations;
    auto current = objective(coefficients_of(x));
    if (!current) continue;
    if (restart == 0) result.start_ratio = current->ratio;

    double mag_step = scfg.magnitude_step;
    double phase_step = scfg.phase_step;
    while (objective.evaluations < budget_end && mag_step >= scfg.min_step) {
      bool improved = false;
      for (std::size_t coord = 0; coord < 2 * n_vec && objective.evaluations < budget_end; ++coord) {
        const bool is_phase = coord >= n_vec;
        const std::size_t n = coord % n_vec;
        for (const double dir : {1.0, -1.0}) {
          if (objective.evaluations >= budget_end) break;
          SearchPoint trial = x;
          if (is_phase) {
            trial.phase[n] = std::remainder(trial.phase[n] + dir * phase_step, 2.0 * std::numbers::pi);
          } else {
            trial.magnitude[n] = std::clamp(trial.magnitude[n] + dir * mag_step, 0.0, 1.0);
            if (trial.magnitude[n] == x.magnitude[n]) continue;
          }
          auto candidate = objective(coefficients_of(trial));
          if (candidate && candidate->ratio > current->ratio) {
            x = std::move(trial);
            current = std::move(candidate);
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        mag_step *= scfg.decay;
        phase_step *= scfg.decay;
      }
    }

    if (!have_best || current->ratio > result.best.ratio) {
      result.best = *current;
      result.coefficients = coefficients_of(x);
      have_best = true;
    }
  }
  if (!have_best) throw UndefinedRatioError("ruc_constant_search: no nonzero combination evaluated");
  result.evaluations = objective.evaluations;
  return result;
}

namespace {

double square_sum_root(std::span<const Element> xs, const SpaceSpec& space, const GridPolicy& policy) {
  double s = 0.0;
  for (const auto& x : xs) {
    const double v = norm(space, x, policy).value;
    s += v * v;
  }
  return std::sqrt(s);
}

}  // namespace

Estimate type_constant_witness(std::span<const Element> xs, const SpaceSpec& space,
                               const SamplerConfig& cfg) {
  const double l2 = square_sum_root(xs, space, cfg.grid);
  if (l2 == 0.0) throw DomainError("type_constant_witness: all vectors are zero");
  Estimate e = rademacher_average(xs, space, 2.0, cfg);
  e.value /= l2;
  e.stderr_ /= l2;
  e.abs_error /= l2;
  return e;
}

Estimate cotype_constant_witness(std::span<const Element> xs, const SpaceSpec& space,
                                 const SamplerConfig& cfg) {
  const double l2 = square_sum_root(xs, space, cfg.grid);
  if (l2 == 0.0) throw DomainError("cotype_constant_witness: all vectors are zero");
  Estimate e = rademacher_average(xs, space, 2.0, cfg);
  if (e.value == 0.0) throw UndefinedRatioError("cotype_constant_witness: the sign sum vanishes");
  // d(l2/v) = -(l2/v^2) dv
  const double scale = l2 / (e.value * e.value);
  e.value = l2 / e.value;
  e.stderr_ *= scale;
  e.abs_error *= scale;
  return e;
}

std::vector<PrimeApRow> experiment_prime_ap(std::span<const std::uint64_t> lengths,
                                            std::uint64_t bound, const SamplerConfig& cfg) {
  std::vector<PrimeApRow> rows;
  for (const std::uint64_t length : lengths) {
    if (length == 0) throw DomainError("experiment_prime_ap: lengths must be positive");
    PrimeApRow row;
    row.length = length;
    if (length == 1) {
      row.ap = PrimeAP{2, 0, 1};
    } else if (bound >= length) {
      row.ap = prime_ap_search(length, bound);
    }
    if (!row.ap) {
      rows.push_back(row);
      continue;
    }
    row.lhs = Estimate::exact(std::sqrt(static_cast<double>(length)));
    row.rhs = dirichlet_kernel_l1(length);
    TrigPolynomial f(1);
    for (std::uint64_t k = 0; k < length; ++k) {
      f.add({static_cast<std::int64_t>(row.ap->term(k))}, Complex{1.0, 0.0});
    }
    row.rhs_direct = norm(SpaceSpec::function_lr(1.0, 1), Element(std::move(f)), cfg.grid);
    row.ratio = row.lhs.value / row.rhs.value;
    rows.push_back(row);
  }
  return rows;
}

std::vector<LacunaryRow> experiment_lacunary_power(std::span<const std::uint64_t> lengths,
                                                   const SamplerConfig&) {
  std::vector<LacunaryRow> rows;
  for (const std::uint64_t length : lengths) {
    if (length == 0) throw DomainError("experiment_lacunary_power: lengths must be positive");
    LacunaryRow row;
    row.length = length;
    row.lhs = Estimate::exact(std::sqrt(static_cast<double>(length)));
    row.rhs = dirichlet_kernel_l1(length);
    row.ratio = row.lhs.value / row.rhs.value;
    rows.push_back(row);
  }
  return rows;
}

SummingReport experiment_summing_basis(std::span<const Complex> a, const SamplerConfig& cfg) {
  if (a.empty()) throw DomainError("experiment_summing_basis: empty coefficient vector");
  cfg.validate();
  const std::size_t m = a.size();
  double l2sq = 0.0;
  for (auto c : a) l2sq += std::norm(c);

  SummingReport report;
  report.l2 = std::sqrt(l2sq);
  if (m == 1) {
    report.sup_norm = Estimate::exact(std::abs(a[0]));
  } else {
    std::vector<MultiIndex> alphas;
    std::size_t slots = 0;
    for (std::size_t n = 1; n <= m; ++n) {
      alphas.push_back(factorize(n));
      slots = std::max(slots, alphas.back().size());
    }
    struct Worker {
      std::span<const Complex> a;
      const std::vector<MultiIndex>* alphas;
      std::uint64_t seed;
      std::vector<TorusPoint> z;
      void operator()(std::uint64_t i, std::span<detail::Moments> acc) {
        detail::random_torus_point(seed, i, z);
        double best = 0.0;
        Complex tail{};
        for (std::size_t n = a.size(); n-- > 0;) {
          tail += a[n] * monomial_eval((*alphas)[n], z);
          best = std::max(best, std::abs(tail));
        }
        acc[0].add(best, best * best);
      }
    };
    const auto moments = detail::accumulate(cfg.samples, 1, cfg.threads,
                                            Worker{a, &alphas, cfg.seed, std::vector<TorusPoint>(slots)});
    report.sup_norm = detail::power_mean_estimate(moments[0], 2.0, Mode::mc);
  }
  report.ratio = report.l2 > 0.0 ? report.sup_norm.value / report.l2 : 0.0;
  report.lower_bound_holds =
      report.sup_norm.value * (1.0 + 1e-12) + 3.0 * report.sup_norm.stderr_ >= report.l2;
  return report;
}

KernelReport experiment_kernel(std::span<const std::uint64_t> lengths) {
  KernelReport report;
  const double c = 4.0 / (std::numbers::pi * std::numbers::pi);
  for (const std::uint64_t length : lengths) {
    KernelRow row;
    row.length = length;
    row.l1 = dirichlet_kernel_l1(length);
    row.asymptote = c * std::log(static_cast<double>(length));
    report.rows.push_back(row);
  }
  // Least squares of l1 against ln N.
  const double k = static_cast<double>(report.rows.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& row : report.rows) {
    const double x = std::log(static_cast<double>(row.length));
    sx += x;
    sy += row.l1.value;
    sxx += x * x;
    sxy += x * row.l1.value;
  }
  const double denom = k * sxx - sx * sx;
  if (report.rows.size() >= 2 && denom > 0.0) {
    report.slope = (k * sxy - sx * sy) / denom;
    report.intercept = (sy - report.slope * sx) / k;
  }
  return report;
}

}  // namespace hardy
