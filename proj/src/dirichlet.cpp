#include "hardy/dirichlet.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/errors.hpp"
#include "torus_family.hpp"

namespace hardy {

DirichletPolynomial::DirichletPolynomial(SpaceSpec space, std::map<std::uint64_t, Element> terms)
    : space_(std::move(space)) {
  for (auto& [n, x] : terms) set(n, std::move(x));
}

DirichletPolynomial& DirichletPolynomial::set(std::uint64_t n, Element x) {
  if (n == 0) throw DomainError("Dirichlet index n must be positive");
  check_conforms(space_, x);
  terms_.insert_or_assign(n, std::move(x));
  return *this;
}

bool DirichletPolynomial::is_zero() const noexcept {
  for (const auto& [n, x] : terms_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

DirichletPolynomial DirichletPolynomial::scaled(Complex c) const {
  DirichletPolynomial out(space_);
  for (const auto& [n, x] : terms_) out.terms_.emplace(n, x.scaled(c));
  return out;
}

Element coefficient(const DirichletPolynomial& d, std::uint64_t n) {
  const auto it = d.terms().find(n);
  return it == d.terms().end() ? zero_element(d.space()) : it->second;
}

DirichletPolynomial partial_sum(const DirichletPolynomial& d, std::uint64_t N) {
  if (N == 0) throw DomainError("partial_sum: N must be positive");
  DirichletPolynomial out(d.space());
  for (const auto& [n, x] : d.terms()) {
    if (n > N) break;
    out.set(n, x);
  }
  return out;
}

DirichletPolynomial vertical_translate(const DirichletPolynomial& d, double sigma) {
  if (!(sigma >= 0.0)) throw DomainError("vertical_translate: sigma must be non-negative");
  if (sigma == 0.0) return d;
  DirichletPolynomial out(d.space());
  for (const auto& [n, x] : d.terms()) {
    out.set(n, x.scaled(std::pow(static_cast<double>(n), -sigma)));
  }
  return out;
}

PolytorusPolynomial bohr_lift(const DirichletPolynomial& d) {
  PolytorusPolynomial f{d.space(), {}, 0};
  for (const auto& [n, x] : d.terms()) {
    MultiIndex alpha = factorize(n);
    f.variables = std::max(f.variables, alpha.size());
    f.terms.emplace(std::move(alpha), x);
  }
  return f;
}

namespace {

void check_p(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("exponent p must lie in [1, infinity)");
}

double parseval(const SpaceSpec& space, const std::vector<Element>& xs, const GridPolicy& policy) {
  double s = 0.0;
  for (const auto& x : xs) {
    const double v = norm(space, x, policy).value;
    s += v * v;
  }
  return std::sqrt(s);
}

// Cases every polytorus-type norm shares: zero, a single term, Parseval.
std::optional<Estimate> closed_form(const SpaceSpec& space, const std::vector<Element>& xs,
                                    double p, const SamplerConfig& cfg) {
  if (xs.empty()) return Estimate::exact(0.0);
  // ||z^alpha x|| = ||x|| at every point.
  if (xs.size() == 1) return norm(space, xs.front(), cfg.grid);
  if (p == 2.0 && space.is_hilbert() && cfg.method == Method::automatic) {
    return Estimate::exact(parseval(space, xs, cfg.grid));
  }
  return std::nullopt;
}

}  // namespace

Estimate polytorus_norm(const PolytorusPolynomial& f, double p, const SamplerConfig& cfg) {
  check_p(p);
  cfg.validate();
  std::vector<MultiIndex> alphas;
  std::vector<Element> xs;
  for (const auto& [alpha, x] : f.terms) {
    if (x.is_zero()) continue;
    alphas.push_back(alpha);
    xs.push_back(x);
  }
  if (auto e = closed_form(f.space, xs, p, cfg)) return *e;

  const auto family = detail::make_torus_family(f.space, alphas, std::move(xs));
  const bool grid_allowed = p == 2.0 && family.variables() <= 4;
  const auto plan = detail::plan_sampling(family, grid_allowed, cfg);
  const std::vector<std::vector<Complex>> ones{std::vector<Complex>(family.size(), Complex{1.0, 0.0})};
  return detail::pattern_norms(family, ones, p, plan, cfg).front();
}

Estimate hp_norm(const DirichletPolynomial& d, double p, const SamplerConfig& cfg) {
  check_p(p);
  if (d.is_zero()) return Estimate::exact(0.0);
  return polytorus_norm(bohr_lift(d), p, cfg);
}

Estimate circle_hp_norm(std::span<const Element> xs, const SpaceSpec& space, double p,
                        const SamplerConfig& cfg) {
  check_p(p);
  cfg.validate();
  std::vector<std::uint64_t> exponents;
  std::vector<Element> nonzero;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    check_conforms(space, xs[i]);
    if (xs[i].is_zero()) continue;
    exponents.push_back(i + 1);
    nonzero.push_back(xs[i]);
  }
  if (nonzero.size() <= 1) return *closed_form(space, nonzero, p, cfg);
  const auto family = detail::make_circle_family(space, exponents, std::move(nonzero));
  const auto plan = detail::plan_sampling(family, true, cfg);
  const std::vector<std::vector<Complex>> ones{std::vector<Complex>(family.size(), Complex{1.0, 0.0})};
  return detail::pattern_norms(family, ones, p, plan, cfg).front();
}

Estimate dirichlet_kernel_l1(std::uint64_t N) {
  if (N == 0) throw DomainError("dirichlet_kernel_l1: N must be positive");
  if (N == 1) return Estimate::exact(1.0);

  const double n = static_cast<double>(N);
  const double pi = std::numbers::pi;

  // |D_N| is smooth between consecutive zeros 2*pi*k/N; integrate arc by arc
  // over [0, pi] and use the symmetry theta -> 2*pi - theta. On arc k,
  // |sin(N theta/2)| = |sin(N u/2)| with u = theta - 2*pi*k/N, which keeps the
  // numerator accurate for large N.
  using boost::math::quadrature::gauss_kronrod;
  // The Kronrod error estimate bottoms out near N * epsilon relative to the
  // arc integral; asking for less only bisects roundoff.
  const double tolerance = std::max(1e-12, 16.0 * std::numeric_limits<double>::epsilon() * n);
  double total = 0.0;
  double error = 0.0;
  for (std::uint64_t k = 0;; ++k) {
    const double a = 2.0 * pi * static_cast<double>(k) / n;
    if (a >= pi) break;
    const double width = std::min(pi, 2.0 * pi * static_cast<double>(k + 1) / n) - a;
    auto kernel = [n, a](double u) {
      const double s = std::sin((a + u) / 2.0);
      if (s == 0.0) return n;
      return std::abs(std::sin(n * u / 2.0) / s);
    };
    double arc_error = 0.0;
    total += gauss_kronrod<double, 31>::integrate(kernel, 0.0, width, 15, tolerance, &arc_error);
    error += arc_error;
  }
  Estimate e;
  e.value = total / pi;
  e.abs_error = error / pi;
  e.mode = Mode::quadrature;
  return e;
}

}  // namespace hardy
