#include "hardy/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardy/errors.hpp"
#include "moments.hpp"
#include "torus_grid.hpp"

namespace hardy {

namespace {

double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

// acc += c * x without the NaN/inf recovery of std::complex multiplication.
void fma_into(Complex& acc, Complex c, Complex x) {
  acc = {acc.real() + (c.real() * x.real() - c.imag() * x.imag()),
         acc.imag() + (c.real() * x.imag() + c.imag() * x.real())};
}

std::string fmt_r(double r) {
  if (std::isinf(r)) return "inf";
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

SpaceSpec::SpaceSpec(Variant v) : v_(std::move(v)) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SequenceSpace> || std::is_same_v<T, FunctionLrSpace>) {
          if (!(s.r >= 1.0)) throw DomainError("space exponent r must be at least 1");
        }
        if constexpr (std::is_same_v<T, FunctionLrSpace>) {
          if (std::isinf(s.r)) throw DomainError("L_r(T^k) requires finite r");
          if (s.k < 1) throw DomainError("torus dimension k must be at least 1");
        } else {
          if (s.d < 1) throw DomainError("dimension d must be at least 1");
        }
      },
      v_);
}

std::size_t SpaceSpec::dimension() const noexcept {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, FunctionLrSpace>) {
          return s.k;
        } else {
          return s.d;
        }
      },
      v_);
}

bool SpaceSpec::is_hilbert() const noexcept {
  if (std::holds_alternative<HilbertSpace>(v_)) return true;
  if (const auto* s = std::get_if<SequenceSpace>(&v_)) return s->r == 2.0 || s->d == 1;
  if (const auto* s = std::get_if<SupSpace>(&v_)) return s->d == 1;
  if (const auto* s = std::get_if<FunctionLrSpace>(&v_)) return s->r == 2.0;
  return false;
}

std::string SpaceSpec::describe() const {
  struct {
    std::string operator()(const SequenceSpace& s) const {
      return "Sequence(r=" + fmt_r(s.r) + ",d=" + std::to_string(s.d) + ")";
    }
    std::string operator()(const HilbertSpace& s) const {
      return "Hilbert(d=" + std::to_string(s.d) + ")";
    }
    std::string operator()(const SupSpace& s) const { return "Sup(d=" + std::to_string(s.d) + ")"; }
    std::string operator()(const FunctionLrSpace& s) const {
      return "FunctionLr(r=" + fmt_r(s.r) + ",k=" + std::to_string(s.k) + ")";
    }
  } visitor;
  return std::visit(visitor, v_);
}

TrigPolynomial& TrigPolynomial::add(Frequency f, Complex c) {
  if (f.size() != variables_) {
    throw ShapeError("frequency has " + std::to_string(f.size()) + " exponents, expected " +
                     std::to_string(variables_));
  }
  for (auto e : f) {
    if (e > kMaxTrigExponent || e < -kMaxTrigExponent) {
      throw DomainError("trigonometric exponent magnitude exceeds 2^62");
    }
  }
  terms_[std::move(f)] += c;
  return *this;
}

Complex TrigPolynomial::operator()(std::span<const TorusPoint> w) const {
  if (w.size() < variables_) {
    throw ArityError("trigonometric polynomial in " + std::to_string(variables_) +
                     " variables evaluated at " + std::to_string(w.size()) + " coordinates");
  }
  Complex sum{};
  for (const auto& [freq, c] : terms_) {
    std::uint64_t turns = 0;
    for (std::size_t j = 0; j < variables_; ++j) turns += w[j].turns * static_cast<std::uint64_t>(freq[j]);
    fma_into(sum, c, unit_from_turns(turns));
  }
  return sum;
}

std::uint64_t TrigPolynomial::max_abs_exponent(std::size_t var) const {
  std::uint64_t best = 0;
  for (const auto& [freq, c] : terms_) {
    const std::int64_t e = freq.at(var);
    best = std::max<std::uint64_t>(best, static_cast<std::uint64_t>(e < 0 ? -e : e));
  }
  return best;
}

std::span<const Complex> Element::coords() const {
  if (const auto* v = std::get_if<std::vector<Complex>>(&data_)) return *v;
  throw ShapeError("element is a function, not a coordinate vector");
}

const TrigPolynomial& Element::function() const {
  if (const auto* f = std::get_if<TrigPolynomial>(&data_)) return *f;
  throw ShapeError("element is a coordinate vector, not a function");
}

bool Element::is_zero() const noexcept {
  if (const auto* v = std::get_if<std::vector<Complex>>(&data_)) {
    return std::all_of(v->begin(), v->end(), [](Complex z) { return z == Complex{}; });
  }
  const auto& terms = std::get<TrigPolynomial>(data_).terms();
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second == Complex{}; });
}

Element Element::scaled(Complex c) const {
  Element out = *this;
  if (auto* v = std::get_if<std::vector<Complex>>(&out.data_)) {
    for (auto& z : *v) z *= c;
  } else {
    const auto& src = std::get<TrigPolynomial>(data_);
    TrigPolynomial f(src.variables());
    for (const auto& [freq, coef] : src.terms()) f.add(freq, coef * c);
    out.data_ = std::move(f);
  }
  return out;
}

Element& Element::add_scaled(const Element& x, Complex c) {
  if (auto* v = std::get_if<std::vector<Complex>>(&data_)) {
    const auto xs = x.coords();
    if (xs.size() != v->size()) throw ShapeError("add_scaled: length mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) fma_into((*v)[i], c, xs[i]);
  } else {
    auto& f = std::get<TrigPolynomial>(data_);
    const auto& g = x.function();
    if (g.variables() != f.variables()) throw ShapeError("add_scaled: variable count mismatch");
    for (const auto& [freq, coef] : g.terms()) f.add(freq, coef * c);
  }
  return *this;
}

Element zero_element(const SpaceSpec& space) {
  if (space.is_function_space()) return Element(TrigPolynomial(space.dimension()));
  return Element(std::vector<Complex>(space.dimension()));
}

void check_conforms(const SpaceSpec& space, const Element& x) {
  if (space.is_function_space()) {
    if (!x.is_function()) throw ShapeError(space.describe() + " expects a function element");
    if (x.function().variables() != space.dimension()) {
      throw ShapeError(space.describe() + " expects a polynomial in " +
                       std::to_string(space.dimension()) + " variables");
    }
    return;
  }
  if (x.is_function()) throw ShapeError(space.describe() + " expects a coordinate vector");
  if (x.coords().size() != space.dimension()) {
    throw ShapeError(space.describe() + " expects " + std::to_string(space.dimension()) +
                     " coordinates, got " + std::to_string(x.coords().size()));
  }
}

double coordinate_norm(const SpaceSpec& space, std::span<const Complex> coords) {
  if (coords.size() != space.dimension() || space.is_function_space()) {
    throw ShapeError("coordinate_norm: vector does not conform to " + space.describe());
  }
  auto sup = [&] {
    double m = 0.0;
    for (auto z : coords) m = std::max(m, std::abs(z));
    return m;
  };
  auto l2 = [&] {
    double s = 0.0;
    for (auto z : coords) s += abs2(z);
    return std::sqrt(s);
  };
  if (std::holds_alternative<HilbertSpace>(space.variant())) return l2();
  if (std::holds_alternative<SupSpace>(space.variant())) return sup();
  const double r = std::get<SequenceSpace>(space.variant()).r;
  if (std::isinf(r)) return sup();
  if (r == 2.0) return l2();
  if (r == 1.0) {
    double s = 0.0;
    for (auto z : coords) s += std::abs(z);
    return s;
  }
  const double scale = sup();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (auto z : coords) s += std::pow(std::abs(z) / scale, r);
  return scale * std::pow(s, 1.0 / r);
}

struct CombinationNorm::FunctionData {
  enum class Kind { grid, mc, parseval };
  Kind kind = Kind::grid;
  double r = 1.0;
  std::size_t points = 0;
  std::vector<Complex> values;     // member-major: values[n * points + j]
  std::vector<unsigned char> base;  // grid: point lies on the base grid
  // parseval: each member as sparse coordinates over the union of frequencies
  std::size_t frequencies = 0;
  std::vector<std::vector<std::pair<std::size_t, Complex>>> sparse;
};

namespace {

using FunctionData = CombinationNorm::FunctionData;

// Moments of |sum_n c_n f_n|^r over the sampling points; second entry is the
// base-grid subset (grid mode only).
std::pair<detail::Moments, detail::Moments> function_moments(const FunctionData& data,
                                                             std::span<const Complex> coeffs) {
  detail::Moments all;
  detail::Moments base;
  for (std::size_t j = 0; j < data.points; ++j) {
    Complex v{};
    for (std::size_t n = 0; n < coeffs.size(); ++n) fma_into(v, coeffs[n], data.values[n * data.points + j]);
    const double raw = std::abs(v);
    const double value = detail::powered(raw, data.r);
    all.add(raw, value);
    if (!data.base.empty() && data.base[j]) base.add(raw, value);
  }
  return {all, base};
}

std::shared_ptr<const FunctionData> build_function_data(const FunctionLrSpace& space,
                                                        const std::vector<Element>& family,
                                                        const GridPolicy& policy) {
  auto data = std::make_shared<FunctionData>();
  data->r = space.r;

  std::vector<std::uint64_t> max_exp(space.k, 0);
  for (const auto& x : family) {
    for (std::size_t j = 0; j < space.k; ++j) {
      max_exp[j] = std::max(max_exp[j], x.function().max_abs_exponent(j));
    }
  }

  const auto grid = detail::make_grid(max_exp, policy);
  if (!grid && space.r == 2.0) {
    data->kind = FunctionData::Kind::parseval;
    std::map<Frequency, std::size_t> slot;
    for (const auto& x : family) {
      for (const auto& [freq, c] : x.function().terms()) slot.emplace(freq, slot.size());
    }
    data->frequencies = slot.size();
    for (const auto& x : family) {
      auto& row = data->sparse.emplace_back();
      for (const auto& [freq, c] : x.function().terms()) row.emplace_back(slot.at(freq), c);
    }
    return data;
  }

  data->kind = grid ? FunctionData::Kind::grid : FunctionData::Kind::mc;
  auto fill = [&](const std::optional<detail::TorusGrid>& g) {
    data->points = g ? g->points : policy.fallback_samples;
    data->values.assign(family.size() * data->points, Complex{});
    data->base.assign(g ? data->points : 0, 0);
    std::vector<TorusPoint> w(space.k);
    for (std::size_t j = 0; j < data->points; ++j) {
      if (g) {
        data->base[j] = g->point(j, w) ? 1 : 0;
      } else {
        detail::random_torus_point(policy.fallback_seed, j, w);
      }
      for (std::size_t n = 0; n < family.size(); ++n) {
        data->values[n * data->points + j] = family[n].function()(w);
      }
    }
  };
  fill(grid);
  if (!grid || space.r == 2.0) return data;

  // Calibrate the level on the all-ones combination.
  GridPolicy capped = policy;
  capped.max_points = std::min(policy.max_points, policy.combination_max_points);
  const std::vector<Complex> ones(family.size(), Complex{1.0, 0.0});
  for (unsigned level = 1;; ++level) {
    const auto [all, base] = function_moments(*data, ones);
    const double fine = detail::power_mean_estimate(all, space.r, Mode::quadrature).value;
    const double coarse = detail::power_mean_estimate(base, space.r, Mode::quadrature).value;
    if (std::abs(fine - coarse) <= policy.refine_tolerance * fine) break;
    const auto next = detail::make_grid(max_exp, capped, level);
    if (!next) break;
    fill(next);
  }
  return data;
}

double parseval_value(const FunctionData& data, std::span<const Complex> coeffs,
                      std::vector<Complex>& scratch) {
  scratch.assign(data.frequencies, Complex{});
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    for (const auto& [slot, c] : data.sparse[n]) fma_into(scratch[slot], coeffs[n], c);
  }
  double s = 0.0;
  for (auto z : scratch) s += abs2(z);
  return std::sqrt(s);
}

}  // namespace

CombinationNorm::CombinationNorm(const SpaceSpec& space, std::vector<Element> family,
                                 const GridPolicy& policy)
    : space_(space), family_size_(family.size()) {
  for (const auto& x : family) check_conforms(space, x);
  if (const auto* fs = std::get_if<FunctionLrSpace>(&space.variant())) {
    function_ = build_function_data(*fs, family, policy);
    return;
  }
  const std::size_t d = space.dimension();
  auto coords = std::make_shared<std::vector<Complex>>();
  coords->reserve(family.size() * d);
  for (const auto& x : family) coords->insert(coords->end(), x.coords().begin(), x.coords().end());
  coords_ = std::move(coords);
  scratch_.resize(d);
}

Estimate CombinationNorm::estimate(std::span<const Complex> coeffs) {
  if (coeffs.size() != family_size_) throw ShapeError("CombinationNorm: coefficient count mismatch");
  if (function_) {
    if (function_->kind == FunctionData::Kind::parseval) {
      return Estimate::exact(parseval_value(*function_, coeffs, scratch_));
    }
    const auto [all, base] = function_moments(*function_, coeffs);
    if (function_->kind == FunctionData::Kind::mc) return detail::power_mean_estimate(all, function_->r, Mode::mc);
    Estimate fine = detail::power_mean_estimate(all, function_->r, Mode::quadrature);
    fine.abs_error = std::abs(fine.value - detail::power_mean_estimate(base, function_->r, Mode::quadrature).value);
    return fine;
  }
  const std::size_t d = scratch_.size();
  std::fill(scratch_.begin(), scratch_.end(), Complex{});
  const Complex* row = coords_->data();
  for (std::size_t n = 0; n < family_size_; ++n, row += d) {
    const Complex c = coeffs[n];
    if (c == Complex{}) continue;
    for (std::size_t i = 0; i < d; ++i) fma_into(scratch_[i], c, row[i]);
  }
  return Estimate::exact(coordinate_norm(space_, scratch_));
}

namespace {

// One trapezoid level: value on the grid, error against its base subgrid.
Estimate grid_level(const FunctionLrSpace& fs, const TrigPolynomial& f, const detail::TorusGrid& grid) {
  detail::Moments all;
  detail::Moments base;
  std::vector<TorusPoint> w(fs.k);
  for (std::uint64_t j = 0; j < grid.points; ++j) {
    const bool on_base = grid.point(j, w);
    const double raw = std::abs(f(w));
    const double value = detail::powered(raw, fs.r);
    all.add(raw, value);
    if (on_base) base.add(raw, value);
  }
  Estimate fine = detail::power_mean_estimate(all, fs.r, Mode::quadrature);
  const Estimate coarse = detail::power_mean_estimate(base, fs.r, Mode::quadrature);
  fine.abs_error = std::abs(fine.value - coarse.value);
  return fine;
}

}  // namespace

Estimate norm(const SpaceSpec& space, const Element& x, const GridPolicy& policy) {
  check_conforms(space, x);
  if (!space.is_function_space()) return Estimate::exact(coordinate_norm(space, x.coords()));

  const auto& fs = std::get<FunctionLrSpace>(space.variant());
  if (x.is_zero()) return Estimate::exact(0.0);
  const TrigPolynomial& f = x.function();

  std::vector<std::uint64_t> max_exp(fs.k, 0);
  for (std::size_t j = 0; j < fs.k; ++j) max_exp[j] = f.max_abs_exponent(j);
  auto grid = detail::make_grid(max_exp, policy);
  if (grid) {
    // A near-zero of f makes |f|^r sharply peaked, and two coarse levels can
    // agree by accident; refine until consecutive levels agree or the point
    // budget runs out.
    Estimate e = grid_level(fs, f, *grid);
    for (unsigned level = 1; e.abs_error > policy.refine_tolerance * e.value; ++level) {
      grid = detail::make_grid(max_exp, policy, level);
      if (!grid) break;
      e = grid_level(fs, f, *grid);
    }
    return e;
  }

  const auto data = build_function_data(fs, {x}, policy);
  const Complex one{1.0, 0.0};
  if (data->kind == FunctionData::Kind::parseval) {
    std::vector<Complex> scratch;
    return Estimate::exact(parseval_value(*data, std::span(&one, 1), scratch));
  }
  return detail::power_mean_estimate(function_moments(*data, std::span(&one, 1)).first, fs.r, Mode::mc);
}

Complex trig_eval(const Element& x, std::span<const TorusPoint> w) { return x.function()(w); }

Element summing_basis_vector(std::size_t n, std::size_t m) {
  if (n < 1 || n > m) throw DomainError("summing basis index must lie in [1, m]");
  std::vector<Complex> coords(m);
  std::fill(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(n), Complex{1.0, 0.0});
  return Element(std::move(coords));
}

SummingCombination summing_combination(std::span<const Complex> a) {
  if (a.empty()) throw DomainError("summing_combination: empty coefficient vector");
  const std::size_t m = a.size();

  // Assemble sum_n a_n s_n, adding the terms from n = m downwards.
  std::vector<Complex> coords(m);
  for (std::size_t n = m; n-- > 0;) {
    for (std::size_t i = 0; i <= n; ++i) coords[i] += a[n];
  }

  double best = 0.0;
  Complex tail{};
  for (std::size_t k = m; k-- > 0;) {
    tail += a[k];
    best = std::max(best, std::abs(tail));
  }
  return {Element(std::move(coords)), best};
}

}  // namespace hardy
