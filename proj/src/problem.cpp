#include "hardy/problem.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "hardy/errors.hpp"

namespace hardy {

using nlohmann::json;

namespace {

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ValidationError(child(path, key), "unknown key");
  }
}

const json& required(const json& j, const std::string& path, std::string_view key) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw ValidationError(child(path, key), "missing required key");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t unsigned_integer(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ValidationError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::uint64_t positive_integer(const json& j, const std::string& path) {
  const auto v = unsigned_integer(j, path);
  if (v == 0) throw ValidationError(path, "expected a positive integer");
  return v;
}

Complex complex_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ValidationError(path, "expected a complex pair [re, im]");
  return {number(j[0], child(path, 0)), number(j[1], child(path, 1))};
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

double exponent_r(const json& j, const std::string& path, bool allow_inf) {
  if (allow_inf && j.is_string() && j.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  const double r = number(j, path);
  if (!(r >= 1.0)) throw ValidationError(path, "r must be at least 1");
  return r;
}

SpaceSpec parse_space(const json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  const json& variant = required(j, path, "variant");
  if (!variant.is_string()) throw ValidationError(child(path, "variant"), "expected a string");
  const auto name = variant.get<std::string>();
  if (name == "Sequence") {
    expect_object(j, path, {"variant", "r", "d"});
    return SpaceSpec::sequence(exponent_r(required(j, path, "r"), child(path, "r"), true),
                               positive_integer(required(j, path, "d"), child(path, "d")));
  }
  if (name == "Hilbert") {
    expect_object(j, path, {"variant", "d"});
    return SpaceSpec::hilbert(positive_integer(required(j, path, "d"), child(path, "d")));
  }
  if (name == "Sup") {
    expect_object(j, path, {"variant", "d"});
    return SpaceSpec::sup(positive_integer(required(j, path, "d"), child(path, "d")));
  }
  if (name == "FunctionLr") {
    expect_object(j, path, {"variant", "r", "k"});
    return SpaceSpec::function_lr(exponent_r(required(j, path, "r"), child(path, "r"), false),
                                  positive_integer(required(j, path, "k"), child(path, "k")));
  }
  throw ValidationError(child(path, "variant"), "unknown space variant '" + name + "'");
}

Element parse_element(const SpaceSpec& space, const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  if (const auto* lr = std::get_if<FunctionLrSpace>(&space.variant())) {
    TrigPolynomial f(lr->k);
    std::set<Frequency> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string at = child(path, i);
      expect_object(j[i], at, {"exponents", "c"});
      const json& e = required(j[i], at, "exponents");
      const std::string e_path = child(at, "exponents");
      if (!e.is_array() || e.size() != lr->k) {
        throw ValidationError(e_path, "expected " + std::to_string(lr->k) + " integer exponents");
      }
      Frequency freq;
      for (std::size_t v = 0; v < e.size(); ++v) {
        if (!e[v].is_number_integer()) throw ValidationError(child(e_path, v), "expected an integer");
        const auto value = e[v].get<std::int64_t>();
        if (value > kMaxTrigExponent || value < -kMaxTrigExponent) {
          throw ValidationError(child(e_path, v), "exponent out of range");
        }
        freq.push_back(value);
      }
      if (!seen.insert(freq).second) throw ValidationError(e_path, "duplicate exponents");
      f.add(std::move(freq), complex_pair(required(j[i], at, "c"), child(at, "c")));
    }
    return Element(std::move(f));
  }
  const std::size_t d = space.dimension();
  if (j.size() != d) {
    throw ValidationError(path, "expected " + std::to_string(d) + " coordinates, got " + std::to_string(j.size()));
  }
  std::vector<Complex> coords;
  for (std::size_t i = 0; i < j.size(); ++i) coords.push_back(complex_pair(j[i], child(path, i)));
  return Element(std::move(coords));
}

void parse_sampler(const json& j, const std::string& path, Problem& out) {
  expect_object(j, path, {"seed", "samples", "exact_cutoff", "sign_samples", "threads", "method"});
  SamplerConfig& cfg = out.sampler;
  if (j.contains("seed")) {
    cfg.seed = unsigned_integer(j["seed"], child(path, "seed"));
    out.seed_given = true;
  }
  if (j.contains("samples")) cfg.samples = positive_integer(j["samples"], child(path, "samples"));
  if (j.contains("exact_cutoff")) {
    const auto v = unsigned_integer(j["exact_cutoff"], child(path, "exact_cutoff"));
    if (v > 24) throw ValidationError(child(path, "exact_cutoff"), "must be at most 24");
    cfg.exact_cutoff = static_cast<unsigned>(v);
  }
  if (j.contains("sign_samples")) {
    cfg.sign_samples = positive_integer(j["sign_samples"], child(path, "sign_samples"));
  }
  if (j.contains("threads")) {
    const auto v = positive_integer(j["threads"], child(path, "threads"));
    if (v > 1024) throw ValidationError(child(path, "threads"), "must be at most 1024");
    cfg.threads = static_cast<unsigned>(v);
  }
  if (j.contains("method")) {
    const json& m = j["method"];
    if (m == "auto") {
      cfg.method = Method::automatic;
    } else if (m == "mc") {
      cfg.method = Method::monte_carlo;
    } else {
      throw ValidationError(child(path, "method"), "expected \"auto\" or \"mc\"");
    }
  }
}

}  // namespace

Problem problem_from_json(const json& j) {
  expect_object(j, "", {"schema", "space", "p", "terms", "sampler"});
  if (j.contains("schema")) {
    const json& s = j["schema"];
    if (!s.is_number_integer() || s.get<std::int64_t>() != kSchemaVersion) {
      throw ValidationError("/schema", "unsupported schema version (expected 1)");
    }
  }
  Problem out;
  const SpaceSpec space = parse_space(required(j, "", "space"), "/space");
  out.poly = DirichletPolynomial(space);
  if (j.contains("p")) {
    const double p = number(j["p"], "/p");
    if (!(p >= 1.0)) throw ValidationError("/p", "p must be at least 1");
    out.p = p;
  }
  const json& terms = required(j, "", "terms");
  if (!terms.is_array()) throw ValidationError("/terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = child("/terms", i);
    expect_object(terms[i], at, {"n", "x"});
    const auto n = positive_integer(required(terms[i], at, "n"), child(at, "n"));
    if (n > kMaxIndex) throw ValidationError(child(at, "n"), "index too large");
    if (out.poly.terms().contains(n)) {
      throw ValidationError(child(at, "n"), "duplicate index n=" + std::to_string(n));
    }
    out.poly.set(n, parse_element(space, required(terms[i], at, "x"), child(at, "x")));
  }
  if (j.contains("sampler")) parse_sampler(j["sampler"], "/sampler", out);
  return out;
}

Problem parse_problem(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("invalid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

json space_to_json(const SpaceSpec& space) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SequenceSpace>) {
          return {{"variant", "Sequence"},
                  {"r", std::isinf(s.r) ? json("inf") : json(s.r)},
                  {"d", s.d}};
        } else if constexpr (std::is_same_v<T, HilbertSpace>) {
          return {{"variant", "Hilbert"}, {"d", s.d}};
        } else if constexpr (std::is_same_v<T, SupSpace>) {
          return {{"variant", "Sup"}, {"d", s.d}};
        } else {
          return {{"variant", "FunctionLr"}, {"r", s.r}, {"k", s.k}};
        }
      },
      space.variant());
}

json element_to_json(const SpaceSpec& space, const Element& x) {
  json out = json::array();
  if (space.is_function_space()) {
    for (const auto& [freq, c] : x.function().terms()) {
      out.push_back({{"exponents", freq}, {"c", complex_to_json(c)}});
    }
    return out;
  }
  for (const Complex c : x.coords()) out.push_back(complex_to_json(c));
  return out;
}

json to_json(const Problem& problem) {
  json out;
  out["schema"] = kSchemaVersion;
  out["space"] = space_to_json(problem.poly.space());
  if (problem.p) out["p"] = *problem.p;
  json terms = json::array();
  for (const auto& [n, x] : problem.poly.terms()) {
    terms.push_back({{"n", n}, {"x", element_to_json(problem.poly.space(), x)}});
  }
  out["terms"] = std::move(terms);
  const SamplerConfig& cfg = problem.sampler;
  json sampler{{"samples", cfg.samples},
               {"exact_cutoff", cfg.exact_cutoff},
               {"sign_samples", cfg.sign_samples},
               {"threads", cfg.threads},
               {"method", cfg.method == Method::automatic ? "auto" : "mc"}};
  if (problem.seed_given) sampler["seed"] = cfg.seed;
  out["sampler"] = std::move(sampler);
  return out;
}

std::vector<Element> dense_coefficients(const DirichletPolynomial& d, std::size_t max_length) {
  if (d.terms().empty()) return {};
  const std::uint64_t top = d.terms().rbegin()->first;
  if (top > max_length) {
    throw DomainError("largest index " + std::to_string(top) + " exceeds the dense limit " +
                      std::to_string(max_length));
  }
  std::vector<Element> xs(top, zero_element(d.space()));
  for (const auto& [n, x] : d.terms()) xs[n - 1] = x;
  return xs;
}

}  // namespace hardy
