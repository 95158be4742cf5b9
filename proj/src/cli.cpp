#include "hardy/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hardy/bohr.hpp"
#include "hardy/constants.hpp"
#include "hardy/counter_rng.hpp"
#include "hardy/dirichlet.hpp"
#include "hardy/errors.hpp"
#include "hardy/problem.hpp"
#include "hardy/random.hpp"

namespace hardy::cli {

namespace {

using nlohmann::json;

// ---- output tables ----

using Cell = std::variant<std::monostate, std::string, double, std::uint64_t, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json summary;  // JSON output only
};

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return fmt::format("{}", v);
        }
      },
      c);
}

json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      c);
}

void render(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
      rows.push_back(std::move(obj));
    }
    json doc{{"rows", std::move(rows)}};
    if (!t.summary.is_null()) doc["summary"] = t.summary;
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

Mode worst(Mode a, Mode b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

// Ratio with first-order error propagation.
Estimate ratio_of(const Estimate& num, const Estimate& den) {
  if (!(den.value > 0.0)) throw UndefinedRatioError("ratio with zero denominator");
  Estimate r;
  r.value = num.value / den.value;
  const double rel_n = num.value != 0.0 ? num.stderr_ / num.value : 0.0;
  r.stderr_ = std::abs(r.value) * std::hypot(rel_n, den.stderr_ / den.value);
  const double err_n = num.value != 0.0 ? num.abs_error / std::abs(num.value) : 0.0;
  r.abs_error = std::abs(r.value) * (err_n + den.abs_error / den.value);
  r.samples_used = std::max(num.samples_used, den.samples_used);
  r.mode = worst(num.mode, den.mode);
  return r;
}

Table estimate_table() { return {{"quantity", "value", "stderr", "error", "samples", "mode"}, {}, {}}; }

void add_estimate(Table& t, std::string quantity, const Estimate& e) {
  t.rows.push_back({std::move(quantity), e.value, e.stderr_, e.abs_error, e.samples_used,
                    std::string(to_string(e.mode))});
}

// ---- svg plot ----

void write_plot(const std::string& path, const std::string& title, const std::string& ylabel,
                const std::vector<std::pair<double, double>>& points) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write plot to " + path);
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    x0 = x1 = points.front().first;
    y0 = y1 = points.front().second;
    for (const auto& [x, y] : points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  f << fmt::format(R"svg(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)svg",
                   W, H)
    << '\n';
  f << fmt::format(R"svg(<rect width="{}" height="{}" fill="white"/>)svg", W, H) << '\n';
  f << fmt::format(R"svg(<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>)svg", W / 2, title) << '\n';
  f << fmt::format(R"svg(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>)svg", L, H - B, W - R, H - B) << '\n';
  f << fmt::format(R"svg(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>)svg", L, T, L, H - B) << '\n';
  f << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="middle">N</text>)svg", (L + W - R) / 2, H - 12) << '\n';
  f << fmt::format(R"svg(<text x="16" y="{}" transform="rotate(-90 16 {})" text-anchor="middle">{}</text>)svg",
                   (T + H - B) / 2, (T + H - B) / 2, ylabel)
    << '\n';
  f << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="middle">{:.6g}</text>)svg", L, H - B + 18, x0) << '\n';
  f << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="middle">{:.6g}</text>)svg", W - R, H - B + 18, x1) << '\n';
  f << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="end">{:.6g}</text>)svg", L - 6, H - B, y0) << '\n';
  f << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="end">{:.6g}</text>)svg", L - 6, T + 4, y1) << '\n';
  if (!points.empty()) {
    f << R"svg(<polyline fill="none" stroke="steelblue" stroke-width="2" points=")svg";
    for (std::size_t i = 0; i < points.size(); ++i) {
      f << (i ? " " : "") << fmt::format("{:.2f},{:.2f}", sx(points[i].first), sy(points[i].second));
    }
    f << "\"/>\n";
    for (const auto& [x, y] : points) {
      f << fmt::format(R"svg(<circle cx="{:.2f}" cy="{:.2f}" r="3" fill="steelblue"/>)svg", sx(x), sy(y)) << '\n';
    }
  }
  f << "</svg>\n";
}

// ---- option plumbing ----

struct Options {
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<unsigned> threads;
  std::optional<unsigned> exact_cutoff;
  std::optional<std::uint64_t> sign_samples;
  std::optional<std::string> method;
  std::optional<double> p;
  std::string input;
  std::string plot;
  std::string lengths;
  std::uint64_t bound = 3000;
  // bohr
  std::vector<std::uint64_t> numbers;
  std::vector<std::uint32_t> exponents;
  std::uint64_t limit = 0;
  std::uint64_t ap_length = 0;
  // search
  unsigned restarts = 4;
  unsigned iterations = 200;
  // summing
  std::uint64_t count = 20;
  std::uint64_t max_length = 8;
};

void add_format(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_sampler(CLI::App* app, Options& o) {
  add_format(app, o);
  app->add_option("--seed", o.seed, "Random seed (overrides the file and $" + std::string(kSeedEnv) + ")");
  app->add_option("--samples", o.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  app->add_option("--threads", o.threads, "Worker threads; never changes results")->check(CLI::Range(1u, 1024u));
  app->add_option("--exact-cutoff", o.exact_cutoff, "Enumerate sign patterns up to this many vectors")
      ->check(CLI::Range(0u, 24u));
  app->add_option("--sign-samples", o.sign_samples, "Sampled sign patterns beyond the cutoff")
      ->check(CLI::PositiveNumber);
  app->add_option("--method", o.method, "auto or mc")->check(CLI::IsMember({"auto", "mc"}));
}

void add_problem(CLI::App* app, Options& o, bool with_p) {
  add_sampler(app, o);
  app->add_option("--input", o.input, "Problem file (JSON)")->required();
  if (with_p) app->add_option("--p", o.p, "Exponent p >= 1");
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 0);
  if (errno != 0 || *end != '\0' || raw[0] == '-') {
    throw ValidationError(std::string("$") + kSeedEnv, "expected a non-negative integer");
  }
  return v;
}

SamplerConfig resolve_sampler(const Options& o, const Problem* problem) {
  SamplerConfig cfg = problem ? problem->sampler : SamplerConfig{};
  if (o.seed) {
    cfg.seed = *o.seed;
  } else if (!(problem && problem->seed_given)) {
    cfg.seed = env_seed().value_or(0);
  }
  if (o.samples) cfg.samples = *o.samples;
  if (o.threads) cfg.threads = *o.threads;
  if (o.exact_cutoff) cfg.exact_cutoff = *o.exact_cutoff;
  if (o.sign_samples) cfg.sign_samples = *o.sign_samples;
  if (o.method) cfg.method = *o.method == "mc" ? Method::monte_carlo : Method::automatic;
  cfg.validate();
  return cfg;
}

Problem load_problem(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("", "cannot read problem file '" + path + "'");
  std::ostringstream text;
  text << f.rdbuf();
  return parse_problem(text.str());
}

double resolve_p(const Options& o, const Problem& problem) {
  const double p = o.p ? *o.p : problem.p.value_or(2.0);
  if (!(p >= 1.0) || std::isinf(p)) throw ValidationError("--p", "p must be a finite number >= 1");
  return p;
}

std::vector<Element> term_values(const DirichletPolynomial& d) {
  std::vector<Element> xs;
  for (const auto& [n, x] : d.terms()) xs.push_back(x);
  return xs;
}

std::vector<std::uint64_t> parse_lengths(const std::string& spec) {
  constexpr std::uint64_t kMaxCount = 100000;
  auto to_u64 = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("--lengths", "malformed value '" + spec + "'");
    }
    errno = 0;
    const auto v = std::strtoull(s.c_str(), nullptr, 10);
    if (errno != 0 || v == 0) throw ValidationError("--lengths", "lengths must be positive integers");
    return static_cast<std::uint64_t>(v);
  };
  std::vector<std::uint64_t> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const auto a = to_u64(spec.substr(0, dots));
    const auto b = to_u64(spec.substr(dots + 2));
    if (a > b) throw ValidationError("--lengths", "empty range '" + spec + "'");
    if (b - a >= kMaxCount) throw ValidationError("--lengths", "range too long");
    for (auto n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_u64(item));
  if (out.empty() || out.size() > kMaxCount) throw ValidationError("--lengths", "expected 1 to 100000 lengths");
  return out;
}

std::string join_exponents(const MultiIndex& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? " " : "") + std::to_string(alpha[i]);
  return s;
}

// ---- subcommands ----

Table cmd_factorize(const Options& o) {
  Table t{{"n", "exponents"}, {}, {}};
  for (const auto n : o.numbers) t.rows.push_back({n, join_exponents(factorize(n))});
  return t;
}

Table cmd_index(const Options& o) {
  const MultiIndex alpha(o.exponents);
  return {{"exponents", "n"}, {{join_exponents(alpha), index_of(alpha)}}, {}};
}

Table cmd_primes(const Options& o) {
  if (o.limit > kMaxSieveLimit) throw DomainError("prime limit above " + std::to_string(kMaxSieveLimit));
  Table t{{"slot", "prime"}, {}, {}};
  const auto table = primes_up_to(o.limit);
  std::uint64_t slot = 0;
  for (const auto q : table.primes()) t.rows.push_back({slot++, static_cast<std::uint64_t>(q)});
  return t;
}

Table cmd_ap(const Options& o) {
  if (o.bound > kMaxSieveLimit) throw DomainError("bound above " + std::to_string(kMaxSieveLimit));
  Table t{{"length", "start", "step", "last"}, {}, {}};
  if (const auto ap = prime_ap_search(o.ap_length, o.bound)) {
    t.rows.push_back({o.ap_length, ap->start, ap->step, ap->term(ap->length - 1)});
  } else {
    t.rows.push_back({o.ap_length, std::monostate{}, std::monostate{}, std::monostate{}});
  }
  return t;
}

Table cmd_norm(const Options& o) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  Table t = estimate_table();
  add_estimate(t, "hp_norm", hp_norm(problem.poly, resolve_p(o, problem), cfg));
  return t;
}

Table cmd_circle_norm(const Options& o) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  const auto xs = dense_coefficients(problem.poly);
  Table t = estimate_table();
  add_estimate(t, "circle_hp_norm", circle_hp_norm(xs, problem.poly.space(), resolve_p(o, problem), cfg));
  return t;
}

Table cmd_rad_norm(const Options& o) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  Table t = estimate_table();
  add_estimate(t, "rad_norm", rad_norm(term_values(problem.poly), problem.poly.space(), cfg));
  return t;
}

Table cmd_hprad_norm(const Options& o) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  Table t = estimate_table();
  add_estimate(t, "hprad_norm", hprad_norm(problem.poly, resolve_p(o, problem), cfg));
  return t;
}

Table cmd_ruc_ratio(const Options& o) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  const auto report = ruc_ratio(problem.poly, resolve_p(o, problem), cfg);
  Table t = estimate_table();
  add_estimate(t, "hprad_norm", report.numerator);
  add_estimate(t, "hp_norm", report.denominator);
  add_estimate(t, "ruc_ratio", ratio_of(report.numerator, report.denominator));
  add_estimate(t, "rud_ratio", ratio_of(report.denominator, report.numerator));
  return t;
}

Table cmd_ruc_search(const Options& o) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  SearchConfig scfg;
  scfg.restarts = o.restarts;
  scfg.iterations = o.iterations;
  const auto xs = dense_coefficients(problem.poly);
  const auto result = ruc_constant_search(problem.poly.space(), xs, resolve_p(o, problem), scfg, cfg);
  Table t = estimate_table();
  add_estimate(t, "hprad_norm", result.best.numerator);
  add_estimate(t, "hp_norm", result.best.denominator);
  add_estimate(t, "ruc_ratio", ratio_of(result.best.numerator, result.best.denominator));
  add_estimate(t, "start_ratio", Estimate{result.start_ratio, 0.0, 0.0, 0, result.best.numerator.mode});
  add_estimate(t, "evaluations", Estimate::exact(static_cast<double>(result.evaluations)));
  for (std::size_t n = 0; n < result.coefficients.size(); ++n) {
    add_estimate(t, fmt::format("a_{}.re", n + 1), Estimate::exact(result.coefficients[n].real()));
    add_estimate(t, fmt::format("a_{}.im", n + 1), Estimate::exact(result.coefficients[n].imag()));
  }
  return t;
}

Table cmd_witness(const Options& o, bool type) {
  const Problem problem = load_problem(o.input);
  const auto cfg = resolve_sampler(o, &problem);
  const auto xs = term_values(problem.poly);
  Table t = estimate_table();
  if (type) {
    add_estimate(t, "type_witness", type_constant_witness(xs, problem.poly.space(), cfg));
  } else {
    add_estimate(t, "cotype_witness", cotype_constant_witness(xs, problem.poly.space(), cfg));
  }
  return t;
}

Table cmd_prime_ap(const Options& o) {
  if (o.bound > kMaxSieveLimit) throw DomainError("bound above " + std::to_string(kMaxSieveLimit));
  const auto cfg = resolve_sampler(o, nullptr);
  const auto lengths = parse_lengths(o.lengths.empty() ? "3..10" : o.lengths);
  const auto rows = experiment_prime_ap(lengths, o.bound, cfg);
  Table t{{"N", "start", "step", "lhs", "rhs", "ratio", "lhs_mode", "lhs_stderr", "rhs_mode", "rhs_stderr",
           "rhs_error", "ratio_error", "rhs_direct", "rhs_direct_mode", "rhs_direct_stderr", "rhs_direct_error"},
          {},
          {}};
  std::vector<std::pair<double, double>> points;
  for (const auto& r : rows) {
    if (!r.ap) {
      std::vector<Cell> row{r.length};
      row.resize(t.columns.size());
      t.rows.push_back(std::move(row));
      continue;
    }
    t.rows.push_back({r.length, r.ap->start, r.ap->step, r.lhs.value, r.rhs.value, r.ratio,
                      std::string(to_string(r.lhs.mode)), r.lhs.stderr_, std::string(to_string(r.rhs.mode)),
                      r.rhs.stderr_, r.rhs.abs_error, r.ratio * r.rhs.abs_error / r.rhs.value, r.rhs_direct.value,
                      std::string(to_string(r.rhs_direct.mode)), r.rhs_direct.stderr_, r.rhs_direct.abs_error});
    points.emplace_back(static_cast<double>(r.length), r.ratio);
  }
  if (!o.plot.empty()) write_plot(o.plot, "prime progressions: sqrt(N) / ||D_N||_1", "ratio", points);
  return t;
}

Table cmd_lacunary(const Options& o) {
  const auto cfg = resolve_sampler(o, nullptr);
  const auto lengths = parse_lengths(o.lengths.empty() ? "1..64" : o.lengths);
  Table t{{"N", "lhs", "rhs", "ratio", "lhs_mode", "rhs_mode", "rhs_error", "ratio_error"}, {}, {}};
  std::vector<std::pair<double, double>> points;
  for (const auto& r : experiment_lacunary_power(lengths, cfg)) {
    t.rows.push_back({r.length, r.lhs.value, r.rhs.value, r.ratio, std::string(to_string(r.lhs.mode)),
                      std::string(to_string(r.rhs.mode)), r.rhs.abs_error, r.ratio * r.rhs.abs_error / r.rhs.value});
    points.emplace_back(static_cast<double>(r.length), r.ratio);
  }
  if (!o.plot.empty()) write_plot(o.plot, "powers of two: sqrt(N) / ||D_N||_1", "ratio", points);
  return t;
}

Table cmd_summing(const Options& o) {
  std::vector<std::vector<Complex>> vectors;
  std::optional<Problem> problem;
  if (!o.input.empty()) {
    problem = load_problem(o.input);
    if (problem->poly.space().dimension() != 1 || problem->poly.space().is_function_space()) {
      throw ValidationError("/space", "summing experiment needs scalar coefficients (d = 1)");
    }
  }
  const auto cfg = resolve_sampler(o, problem ? &*problem : nullptr);
  if (problem) {
    std::vector<Complex> a;
    for (const auto& x : dense_coefficients(problem->poly)) a.push_back(x.coords()[0]);
    if (a.empty()) throw ValidationError("/terms", "need at least one coefficient");
    vectors.push_back(std::move(a));
  } else {
    if (o.max_length == 0 || o.max_length > 64) throw ValidationError("--max-length", "must lie in [1, 64]");
    if (o.count == 0 || o.count > 10000) throw ValidationError("--count", "must lie in [1, 10000]");
    for (std::uint64_t trial = 0; trial < o.count; ++trial) {
      CounterRng rng(cfg.seed ^ stream_tag::instance, trial);
      const std::size_t m = 1 + rng.next_u64() % o.max_length;
      std::vector<Complex> a(m);
      for (auto& c : a) c = rng.normal_pair();
      vectors.push_back(std::move(a));
    }
  }
  Table t{{"trial", "m", "sup_norm", "stderr", "mode", "samples", "l2", "ratio", "holds"}, {}, {}};
  std::vector<std::pair<double, double>> points;
  double worst_ratio = 0.0;
  bool all_hold = true;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto r = experiment_summing_basis(vectors[i], cfg);
    t.rows.push_back({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(vectors[i].size()),
                      r.sup_norm.value, r.sup_norm.stderr_, std::string(to_string(r.sup_norm.mode)),
                      r.sup_norm.samples_used, r.l2, r.ratio, r.lower_bound_holds});
    points.emplace_back(static_cast<double>(vectors[i].size()), r.ratio);
    worst_ratio = std::max(worst_ratio, r.ratio);
    all_hold = all_hold && r.lower_bound_holds;
  }
  t.summary = {{"max_ratio", worst_ratio}, {"all_hold", all_hold}};
  if (!o.plot.empty()) {
    std::sort(points.begin(), points.end());
    write_plot(o.plot, "summing basis: maximal tail / l2", "ratio", points);
  }
  return t;
}

Table cmd_kernel(const Options& o) {
  const auto lengths = parse_lengths(o.lengths.empty() ? "8,16,32,64,128,256" : o.lengths);
  const auto report = experiment_kernel(lengths);
  Table t{{"N", "l1", "error", "mode", "asymptote", "ratio"}, {}, {}};
  std::vector<std::pair<double, double>> points;
  for (const auto& r : report.rows) {
    Cell ratio;
    if (r.asymptote > 0.0) {
      ratio = r.l1.value / r.asymptote;
      points.emplace_back(static_cast<double>(r.length), r.l1.value / r.asymptote);
    }
    t.rows.push_back({r.length, r.l1.value, r.l1.abs_error, std::string(to_string(r.l1.mode)), r.asymptote, ratio});
  }
  t.summary = {{"slope", report.slope}, {"intercept", report.intercept}};
  if (!o.plot.empty()) write_plot(o.plot, "Dirichlet kernel: ||D_N||_1 / ((4/pi^2) ln N)", "ratio", points);
  return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy-space norms of vector-valued Dirichlet polynomials", "dirichlet-ruc"};
  app.require_subcommand(1);
  Options o;

  auto* bohr = app.add_subcommand("bohr", "Prime indexing and the Bohr correspondence");
  bohr->require_subcommand(1);
  auto* factorize_cmd = bohr->add_subcommand("factorize", "Exponent vector alpha(n)");
  factorize_cmd->add_option("n", o.numbers, "Positive integers")->required();
  add_format(factorize_cmd, o);
  auto* index_cmd = bohr->add_subcommand("index", "Integer n(alpha) for an exponent vector");
  index_cmd->add_option("exponents", o.exponents, "Exponents of 2, 3, 5, ...")->required();
  add_format(index_cmd, o);
  auto* primes_cmd = bohr->add_subcommand("primes", "Primes up to a limit");
  primes_cmd->add_option("limit", o.limit, "Upper bound")->required()->check(CLI::PositiveNumber);
  add_format(primes_cmd, o);
  auto* ap_cmd = bohr->add_subcommand("ap", "Arithmetic progression of primes");
  ap_cmd->add_option("--length", o.ap_length, "Progression length")->required()->check(CLI::Range(2, 1 << 20));
  ap_cmd->add_option("--bound", o.bound, "Largest allowed term")->required();
  add_format(ap_cmd, o);

  auto* norm_cmd = app.add_subcommand("norm", "H_p(X) norm of a Dirichlet polynomial");
  add_problem(norm_cmd, o, true);
  auto* circle_cmd = app.add_subcommand("circle-norm", "H_p(T, X) norm of sum_n x_n z^n");
  add_problem(circle_cmd, o, true);
  auto* rad_cmd = app.add_subcommand("rad-norm", "Rad(X) norm of the coefficient sequence");
  add_problem(rad_cmd, o, false);
  auto* hprad_cmd = app.add_subcommand("hprad-norm", "H_p^rad(X) norm");
  add_problem(hprad_cmd, o, true);
  auto* ruc_cmd = app.add_subcommand("ruc-ratio", "RUC and RUD ratios of one polynomial");
  add_problem(ruc_cmd, o, true);
  auto* search_cmd = app.add_subcommand("ruc-search", "Search coefficients maximizing the RUC ratio");
  add_problem(search_cmd, o, true);
  search_cmd->add_option("--restarts", o.restarts, "Search restarts")->check(CLI::Range(1u, 1000u));
  search_cmd->add_option("--iterations", o.iterations, "Evaluations per restart")->check(CLI::Range(1u, 1000000u));
  auto* type_cmd = app.add_subcommand("type-witness", "Type 2 witness of the coefficient vectors");
  add_problem(type_cmd, o, false);
  auto* cotype_cmd = app.add_subcommand("cotype-witness", "Cotype 2 witness of the coefficient vectors");
  add_problem(cotype_cmd, o, false);

  auto* experiment = app.add_subcommand("experiment", "Growth experiments");
  experiment->require_subcommand(1);
  auto* prime_ap_cmd = experiment->add_subcommand("prime-ap", "sqrt(N) against the L1 norm on prime progressions");
  add_sampler(prime_ap_cmd, o);
  prime_ap_cmd->add_option("--lengths", o.lengths, "Range a..b or comma list (default 3..10)");
  prime_ap_cmd->add_option("--bound", o.bound, "Largest allowed prime (default 3000)");
  prime_ap_cmd->add_option("--plot", o.plot, "Write an SVG chart of ratio against N");
  auto* lacunary_cmd = experiment->add_subcommand("lacunary", "sqrt(N) against the L1 norm on powers of two");
  add_sampler(lacunary_cmd, o);
  lacunary_cmd->add_option("--lengths", o.lengths, "Range a..b or comma list (default 1..64)");
  lacunary_cmd->add_option("--plot", o.plot, "Write an SVG chart of ratio against N");
  auto* summing_cmd = experiment->add_subcommand("summing", "Maximal tail sums against the l2 norm");
  add_sampler(summing_cmd, o);
  summing_cmd->add_option("--input", o.input, "Scalar problem file; random vectors when absent");
  summing_cmd->add_option("--count", o.count, "Random coefficient vectors (default 20)");
  summing_cmd->add_option("--max-length", o.max_length, "Largest random vector length (default 8)");
  summing_cmd->add_option("--plot", o.plot, "Write an SVG chart of ratio against length");
  auto* kernel_cmd = experiment->add_subcommand("kernel", "L1 norm of the Dirichlet kernel against ln N");
  add_format(kernel_cmd, o);
  kernel_cmd->add_option("--lengths", o.lengths, "Range a..b or comma list (default 8,16,...,256)");
  kernel_cmd->add_option("--plot", o.plot, "Write an SVG chart of the ratio to (4/pi^2) ln N");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Table table;
    if (factorize_cmd->parsed()) table = cmd_factorize(o);
    else if (index_cmd->parsed()) table = cmd_index(o);
    else if (primes_cmd->parsed()) table = cmd_primes(o);
    else if (ap_cmd->parsed()) table = cmd_ap(o);
    else if (norm_cmd->parsed()) table = cmd_norm(o);
    else if (circle_cmd->parsed()) table = cmd_circle_norm(o);
    else if (rad_cmd->parsed()) table = cmd_rad_norm(o);
    else if (hprad_cmd->parsed()) table = cmd_hprad_norm(o);
    else if (ruc_cmd->parsed()) table = cmd_ruc_ratio(o);
    else if (search_cmd->parsed()) table = cmd_ruc_search(o);
    else if (type_cmd->parsed()) table = cmd_witness(o, true);
    else if (cotype_cmd->parsed()) table = cmd_witness(o, false);
    else if (prime_ap_cmd->parsed()) table = cmd_prime_ap(o);
    else if (lacunary_cmd->parsed()) table = cmd_lacunary(o);
    else if (summing_cmd->parsed()) table = cmd_summing(o);
    else if (kernel_cmd->parsed()) table = cmd_kernel(o);
    render(table, o.format, out);
    return 0;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hardy::cli
