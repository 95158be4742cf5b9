// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hardy/bohr.hpp"
#include "hardy/cli.hpp"
#include "hardy/constants.hpp"
#include "hardy/dirichlet.hpp"
#include "hardy/random.hpp"
#include "support.hpp"

using namespace hardy;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (seconds > limit_seconds) {
    o.pass = false;
    o.detail += " (time limit " + std::to_string(limit_seconds) + " s exceeded)";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), seconds, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// A random coordinate instance: space, vectors, for the randomized averages.
struct Instance {
  SpaceSpec space = SpaceSpec::scalars();
  std::vector<Element> xs;
};

std::vector<Instance> instance_suite(std::uint64_t seed, std::size_t count, std::size_t max_m, std::size_t max_d) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    Instance in;
    in.space = gen::coordinate_space(rng, max_d);
    in.xs = gen::elements(rng, in.space, gen::uniform_int(rng, 1, max_m));
    out.push_back(std::move(in));
  }
  return out;
}

DirichletPolynomial as_polynomial(const Instance& in) {
  DirichletPolynomial d(in.space);
  for (std::size_t n = 0; n < in.xs.size(); ++n) d.set(n + 1, in.xs[n]);
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string fixtures = argc > 1 ? argv[1] : HARDY_FIXTURES;
  const std::string golden = argc > 2 ? argv[2] : HARDY_GOLDEN;

  criterion(1, "Bohr roundtrip index_of(factorize(n)) = n, n <= 10^6", 10.0, [] {
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
      if (index_of(factorize(n)) != n) return Outcome{false, "mismatch at n=" + std::to_string(n)};
    }
    return Outcome{true, "10^6 integers"};
  });

  criterion(2, "Parseval: MC hp_norm vs exact, 100 Hilbert polynomials", 60.0, [] {
    std::mt19937_64 rng(2002);
    double worst_z = 0.0, worst_rel = 0.0;
    int bad = 0, constant = 0;
    for (int i = 0; i < 100; ++i) {
      const auto space = SpaceSpec::hilbert(gen::uniform_int(rng, 1, 8));
      DirichletPolynomial d(space);
      const std::size_t terms = gen::uniform_int(rng, 1, 12);
      double s = 0.0;
      while (d.terms().size() < terms) {
        const std::uint64_t n = gen::uniform_int(rng, 1, 200);
        if (d.terms().contains(n)) continue;
        Element x(gen::coords(rng, space.dimension()));
        s += std::pow(norm(space, x).value, 2);
        d.set(n, std::move(x));
      }
      const double exact = std::sqrt(s);
      SamplerConfig cfg;
      cfg.samples = 100000;
      cfg.seed = static_cast<std::uint64_t>(i);
      cfg.method = Method::monte_carlo;
      const Estimate e = hp_norm(d, 2.0, cfg);
      const double diff = std::abs(e.value - exact);
      const double z = e.stderr_ > 0.0 ? diff / e.stderr_ : (diff == 0.0 ? 0.0 : INFINITY);
      worst_z = std::max(worst_z, z);
      worst_rel = std::max(worst_rel, diff / exact);
      // One term has constant norm on the torus and short-circuits to exact.
      if (d.terms().size() == 1) ++constant;
      if ((e.mode != Mode::mc && d.terms().size() > 1) || z > 3.0 || diff > 0.02 * exact) ++bad;
    }
    return Outcome{bad == 0, fmt("max |err|/stderr %.3f, max rel err %.2e, failures %g", worst_z, worst_rel, bad) +
                                 ", single-term " + std::to_string(constant)};
  });

  criterion(3, "Contraction principle, 1000 instances, exact enumeration", 30.0, [] {
    std::mt19937_64 rng(3003);
    int violations = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto space = gen::coordinate_space(rng, 6);
      const std::size_t m = gen::uniform_int(rng, 1, 12);
      const auto xs = gen::elements(rng, space, m);
      std::vector<Complex> a(m);
      for (auto& z : a) z = std::polar(gen::uniform(rng, 0.0, 1.0), gen::uniform(rng, 0.0, 2.0 * std::numbers::pi));
      const auto c = contraction_check(xs, a, space);
      if (c.lhs.mode != Mode::exact || c.rhs.mode != Mode::exact) return Outcome{false, "not exact"};
      if (!c.holds) ++violations;
      if (c.rhs.value > 0.0) worst = std::max(worst, c.lhs.value / c.rhs.value);
    }
    return Outcome{violations == 0, fmt("violations %g, max lhs/rhs %.4f", violations, worst)};
  });

  criterion(4, "Kahane/Jensen chain q=1 <= q=2 <= q=4 and kahane_ratio >= 1", 60.0, [] {
    const auto suite = instance_suite(4004, 200, 24, 6);
    std::mt19937_64 rng(4005);
    int bad = 0, sampled = 0;
    double min_kahane = INFINITY;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const auto& in = suite[i];
      SamplerConfig cfg;
      cfg.exact_cutoff = 12;
      cfg.samples = 20000;
      cfg.seed = i;
      const Estimate a1 = rademacher_average(in.xs, in.space, 1.0, cfg);
      const Estimate a2 = rademacher_average(in.xs, in.space, 2.0, cfg);
      const Estimate a4 = rademacher_average(in.xs, in.space, 4.0, cfg);
      if (a1.mode == Mode::mc) ++sampled;
      if (a1.value > a2.value + 3.0 * std::hypot(a1.stderr_, a2.stderr_)) ++bad;
      if (a2.value > a4.value + 3.0 * std::hypot(a2.stderr_, a4.stderr_)) ++bad;
      if (in.xs.size() <= cfg.exact_cutoff) {
        const double k = kahane_ratio(in.xs, in.space, gen::uniform(rng, 1.0, 4.0), cfg);
        min_kahane = std::min(min_kahane, k);
        if (k < 1.0 - 1e-9) ++bad;
      }
    }
    return Outcome{bad == 0, fmt("chain violations %g, sampled instances %g, min kahane %.12f", bad, sampled, min_kahane)};
  });

  criterion(5, "hprad_norm / rad_norm in [0.25, 4], p in {1,2,4}, 200 instances", 300.0, [] {
    const auto suite = instance_suite(5005, 200, 6, 4);
    double lo = INFINITY, hi = 0.0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const auto d = as_polynomial(suite[i]);
      const double rad = rad_norm(suite[i].xs, suite[i].space).value;
      for (double p : {1.0, 2.0, 4.0}) {
        SamplerConfig cfg;
        cfg.samples = 5000;
        cfg.seed = i;
        const double r = hprad_norm(d, p, cfg).value / rad;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    return Outcome{lo >= 0.25 && hi <= 4.0, fmt("ratio range [%.4f, %.4f]", lo, hi)};
  });

  criterion(6, "Type/cotype exact witnesses sqrt(n), n in {4,8,16}; l2 witnesses 1", 10.0, [] {
    double err = 0.0;
    for (std::size_t n : {4u, 8u, 16u}) {
      std::vector<Element> basis;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<Complex> v(n);
        v[i] = 1.0;
        basis.emplace_back(v);
      }
      const double target = std::sqrt(static_cast<double>(n));
      err = std::max(err, std::abs(type_constant_witness(basis, SpaceSpec::sequence(1.0, n)).value - target));
      err = std::max(err, std::abs(cotype_constant_witness(basis, SpaceSpec::sup(n)).value - target));
    }
    std::mt19937_64 rng(6006);
    for (int i = 0; i < 20; ++i) {
      const auto space = SpaceSpec::sequence(2.0, gen::uniform_int(rng, 1, 8));
      const auto xs = gen::elements(rng, space, gen::uniform_int(rng, 1, 12));
      err = std::max(err, std::abs(type_constant_witness(xs, space).value - 1.0));
      err = std::max(err, std::abs(cotype_constant_witness(xs, space).value - 1.0));
    }
    return Outcome{err <= 1e-12, fmt("max deviation %.2e", err)};
  });

  criterion(7, "Hilbert rigidity: ruc_ratio = rud_ratio = 1 at p=2, 50 instances", 10.0, [] {
    std::mt19937_64 rng(7007);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
      const auto space = SpaceSpec::hilbert(gen::uniform_int(rng, 1, 8));
      DirichletPolynomial d(space);
      const std::size_t terms = gen::uniform_int(rng, 1, 12);
      while (d.terms().size() < terms) d.set(gen::uniform_int(rng, 1, 500), Element(gen::coords(rng, space.dimension())));
      if (ruc_ratio(d, 2.0).ratio != 1.0 || rud_ratio(d, 2.0).ratio != 1.0) ++bad;
    }
    return Outcome{bad == 0, fmt("instances with ratio != 1: %g", bad)};
  });

  criterion(8, "Dirichlet kernel: L1(2) = 4/pi, slope against ln N near 4/pi^2", 60.0, [] {
    const double l2 = dirichlet_kernel_l1(2).value;
    const std::vector<std::uint64_t> lengths{8, 16, 32, 64, 128, 256};
    const auto k = experiment_kernel(lengths);
    const double target = 4.0 / (std::numbers::pi * std::numbers::pi);
    const double dev = std::abs(l2 - 4.0 / std::numbers::pi);
    const double rel = std::abs(k.slope - target) / target;
    return Outcome{dev <= 1e-8 && rel <= 0.2, fmt("|L1(2) - 4/pi| %.2e, slope %.5f (rel dev %.3f)", dev, k.slope, rel)};
  });

  criterion(9, "Prime progressions: (199, 210) for N=10, ratios nondecreasing", 5.0, [] {
    const auto ap = prime_ap_search(10, 3000);
    if (!ap || ap->start != 199 || ap->step != 210) return Outcome{false, "wrong progression"};
    const std::vector<std::uint64_t> lengths{3, 4, 5, 6, 7, 8, 9, 10};
    const auto rows = experiment_prime_ap(lengths, 3000);
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].ratio >= rows[i - 1].ratio;
    const double growth = rows.back().ratio / rows.front().ratio;
    return Outcome{monotone && growth >= 1.2,
                   fmt("ratio N=3 %.4f, N=10 %.4f, growth %.4f", rows.front().ratio, rows.back().ratio, growth)};
  });

  criterion(10, "Lacunary: ratio at N=64 at least twice pi*sqrt(2)/4", 10.0, [] {
    const std::vector<std::uint64_t> lengths{2, 64};
    const auto rows = experiment_lacunary_power(lengths);
    const double base = std::numbers::pi * std::sqrt(2.0) / 4.0;
    const double factor = rows[1].ratio / base;
    return Outcome{std::abs(rows[0].ratio - base) <= 1e-8 && factor >= 2.0,
                   fmt("N=2 %.6f, N=64 %.6f, factor %.4f", rows[0].ratio, rows[1].ratio, factor)};
  });

  criterion(11, "Summing basis: M + 3 stderr >= l2 on 20 random vectors", 120.0, [] {
    std::mt19937_64 rng(1111);
    int bad = 0;
    double max_ratio = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto a = gen::coords(rng, gen::uniform_int(rng, 1, 8));
      SamplerConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(i);
      const auto r = experiment_summing_basis(a, cfg);
      if (!(r.sup_norm.value + 3.0 * r.sup_norm.stderr_ >= r.l2)) ++bad;
      max_ratio = std::max(max_ratio, r.ratio);
    }
    return Outcome{bad == 0, fmt("failures %g, empirical Carleson-Hunt ratio max %.4f", bad, max_ratio)};
  });

  criterion(12, "CLI goldens byte-stable; malformed fixtures exit 2", 10.0, [&] {
    std::ifstream cases(golden + "/cases.txt");
    if (!cases) return Outcome{false, "missing cases.txt"};
    int checked = 0, bad = 0;
    std::string mismatches;
    for (std::string line; std::getline(cases, line);) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream words(line);
      std::string name;
      int expected = 0;
      words >> name >> expected;
      std::vector<std::string> args;
      for (std::string w; words >> w;) {
        const auto at = w.find("@FIXTURES@");
        if (at != std::string::npos) w.replace(at, 10, fixtures);
        args.push_back(w);
      }
      const std::string want = read_file(golden + "/" + name + ".out");
      for (int rep = 0; rep < 2; ++rep) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        if (code != expected || out.str() != want) {
          ++bad;
          mismatches += " " + name;
          break;
        }
      }
      ++checked;
    }
    int rejected = 0;
    for (const char* f : {"bad_duplicate_n.json", "bad_complex_pair.json", "bad_exponent.json"}) {
      std::ostringstream out, err;
      if (cli::run({"norm", "--input", fixtures + "/" + f}, out, err) == 2) ++rejected;
    }
    return Outcome{bad == 0 && rejected == 3 && checked > 0,
                   std::to_string(checked) + " cases, " + std::to_string(rejected) + "/3 malformed rejected" +
                       (mismatches.empty() ? "" : "; mismatched:" + mismatches)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
