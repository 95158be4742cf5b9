#pragma once

// Streaming moments and the block-parallel sample driver shared by every
// sampling estimator. Samples are grouped into fixed-size blocks and merged
// in block order, so results are bit-identical for any thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "hardy/estimate.hpp"

namespace hardy::detail {

inline double powered(double raw, double p) {
  if (p == 1.0) return raw;
  if (p == 2.0) return raw * raw;
  return std::pow(raw, p);
}

/// Error an inner norm evaluation contributes to an outer average.
inline double inner_error(const Estimate& e) { return std::max(e.abs_error, e.stderr_); }

/// Welford moments of raw^p together with the range of raw.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double min_raw = std::numeric_limits<double>::infinity();
  double max_raw = -std::numeric_limits<double>::infinity();

  void add(double raw, double value) {
    ++count;
    const double delta = value - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (value - mean);
    min_raw = std::min(min_raw, raw);
    max_raw = std::max(max_raw, raw);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double n = na + nb;
    const double delta = o.mean - mean;
    mean += delta * nb / n;
    m2 += o.m2 + delta * delta * na * nb / n;
    count += o.count;
    min_raw = std::min(min_raw, o.min_raw);
    max_raw = std::max(max_raw, o.max_raw);
  }

  bool constant() const { return count > 0 && min_raw == max_raw; }
};

/// (E raw^p)^{1/p}. When every sample had the same raw value that value is
/// returned unchanged; otherwise mc mode carries a delta-method stderr.
inline Estimate power_mean_estimate(const Moments& m, double p, Mode mode) {
  Estimate e;
  e.mode = mode;
  e.samples_used = m.count;
  if (m.count == 0) return e;
  if (m.constant()) {
    e.value = m.min_raw;
    return e;
  }
  e.value = p == 1.0 ? m.mean : std::pow(m.mean, 1.0 / p);
  if (mode == Mode::mc && m.count > 1 && m.mean > 0.0) {
    const double n = static_cast<double>(m.count);
    const double se_mean = std::sqrt(m.m2 / (n - 1.0) / n);
    e.stderr_ = e.value / (p * m.mean) * se_mean;
  }
  return e;
}

inline constexpr std::uint64_t kBlockSize = 2048;

/// Runs worker(i, acc) for i in [0, count), where acc holds `channels`
/// accumulators private to the current block. Each thread works on its own
/// copy of `proto`. Blocks are processed in waves of `threads` and merged in
/// block order, so memory stays at threads x channels accumulators.
template <class Worker>
std::vector<Moments> accumulate(std::uint64_t count, std::size_t channels, unsigned threads,
                                const Worker& proto) {
  const std::uint64_t blocks = (count + kBlockSize - 1) / kBlockSize;
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(blocks, 1)));
  std::vector<Worker> pool(workers, proto);
  std::vector<std::vector<Moments>> wave(workers, std::vector<Moments>(channels));
  std::vector<Moments> total(channels);

  auto run_block = [&](unsigned slot, std::uint64_t b) {
    auto& acc = wave[slot];
    std::fill(acc.begin(), acc.end(), Moments{});
    const std::uint64_t end = std::min(count, (b + 1) * kBlockSize);
    for (std::uint64_t i = b * kBlockSize; i < end; ++i) pool[slot](i, std::span<Moments>(acc));
  };

  for (std::uint64_t first = 0; first < blocks; first += workers) {
    const unsigned in_wave = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks - first));
    if (in_wave == 1) {
      run_block(0, first);
    } else {
      std::vector<std::jthread> threads_in_wave;
      threads_in_wave.reserve(in_wave);
      for (unsigned s = 0; s < in_wave; ++s) {
        threads_in_wave.emplace_back([&, s] { run_block(s, first + s); });
      }
    }
    for (unsigned s = 0; s < in_wave; ++s) {
      for (std::size_t c = 0; c < channels; ++c) total[c].merge(wave[s][c]);
    }
  }
  return total;
}

/// Runs fn(i) for i in [0, count) split over `threads` contiguous ranges;
/// every thread calls its own copy of `proto`.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned threads, const Fn& proto) {
  const unsigned workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(count, 1)));
  if (workers <= 1) {
    Fn fn = proto;
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (unsigned t = 0; t < workers; ++t) {
    const std::uint64_t lo = t * chunk;
    const std::uint64_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&proto, lo, hi] {
      Fn fn = proto;
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

}  // namespace hardy::detail
