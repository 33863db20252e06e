#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "powerdex/combinatorics.hpp"
#include "powerdex/evaluable_game.hpp"
#include "powerdex/power_vector.hpp"

namespace powerdex {

/// Fills x with one draw. The default draws i.i.d. uniform coordinates.
using Sampler = std::function<void(std::mt19937_64&, std::span<double>)>;

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline void uniform_sampler(std::mt19937_64& rng, std::span<double> x) {
  for (auto& xi : x) xi = uniform01(rng);
}

/// Worker count: explicit value if positive, else POWERDEX_THREADS, else 1.
inline unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("POWERDEX_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return static_cast<unsigned>(t);
  }
  return 1;
}

struct McOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  Sampler sampler = uniform_sampler;
};

namespace detail {

inline constexpr std::size_t kChunk = 8192;

struct Moments {
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  void add(std::span<const double> x) {
    ++count;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - mean[i];
      mean[i] += d / static_cast<double>(count);
      m2[i] += d * (x[i] - mean[i]);
    }
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double nt = na + nb;
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const double d = o.mean[i] - mean[i];
      mean[i] += d * nb / nt;
      m2[i] += o.m2[i] + d * d * na * nb / nt;
    }
    count += o.count;
  }
};

inline Moments run_chunk(const EvaluableGame& v, const McOptions& opt, std::size_t chunk, std::size_t count,
                         const std::vector<double>& weight) {
  const int n = v.n();
  const PlayerMask all = full_mask(n);
  std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::mt19937_64 rng(seq);
  Moments m{0, std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(n));
  std::vector<double> gap(std::size_t{1} << n);
  std::vector<double> psi(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < count; ++s) {
    opt.sampler(rng, x);
    // Common random numbers: one draw serves every coalition T.
    for (PlayerMask t = 0; t <= all; ++t) {
      for (int i = 0; i < n; ++i) y[i] = contains(t, i) ? 1.0 : x[i];
      const double hi = v(std::span<const double>(y));
      for (int i = 0; i < n; ++i) y[i] = contains(t, i) ? 0.0 : x[i];
      gap[t] = hi - v(std::span<const double>(y));
      if (t == all) break;
    }
    std::fill(psi.begin(), psi.end(), 0.0);
    for (PlayerMask t = 1; t <= all; ++t) {
      const double w = weight[static_cast<std::size_t>(popcount(t))];
      for (int i : members(t)) psi[i] += w * (gap[t] - gap[t & ~(PlayerMask{1} << i)]);
      if (t == all) break;
    }
    m.add(psi);
  }
  return m;
}

}  // namespace detail

/// Monte-Carlo Psi. Samples are split into fixed-size chunks, each with its
/// own stream derived from (seed, chunk), and merged in chunk order, so the
/// result does not depend on the thread count.
inline PowerVector psi_mc(const EvaluableGame& v, const McOptions& opt) {
  if (opt.samples < 1) throw input_error("psi_mc: samples must be at least 1");
  const int n = v.n();
  if (n > 16) throw input_error("psi_mc: n must be at most 16");
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  for (int s = 1; s <= n; ++s) weight[s] = marginal_weight(s, n).to_double();

  const std::size_t chunks = (opt.samples + detail::kChunk - 1) / detail::kChunk;
  std::vector<detail::Moments> parts(chunks);
  const unsigned workers = std::min<std::size_t>(resolve_threads(opt.threads), chunks);
  auto work = [&](unsigned w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      const std::size_t count = std::min(detail::kChunk, opt.samples - c * detail::kChunk);
      parts[c] = detail::run_chunk(v, opt, c, count, weight);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  detail::Moments total{0, std::vector<double>(static_cast<std::size_t>(n)), std::vector<double>(static_cast<std::size_t>(n))};
  for (const auto& p : parts) total.merge(p);

  PowerVector out;
  out.mode = PowerVector::Mode::mc;
  out.samples = opt.samples;
  out.seed = opt.seed;
  for (int i = 0; i < n; ++i) {
    out.estimate.push_back(total.mean[i]);
    const double var = total.count > 1 ? total.m2[i] / static_cast<double>(total.count - 1) : 0.0;
    out.stderr_.push_back(std::sqrt(var / static_cast<double>(total.count)));
  }
  return out;
}

inline PowerVector psi_mc(const EvaluableGame& v, std::size_t samples, std::uint64_t seed, int threads = 0) {
  McOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.threads = threads;
  return psi_mc(v, opt);
}

}  // namespace powerdex
