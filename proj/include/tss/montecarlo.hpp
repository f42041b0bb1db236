#pragma once

// Partition-invariant Monte Carlo counting.
//
// Trials are cut into fixed blocks of kMcBlockSize; block b always draws from
// rng.split(b) and the per-block success counts are summed as integers. The
// total is therefore identical for any number of worker threads.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "tss/random_stream.hpp"

namespace tss {

inline constexpr std::uint64_t kMcBlockSize = 65536;

struct McEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double halfwidth = 0.0;  // 95%
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Normal-approximation 95% interval; rule of three when the tally is 0 or
// equal to the trial count.
McEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials);

struct BinomialInterval {
  double low = 0.0;
  double high = 1.0;
};

// Exact (Clopper-Pearson) two-sided interval with miss probability at most
// alpha.
BinomialInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double alpha);

// 0 means one thread per hardware core.
unsigned resolve_threads(unsigned requested);

// make_trial() is called once per worker and must return a callable
// bool(RandomStream&) that runs one trial.
template <class MakeTrial>
std::uint64_t count_successes(std::uint64_t trials, const RandomStream& rng, unsigned threads,
                              MakeTrial&& make_trial) {
  const std::uint64_t blocks = (trials + kMcBlockSize - 1) / kMcBlockSize;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> total{0};
  auto worker = [&] {
    auto trial = make_trial();
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      RandomStream stream = rng.split(b);
      const std::uint64_t count = std::min(kMcBlockSize, trials - b * kMcBlockSize);
      std::uint64_t hits = 0;
      for (std::uint64_t t = 0; t < count; ++t) hits += trial(stream) ? 1 : 0;
      total += hits;
    }
  };
  const unsigned n = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(blocks, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return total.load();
}

}  // namespace tss
