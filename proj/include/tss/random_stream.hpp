#pragma once

#include <cstdint>
#include <string_view>

namespace tss {

// Counter-based pseudo-random stream.
//
// Draw k (k = 1, 2, ...) of a stream with key K is
//
//     splitmix64_mix(K + k * 0x9e3779b97f4a7c15)
//
// where splitmix64_mix is the SplitMix64 output finalizer. The output depends
// only on (key, counter), so sequences are bit-identical on every platform.
// Substreams are derived with split(i), which re-keys through the same mixer.
//
// The algorithm is pinned as kAlgorithm; any change to the mapping above must
// bump the version suffix because recorded Monte Carlo reports depend on it.
class RandomStream {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64-ctr/1";

  explicit RandomStream(std::uint64_t seed) : key_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_unit();

  // Uniform on {0, ..., bound - 1}; bound must be positive. Uses Lemire's
  // multiply-shift with rejection, so the result is exactly uniform.
  std::uint64_t next_below(std::uint64_t bound);

  // Independent substream. Does not advance this stream.
  RandomStream split(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace tss
