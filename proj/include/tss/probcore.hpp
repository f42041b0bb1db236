#pragma once

// Exact arithmetic on finite distributions. All information quantities are in
// bits, and 0 log 0 = 0 everywhere.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tss/random_stream.hpp"
#include "tss/sequence.hpp"

namespace tss {

// Ceiling on the number of states any dense enumeration or materialization
// may touch unless the caller passes a different cap.
inline constexpr std::uint64_t kDefaultStateCap = std::uint64_t{1} << 24;

inline constexpr double kNormalizationTolerance = 1e-12;

// Information quantities that come out slightly negative from rounding are
// clamped to zero when they lie within this distance of it.
inline constexpr double kInformationClampTolerance = 1e-9;

class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);

  static Pmf uniform(std::size_t k);
  static Pmf point_mass(std::size_t k, std::size_t at);

  // Accepts a JSON array ("[0.7, 0.3]") or a comma/whitespace separated list.
  static Pmf parse(std::string_view text);

  std::size_t support_size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  std::size_t nonzero_count() const;

  bool operator==(const Pmf&) const = default;

 private:
  std::vector<double> probs_;
};

// Joint distribution over a product of finite axes. Storage is sparse: only
// states with positive probability are kept, sorted by row-major index.
class JointPmf {
 public:
  struct Entry {
    std::uint64_t index;
    double prob;
  };

  // Duplicate indices are merged, zero entries dropped.
  JointPmf(std::vector<std::size_t> dims, std::vector<Entry> entries);

  static JointPmf from_pmf(const Pmf& p);
  static JointPmf product(std::span<const Pmf> factors);
  static JointPmf from_dense(std::vector<std::size_t> dims, std::span<const double> probs);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const Entry> entries() const { return entries_; }
  std::uint64_t state_count() const { return state_count_; }

  std::uint64_t linear_index(std::span<const std::size_t> tuple) const;
  void unravel(std::uint64_t index, std::span<std::size_t> tuple) const;

  double prob(std::span<const std::size_t> tuple) const;
  double total() const;

  // Marginal over the listed axes, in the listed order.
  JointPmf marginal(std::span<const std::size_t> axes) const;
  Pmf marginal_pmf(std::size_t axis) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Entry> entries_;
  std::uint64_t state_count_ = 1;
};

double entropy(const Pmf& p);
double entropy(const JointPmf& j);

// h(q); throws std::domain_error outside [0, 1].
double binary_entropy(double q);

// I(A;B) for a two-axis joint.
double mutual_information(const JointPmf& j);
// I(A;B) where A and B are groups of axes.
double mutual_information(const JointPmf& j, std::span<const std::size_t> axes_a,
                          std::span<const std::size_t> axes_b);

// H(target | all other axes).
double conditional_entropy(const JointPmf& j, std::size_t target_axis);
double conditional_entropy(const JointPmf& j, std::span<const std::size_t> target_axes,
                           std::span<const std::size_t> given_axes);

// Deterministic map from an input tuple to an output tuple. Returning false
// means the map is undefined at that input.
using OutputMap = std::function<bool(std::span<const std::size_t>, std::span<std::size_t>)>;

// Joint of (inputs..., outputs...) obtained by pushing src through map. Throws
// std::invalid_argument if the map is undefined on a support point, and
// CapExceeded if src has more than cap support points.
JointPmf induce_joint(const JointPmf& src, const OutputMap& map, std::vector<std::size_t> out_dims,
                      std::uint64_t cap = kDefaultStateCap);

// Same pushforward, marginalized onto the outputs.
JointPmf pushforward(const JointPmf& src, const OutputMap& map, std::vector<std::size_t> out_dims,
                     std::uint64_t cap = kDefaultStateCap);

// Inverse-CDF sampler over the stored symbol order.
class PmfSampler {
 public:
  explicit PmfSampler(const Pmf& p);
  std::size_t operator()(RandomStream& rng) const;

 private:
  std::vector<double> cdf_;
  std::size_t last_positive_ = 0;
};

std::size_t sample(const Pmf& p, RandomStream& rng);

// P_{S^n} for a memoryless source, evaluated lazily.
class IidExtension {
 public:
  IidExtension(Pmf base, std::size_t n);

  const Pmf& base() const { return base_; }
  std::size_t length() const { return n_; }

  double prob(std::span<const Symbol> seq) const;

  // |S|^n; throws CapExceeded if it does not fit in 63 bits.
  std::uint64_t state_count() const;

  // Dense PMF indexed by sequence_code(). Refused above cap.
  Pmf materialize(std::uint64_t cap = kDefaultStateCap) const;

  void sample(RandomStream& rng, std::span<Symbol> out) const;

 private:
  Pmf base_;
  std::size_t n_;
  PmfSampler sampler_;
};

IidExtension iid_extension(const Pmf& p, std::size_t n);

namespace detail {

// -p log2 p, memoizing a few recent arguments. The exact evaluators feed it
// long runs of identical probabilities.
class PlogpCache {
 public:
  double operator()(double p) {
    if (p <= 0.0) return 0.0;
    for (const auto& slot : slots_) {
      if (slot.first == p) return slot.second;
    }
    const double v = -p * std::log2(p);
    slots_[next_] = {p, v};
    next_ = (next_ + 1) % slots_.size();
    return v;
  }

 private:
  std::array<std::pair<double, double>, 16> slots_{};
  std::size_t next_ = 0;
};

double clamp_information(double value);

}  // namespace detail

struct ChannelInformation {
  double output_entropy = 0.0;       // H(C)
  double conditional_entropy = 0.0;  // H(C | A)
  double mutual_information = 0.0;   // I(A; C)
  std::vector<double> output_marginal;
};

// Exact H(C), H(C|A) and I(A;C) for C = map(A, B) with A and B independent,
// streamed over the |A| x |B| grid so that no joint table is materialized.
// map(a, b) must return an output index below output_size.
template <class Map>
ChannelInformation channel_information(const Pmf& input, const Pmf& noise, std::size_t output_size,
                                       Map&& map) {
  ChannelInformation info;
  info.output_marginal.assign(output_size, 0.0);
  std::vector<double> conditional(output_size, 0.0);
  std::vector<std::size_t> touched;
  detail::PlogpCache plogp;

  for (std::size_t a = 0; a < input.support_size(); ++a) {
    const double pa = input[a];
    if (pa == 0.0) continue;
    for (std::size_t b = 0; b < noise.support_size(); ++b) {
      const double pb = noise[b];
      if (pb == 0.0) continue;
      const std::size_t c = map(a, b);
      if (conditional[c] == 0.0) touched.push_back(c);
      conditional[c] += pb;
    }
    double h = 0.0;
    for (std::size_t c : touched) {
      h += plogp(conditional[c]);
      info.output_marginal[c] += pa * conditional[c];
      conditional[c] = 0.0;
    }
    touched.clear();
    info.conditional_entropy += pa * h;
  }
  for (double q : info.output_marginal) info.output_entropy += plogp(q);
  info.mutual_information =
      detail::clamp_information(info.output_entropy - info.conditional_entropy);
  return info;
}

}  // namespace tss
