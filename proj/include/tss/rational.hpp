#pragma once

// Exact-rational joints for small state spaces. Probabilities are big-integer
// fractions, and logarithms are evaluated in 50-digit binary floating point,
// so rounding cannot be mistaken for an inequality violation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "tss/probcore.hpp"

namespace tss {

using Rational = boost::multiprecision::cpp_rational;
using HighFloat = boost::multiprecision::cpp_bin_float_50;

inline constexpr std::uint64_t kRationalStateCap = std::uint64_t{1} << 16;

class RationalJoint {
 public:
  // Dense row-major table; must sum to exactly 1.
  RationalJoint(std::vector<std::size_t> dims, std::vector<Rational> probs);

  // Normalizes non-negative integer weights.
  static RationalJoint from_weights(std::vector<std::size_t> dims,
                                    std::span<const std::uint64_t> weights);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const Rational> probs() const { return probs_; }

  RationalJoint marginal(std::span<const std::size_t> axes) const;
  JointPmf to_double() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Rational> probs_;
};

HighFloat log2_exact(const Rational& q);

HighFloat entropy(const RationalJoint& j);
HighFloat mutual_information(const RationalJoint& j, std::span<const std::size_t> axes_a,
                             std::span<const std::size_t> axes_b);
HighFloat binary_entropy(const Rational& q);

}  // namespace tss
