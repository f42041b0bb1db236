#include "tss/rational.hpp"

#include <stdexcept>

#include "tss/errors.hpp"

namespace tss {

namespace {

std::uint64_t state_count(const std::vector<std::size_t>& dims) {
  std::uint64_t n = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("RationalJoint: axis size must be positive");
    n *= d;
    if (n > kRationalStateCap) throw CapExceeded("RationalJoint: more than 2^16 states");
  }
  return n;
}

std::vector<std::size_t> unravel(std::uint64_t idx, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> t(dims.size());
  for (std::size_t a = dims.size(); a-- > 0;) {
    t[a] = idx % dims[a];
    idx /= dims[a];
  }
  return t;
}

}  // namespace

RationalJoint::RationalJoint(std::vector<std::size_t> dims, std::vector<Rational> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  if (dims_.empty()) throw std::invalid_argument("RationalJoint: need at least one axis");
  if (state_count(dims_) != probs_.size()) {
    throw std::invalid_argument("RationalJoint: table size does not match dims");
  }
  Rational total = 0;
  for (const auto& p : probs_) {
    if (p < 0) throw std::invalid_argument("RationalJoint: negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("RationalJoint: total is not exactly 1");
}

RationalJoint RationalJoint::from_weights(std::vector<std::size_t> dims,
                                          std::span<const std::uint64_t> weights) {
  Rational total = 0;
  for (auto w : weights) total += w;
  if (total == 0) throw std::invalid_argument("RationalJoint: all weights are zero");
  std::vector<Rational> probs;
  probs.reserve(weights.size());
  for (auto w : weights) probs.emplace_back(Rational(w) / total);
  return RationalJoint(std::move(dims), std::move(probs));
}

RationalJoint RationalJoint::marginal(std::span<const std::size_t> axes) const {
  std::vector<std::size_t> dims;
  for (std::size_t a : axes) {
    if (a >= dims_.size()) throw std::out_of_range("RationalJoint::marginal: bad axis");
    dims.push_back(dims_[a]);
  }
  std::vector<Rational> out(state_count(dims), Rational(0));
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] == 0) continue;
    const auto t = unravel(i, dims_);
    std::uint64_t k = 0;
    for (std::size_t a : axes) k = k * dims_[a] + t[a];
    out[k] += probs_[i];
  }
  return RationalJoint(std::move(dims), std::move(out));
}

JointPmf RationalJoint::to_double() const {
  std::vector<JointPmf::Entry> entries;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] != 0) entries.push_back({i, static_cast<double>(probs_[i])});
  }
  return JointPmf(dims_, std::move(entries));
}

HighFloat log2_exact(const Rational& q) {
  if (q <= 0) throw std::domain_error("log2_exact: argument must be positive");
  return boost::multiprecision::log2(HighFloat(q));
}

HighFloat entropy(const RationalJoint& j) {
  HighFloat h = 0;
  for (const auto& p : j.probs()) {
    if (p > 0) h -= HighFloat(p) * log2_exact(p);
  }
  return h;
}

HighFloat mutual_information(const RationalJoint& j, std::span<const std::size_t> axes_a,
                             std::span<const std::size_t> axes_b) {
  std::vector<std::size_t> both(axes_a.begin(), axes_a.end());
  both.insert(both.end(), axes_b.begin(), axes_b.end());
  const auto pa = j.marginal(axes_a);
  const auto pb = j.marginal(axes_b);
  const auto pab = j.marginal(both);
  const std::size_t nb = pb.probs().size();
  HighFloat mi = 0;
  for (std::size_t k = 0; k < pab.probs().size(); ++k) {
    const Rational& p = pab.probs()[k];
    if (p == 0) continue;
    const Rational ratio = p / (pa.probs()[k / nb] * pb.probs()[k % nb]);
    mi += HighFloat(p) * log2_exact(ratio);
  }
  return mi;
}

HighFloat binary_entropy(const Rational& q) {
  if (q < 0 || q > 1) throw std::domain_error("binary_entropy: q outside [0, 1]");
  if (q == 0 || q == 1) return 0;
  const Rational r = 1 - q;
  return -HighFloat(q) * log2_exact(q) - HighFloat(r) * log2_exact(r);
}

}  // namespace tss
