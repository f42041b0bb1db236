#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tss/montecarlo.hpp"
#include "tss/probcore.hpp"
#include "tss/sequence.hpp"

namespace tss {

struct GammaSchedule {
  enum class Kind { kPowerLaw, kConstant };

  Kind kind = Kind::kPowerLaw;
  double parameter = 1.0 / 3.0;  // exponent a for power law, gamma for constant

  // gamma_n = n^{-a}; a must lie in (0, 0.5).
  static GammaSchedule power_law(double a);
  static GammaSchedule constant(double gamma);
  static GammaSchedule default_schedule() { return power_law(1.0 / 3.0); }
};

double gamma_at(const GammaSchedule& sched, std::size_t n);

// Slack added to the closed interval so that sequences sitting exactly on the
// boundary are not lost to rounding in the surprisal sum.
inline constexpr double kTypicalityTolerance = 1e-12;

// -(1/n) log2 P_{S^n}(s^n), accumulated per symbol value so the result does
// not depend on the order of the tuple. +inf if a symbol has probability 0.
double surprisal_rate(std::span<const Symbol> seq, const Pmf& source);

bool is_typical(std::span<const Symbol> seq, const Pmf& source, double gamma);

// The typical set, enumerated in lexicographic order. rank() is the position
// of a member in that order.
class TypicalIndex {
 public:
  // Throws CapExceeded if |S|^n > cap and EmptyTypicalSet if no sequence is
  // typical.
  static TypicalIndex build(const Pmf& source, std::size_t n, double gamma,
                            std::uint64_t cap = kDefaultStateCap);

  std::size_t length() const { return n_; }
  double gamma() const { return gamma_; }
  const Pmf& source() const { return source_; }
  std::size_t alphabet() const { return source_.support_size(); }
  std::uint64_t size() const { return codes_.size(); }

  // Throws std::invalid_argument for non-members.
  std::uint64_t rank(std::span<const Symbol> seq) const;
  // Throws std::out_of_range for m >= size().
  Sequence unrank(std::uint64_t m) const;
  void unrank(std::uint64_t m, std::span<Symbol> out) const;

  // rank for members, size() otherwise.
  std::uint64_t xi_plus(std::span<const Symbol> seq) const;
  std::uint64_t xi_plus_code(std::uint64_t code) const;

  std::uint64_t member_code(std::uint64_t m) const { return codes_.at(m); }
  std::span<const std::uint64_t> member_codes() const { return codes_; }

 private:
  TypicalIndex(Pmf source, std::size_t n, double gamma, std::vector<std::uint64_t> codes)
      : source_(std::move(source)), n_(n), gamma_(gamma), codes_(std::move(codes)) {}

  Pmf source_;
  std::size_t n_;
  double gamma_;
  std::vector<std::uint64_t> codes_;
};

inline TypicalIndex build_index(const Pmf& source, std::size_t n, double gamma,
                                std::uint64_t cap = kDefaultStateCap) {
  return TypicalIndex::build(source, n, gamma, cap);
}

// Pr{S^n not typical}, by summing over every tuple.
double atypical_mass(const Pmf& source, std::size_t n, double gamma,
                     std::uint64_t cap = kDefaultStateCap);

McEstimate atypical_mass_mc(const Pmf& source, std::size_t n, double gamma, std::uint64_t trials,
                            const RandomStream& rng, unsigned threads = 1);

}  // namespace tss
