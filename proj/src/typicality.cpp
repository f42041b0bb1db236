#include "tss/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tss/errors.hpp"

namespace tss {

namespace {

// Per-symbol -log2 p, +inf where p = 0.
std::vector<double> symbol_surprisals(const Pmf& source) {
  std::vector<double> v(source.support_size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = source[i] > 0.0 ? -std::log2(source[i]) : std::numeric_limits<double>::infinity();
  }
  return v;
}

class TypicalityTest {
 public:
  TypicalityTest(const Pmf& source, double gamma)
      : surprisal_(symbol_surprisals(source)),
        entropy_(entropy(source)),
        gamma_(gamma),
        counts_(source.support_size()) {}

  bool operator()(std::span<const Symbol> seq) {
    std::fill(counts_.begin(), counts_.end(), 0);
    for (Symbol s : seq) ++counts_[s];
    double total = 0.0;
    for (std::size_t k = 0; k < counts_.size(); ++k) {
      if (counts_[k] == 0) continue;
      if (std::isinf(surprisal_[k])) return false;
      total += static_cast<double>(counts_[k]) * surprisal_[k];
    }
    const double rate = total / static_cast<double>(seq.size());
    return std::abs(rate - entropy_) <= gamma_ + kTypicalityTolerance;
  }

 private:
  std::vector<double> surprisal_;
  double entropy_;
  double gamma_;
  std::vector<std::size_t> counts_;
};

void check_symbols(std::span<const Symbol> seq, const Pmf& source) {
  if (seq.empty()) throw std::invalid_argument("sequence must be non-empty");
  for (Symbol s : seq) {
    if (s >= source.support_size()) throw std::out_of_range("symbol outside source alphabet");
  }
}

}  // namespace

GammaSchedule GammaSchedule::power_law(double a) {
  if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("power_law: exponent must be in (0, 0.5)");
  return {Kind::kPowerLaw, a};
}

GammaSchedule GammaSchedule::constant(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("constant schedule: gamma must be positive");
  }
  return {Kind::kConstant, gamma};
}

double gamma_at(const GammaSchedule& sched, std::size_t n) {
  if (n == 0) throw std::invalid_argument("gamma_at: n must be at least 1");
  if (sched.kind == GammaSchedule::Kind::kConstant) return sched.parameter;
  return std::pow(static_cast<double>(n), -sched.parameter);
}

double surprisal_rate(std::span<const Symbol> seq, const Pmf& source) {
  check_symbols(seq, source);
  std::vector<std::size_t> counts(source.support_size(), 0);
  for (Symbol s : seq) ++counts[s];
  double total = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    if (source[k] == 0.0) return std::numeric_limits<double>::infinity();
    total += static_cast<double>(counts[k]) * -std::log2(source[k]);
  }
  return total / static_cast<double>(seq.size());
}

bool is_typical(std::span<const Symbol> seq, const Pmf& source, double gamma) {
  check_symbols(seq, source);
  return TypicalityTest(source, gamma)(seq);
}

TypicalIndex TypicalIndex::build(const Pmf& source, std::size_t n, double gamma,
                                 std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("build_index: n must be at least 1");
  if (!(gamma >= 0.0)) throw std::invalid_argument("build_index: gamma must be >= 0");
  const std::size_t k = source.support_size();
  std::uint64_t states = 0;
  try {
    states = checked_power(k, n);
  } catch (const CapExceeded&) {
    states = std::numeric_limits<std::uint64_t>::max();
  }
  if (states > cap) {
    throw CapExceeded("build_index: " + std::to_string(k) + "^" + std::to_string(n) +
                      " tuples exceed the enumeration cap; use the Monte Carlo path for this n");
  }
  TypicalityTest test(source, gamma);
  std::vector<std::uint64_t> codes;
  Sequence seq(n, 0);
  std::uint64_t code = 0;
  do {
    if (test(seq)) codes.push_back(code);
    ++code;
  } while (advance_odometer(seq, k));
  if (codes.empty()) {
    throw EmptyTypicalSet("build_index: no sequence of length " + std::to_string(n) +
                          " is typical at gamma = " + std::to_string(gamma));
  }
  return TypicalIndex(source, n, gamma, std::move(codes));
}

std::uint64_t TypicalIndex::xi_plus_code(std::uint64_t code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return codes_.size();
  return static_cast<std::uint64_t>(it - codes_.begin());
}

std::uint64_t TypicalIndex::xi_plus(std::span<const Symbol> seq) const {
  if (seq.size() != n_) throw std::invalid_argument("xi_plus: wrong sequence length");
  return xi_plus_code(sequence_code(seq, alphabet()));
}

std::uint64_t TypicalIndex::rank(std::span<const Symbol> seq) const {
  const std::uint64_t m = xi_plus(seq);
  if (m == size()) throw std::invalid_argument("rank: sequence is not typical");
  return m;
}

void TypicalIndex::unrank(std::uint64_t m, std::span<Symbol> out) const {
  if (m >= size()) throw std::out_of_range("unrank: index outside [0, M_n)");
  if (out.size() != n_) throw std::invalid_argument("unrank: wrong output length");
  decode_sequence(codes_[m], alphabet(), out);
}

Sequence TypicalIndex::unrank(std::uint64_t m) const {
  Sequence out(n_);
  unrank(m, out);
  return out;
}

double atypical_mass(const Pmf& source, std::size_t n, double gamma, std::uint64_t cap) {
  const IidExtension ext(source, n);
  if (ext.state_count() > cap) {
    throw CapExceeded("atypical_mass: tuple count exceeds the enumeration cap");
  }
  const std::size_t k = source.support_size();
  TypicalityTest test(source, gamma);
  Sequence seq(n, 0);
  double mass = 0.0;
  do {
    if (!test(seq)) mass += ext.prob(seq);
  } while (advance_odometer(seq, k));
  return mass;
}

McEstimate atypical_mass_mc(const Pmf& source, std::size_t n, double gamma, std::uint64_t trials,
                            const RandomStream& rng, unsigned threads) {
  const IidExtension ext(source, n);
  const std::uint64_t hits = count_successes(trials, rng, threads, [&] {
    return [&ext, test = TypicalityTest(source, gamma), seq = Sequence(n)](
               RandomStream& r) mutable {
      ext.sample(r, seq);
      return !test(seq);
    };
  });
  return binomial_estimate(hits, trials);
}

}  // namespace tss
