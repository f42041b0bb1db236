#include "tss/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "tss/errors.hpp"

namespace tss {

namespace {

bool beats(double v, double best) { return v > best + kAttackTieTolerance * std::abs(best); }

}  // namespace

AttackResult optimal_attack(std::uint64_t count,
                            const std::function<double(std::uint64_t)>& acceptance) {
  if (count == 0) throw std::invalid_argument("optimal_attack: empty forgery alphabet");
  AttackResult r;
  r.success_prob = -1.0;
  for (std::uint64_t f = 0; f < count; ++f) {
    const double v = acceptance(f);
    if (beats(v, r.success_prob)) {
      r.success_prob = v;
      r.forgery = {f};
    }
  }
  r.success_prob = std::clamp(r.success_prob, 0.0, 1.0);
  return r;
}

AttackResult optimal_attack_x(std::uint64_t x_count, const Pmf& p_y, const PairPredicate& region) {
  const std::uint64_t ny = p_y.support_size();
  if (x_count != 0 && ny > kDefaultStateCap * 16 / x_count) {
    throw InfeasibleExact("optimal_attack_x: dense evaluation too large; use Monte Carlo mode");
  }
  return optimal_attack(x_count, [&](std::uint64_t x) {
    double acc = 0.0;
    for (std::uint64_t y = 0; y < ny; ++y) {
      if (p_y[y] > 0.0 && region(x, y)) acc += p_y[y];
    }
    return acc;
  });
}

AttackResult optimal_attack_y(std::uint64_t y_count, const Pmf& p_x, const PairPredicate& region) {
  return optimal_attack_x(y_count, p_x, [&](std::uint64_t y, std::uint64_t x) { return region(x, y); });
}

// ---- blockwise ----

BlockwiseAttack::BlockwiseAttack(const BlockwiseParams& params, const BlockwiseLaws& laws)
    : params_(params), laws_(laws), row_x_(params.l(), 0.0), row_y_(params.l(), 0.0) {
  if (laws.p_x.size() != params.share_alphabet() || laws.p_y.size() != params.share_alphabet()) {
    throw std::invalid_argument("BlockwiseAttack: share laws do not match the parameters");
  }
  for (std::uint64_t c = 0; c < params.share_alphabet(); ++c) {
    row_x_[c / params.modulus()] += laws.p_x[c];
    row_y_[c / params.modulus()] += laws.p_y[c];
  }
}

double BlockwiseAttack::acceptance(Direction d, std::uint64_t forged_code) const {
  const BlockShare f = params_.share_from_code(forged_code);
  // The honest share is accepted with the forgery iff its first component
  // matches and its second is not the one completing the sum to M_n.
  const BlockShare blocked{f.l_idx, params_.m() - f.m_idx};
  const auto& row = d == Direction::kForgeX ? row_y_ : row_x_;
  const auto& law = d == Direction::kForgeX ? laws_.p_y : laws_.p_x;
  return std::max(0.0, row[f.l_idx] - law[params_.share_code(blocked)]);
}

AttackResult BlockwiseAttack::optimal(Direction d) const {
  return optimal_attack(params_.share_alphabet(),
                        [&](std::uint64_t code) { return acceptance(d, code); });
}

double BlockwiseAttack::beta() const {
  double b = 0.0;
  for (std::uint64_t c = 0; c < params_.share_alphabet(); ++c) {
    if (laws_.p_x[c] > 0.0) b += laws_.p_x[c] * acceptance(Direction::kForgeX, c);
  }
  return b;
}

// ---- symbolwise ----

namespace {

// Law of the finite-class counts over a block prefix, stored densely with one
// digit of base n+1 per class. Mass that hits the null class is dropped, since
// such a block is always rejected.
class ClassCountLaw {
 public:
  ClassCountLaw(const SymbolwiseCodec& codec, Direction d, std::uint64_t cap)
      : codec_(codec), n_(codec.length()), k_(codec.class_count()) {
    std::uint64_t states = 1;
    strides_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      strides_[i] = states;
      if (states > cap / (n_ + 1)) {
        throw InfeasibleExact("symbolwise attack: class-count space exceeds the state cap; "
                              "use Monte Carlo mode");
      }
      states *= n_ + 1;
    }
    states_ = states;

    const std::size_t forged_size = d == Direction::kForgeX ? codec.x_size() : codec.y_size();
    const std::size_t honest_size = d == Direction::kForgeX ? codec.y_size() : codec.x_size();
    const Pmf& honest = d == Direction::kForgeX ? codec.p_y() : codec.p_x();
    weights_.assign(forged_size, std::vector<double>(k_, 0.0));
    for (std::size_t f = 0; f < forged_size; ++f) {
      for (std::size_t h = 0; h < honest_size; ++h) {
        const int c = d == Direction::kForgeX
                          ? codec.cell_class(static_cast<Symbol>(f), static_cast<Symbol>(h))
                          : codec.cell_class(static_cast<Symbol>(h), static_cast<Symbol>(f));
        if (c != SymbolwiseCodec::kNullClass) weights_[f][static_cast<std::size_t>(c)] += honest[h];
      }
    }

    accept_.assign(states_, 0);
    std::vector<std::size_t> counts(k_);
    for (std::uint64_t idx = 0; idx < states_; ++idx) {
      std::uint64_t rest = idx;
      std::size_t total = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        counts[i] = static_cast<std::size_t>(rest % (n_ + 1));
        rest /= n_ + 1;
        total += counts[i];
      }
      accept_[idx] = total == n_ && codec.accepts_counts(counts);
    }
  }

  std::vector<double> start() const {
    std::vector<double> law(states_, 0.0);
    law[0] = 1.0;
    return law;
  }

  std::vector<double> extend(const std::vector<double>& law, std::size_t forged) const {
    std::vector<double> out(states_, 0.0);
    const auto& w = weights_[forged];
    for (std::uint64_t idx = 0; idx < states_; ++idx) {
      if (law[idx] == 0.0) continue;
      for (std::size_t i = 0; i < k_; ++i) {
        if (w[i] != 0.0) out[idx + strides_[i]] += law[idx] * w[i];
      }
    }
    return out;
  }

  double accepted_mass(const std::vector<double>& law) const {
    double m = 0.0;
    for (std::uint64_t idx = 0; idx < states_; ++idx) {
      if (accept_[idx]) m += law[idx];
    }
    return m;
  }

  std::size_t forged_size() const { return weights_.size(); }

 private:
  const SymbolwiseCodec& codec_;
  std::size_t n_;
  std::size_t k_;
  std::uint64_t states_ = 1;
  std::vector<std::uint64_t> strides_;
  std::vector<std::vector<double>> weights_;
  std::vector<char> accept_;
};

struct TypeSearch {
  const ClassCountLaw& law;
  std::vector<std::size_t> counts;
  double best = -1.0;
  std::vector<std::size_t> best_counts;

  // Counts are tried from largest to smallest, which visits the sorted
  // representative sequences in lexicographic order.
  void run(std::size_t symbol, std::size_t remaining, const std::vector<double>& prefix) {
    if (symbol + 1 == law.forged_size()) {
      std::vector<double> cur = prefix;
      for (std::size_t i = 0; i < remaining; ++i) cur = law.extend(cur, symbol);
      counts[symbol] = remaining;
      const double v = law.accepted_mass(cur);
      if (beats(v, best)) {
        best = v;
        best_counts = counts;
      }
      return;
    }
    std::vector<std::vector<double>> chain{prefix};
    for (std::size_t c = 1; c <= remaining; ++c) chain.push_back(law.extend(chain.back(), symbol));
    for (std::size_t c = remaining + 1; c-- > 0;) {
      counts[symbol] = c;
      run(symbol + 1, remaining - c, chain[c]);
    }
    counts[symbol] = 0;
  }
};

}  // namespace

AttackResult symbolwise_optimal_attack(const SymbolwiseCodec& codec, Direction d,
                                       std::uint64_t state_cap) {
  const ClassCountLaw law(codec, d, state_cap);
  TypeSearch search{law, std::vector<std::size_t>(law.forged_size(), 0), -1.0, {}};
  search.run(0, codec.length(), law.start());
  AttackResult r;
  r.success_prob = std::clamp(search.best, 0.0, 1.0);
  for (std::size_t s = 0; s < search.best_counts.size(); ++s) {
    r.forgery.insert(r.forgery.end(), search.best_counts[s], s);
  }
  return r;
}

double symbolwise_acceptance(const SymbolwiseCodec& codec, Direction d,
                             std::span<const Symbol> forged, std::uint64_t state_cap) {
  if (forged.size() != codec.length()) throw std::invalid_argument("forgery length is not n");
  const ClassCountLaw law(codec, d, state_cap);
  std::vector<double> cur = law.start();
  for (Symbol s : forged) {
    if (s >= law.forged_size()) throw std::out_of_range("forged symbol outside its alphabet");
    cur = law.extend(cur, s);
  }
  return law.accepted_mass(cur);
}

AttackResult fstar_attack_by_types(const SymbolwiseCodec& codec, std::uint64_t cap) {
  const BaseScheme& b = codec.base();
  if (b.name != "fstar") {
    throw InfeasibleExact("type counting applies to the modular base scheme only");
  }
  const std::size_t n = codec.length();
  const std::size_t m = b.x_size;
  const long double log_total = static_cast<long double>(n) * std::log(static_cast<long double>(m));
  std::vector<std::size_t> class_counts(codec.class_count());
  long double accepted = 0.0L;
  for_each_composition(n, b.secret_size, cap,
                       [&](std::span<const std::size_t> type, long double log_mult) {
                         std::fill(class_counts.begin(), class_counts.end(), 0);
                         for (std::size_t v = 0; v < type.size(); ++v) {
                           if (type[v] == 0) continue;
                           const int c = codec.cell_class(static_cast<Symbol>(v), 0);
                           if (c == SymbolwiseCodec::kNullClass) return;
                           class_counts[static_cast<std::size_t>(c)] += type[v];
                         }
                         if (codec.accepts_counts(class_counts)) {
                           accepted += std::exp(log_mult - log_total);
                         }
                       });
  AttackResult r;
  r.success_prob = std::clamp(static_cast<double>(accepted), 0.0, 1.0);
  r.forgery.assign(n, 0);
  return r;
}

// ---- Monte Carlo ----

McEstimate monte_carlo_estimate(const TrialFactory& make_trial, std::uint64_t trials,
                                const RandomStream& rng, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_estimate: trials must be >= 1");
  return binomial_estimate(count_successes(trials, rng, threads, make_trial), trials);
}

AttackResult monte_carlo_attack(const TrialFactory& make_trial, std::uint64_t trials,
                                const RandomStream& rng, unsigned threads) {
  const McEstimate e = monte_carlo_estimate(make_trial, trials, rng, threads);
  AttackResult r;
  r.mode = AttackResult::Mode::kMonteCarlo;
  r.success_prob = e.estimate;
  r.trials = e.trials;
  r.ci_halfwidth = e.halfwidth;
  r.ci_low = e.ci_low;
  r.ci_high = e.ci_high;
  return r;
}

namespace {

// Draws one honest block and encodes it.
struct BlockwiseHonest {
  const BlockwiseParams& params;
  std::shared_ptr<const IidExtension> source;
  Sequence secret;

  BlockSharePair draw(RandomStream& r) {
    source->sample(r, secret);
    return encode(params, secret, draw_randomness(params, r));
  }
};

struct SymbolwiseHonest {
  const SymbolwiseCodec& codec;
  std::shared_ptr<const IidExtension> source;
  Sequence secret;
  Sequence randomness;

  std::pair<Sequence, Sequence> draw(RandomStream& r) {
    source->sample(r, secret);
    for (auto& u : randomness) u = static_cast<Symbol>(r.next_below(codec.base().randomness_size));
    return codec.encode_n(secret, randomness);
  }
};

BlockwiseHonest blockwise_honest(const BlockwiseParams& p,
                                 const std::shared_ptr<const IidExtension>& src) {
  return {p, src, Sequence(p.length())};
}

SymbolwiseHonest symbolwise_honest(const SymbolwiseCodec& c,
                                   const std::shared_ptr<const IidExtension>& src) {
  return {c, src, Sequence(c.length()), Sequence(c.length())};
}

}  // namespace

TrialFactory blockwise_attack_trials(const BlockwiseParams& params, Direction d, const Pmf& forgery) {
  if (forgery.support_size() != params.share_alphabet()) {
    throw std::invalid_argument("forgery law must cover the share alphabet");
  }
  auto src = std::make_shared<const IidExtension>(params.source(), params.length());
  auto sampler = std::make_shared<const PmfSampler>(forgery);
  return [&params, d, src, sampler] {
    return std::function<bool(RandomStream&)>(
        [&params, d, sampler, honest = blockwise_honest(params, src)](RandomStream& r) mutable {
          const BlockShare f = params.share_from_code((*sampler)(r));
          const auto [x, y] = honest.draw(r);
          return d == Direction::kForgeX ? accepts(params, f, y) : accepts(params, x, f);
        });
  };
}

TrialFactory symbolwise_attack_trials(const SymbolwiseCodec& codec, Direction d, const Pmf& forgery) {
  const std::size_t forged_size = d == Direction::kForgeX ? codec.x_size() : codec.y_size();
  if (forgery.support_size() != forged_size) {
    throw std::invalid_argument("forgery law must cover the share alphabet");
  }
  auto src = std::make_shared<const IidExtension>(codec.source(), codec.length());
  auto sampler = std::make_shared<const PmfSampler>(forgery);
  return [&codec, d, src, sampler] {
    return std::function<bool(RandomStream&)>(
        [&codec, d, sampler, honest = symbolwise_honest(codec, src),
         forged = Sequence(codec.length())](RandomStream& r) mutable {
          for (auto& f : forged) f = static_cast<Symbol>((*sampler)(r));
          const auto [x, y] = honest.draw(r);
          return d == Direction::kForgeX ? codec.accepts_n(forged, y) : codec.accepts_n(x, forged);
        });
  };
}

TrialFactory blockwise_product_trials(const BlockwiseParams& params) {
  auto src = std::make_shared<const IidExtension>(params.source(), params.length());
  return [&params, src] {
    return std::function<bool(RandomStream&)>(
        [&params, honest = blockwise_honest(params, src)](RandomStream& r) mutable {
          const BlockShare x = honest.draw(r).first;
          const BlockShare y = honest.draw(r).second;
          return accepts(params, x, y);
        });
  };
}

TrialFactory symbolwise_product_trials(const SymbolwiseCodec& codec) {
  auto src = std::make_shared<const IidExtension>(codec.source(), codec.length());
  return [&codec, src] {
    return std::function<bool(RandomStream&)>(
        [&codec, honest = symbolwise_honest(codec, src)](RandomStream& r) mutable {
          const Sequence x = honest.draw(r).first;
          const Sequence y = honest.draw(r).second;
          return codec.accepts_n(x, y);
        });
  };
}

TrialFactory blockwise_rejection_trials(const BlockwiseParams& params) {
  auto src = std::make_shared<const IidExtension>(params.source(), params.length());
  return [&params, src] {
    return std::function<bool(RandomStream&)>(
        [&params, honest = blockwise_honest(params, src)](RandomStream& r) mutable {
          const auto [x, y] = honest.draw(r);
          return !accepts(params, x, y);
        });
  };
}

TrialFactory symbolwise_rejection_trials(const SymbolwiseCodec& codec) {
  auto src = std::make_shared<const IidExtension>(codec.source(), codec.length());
  return [&codec, src] {
    return std::function<bool(RandomStream&)>(
        [&codec, honest = symbolwise_honest(codec, src)](RandomStream& r) mutable {
          const auto [x, y] = honest.draw(r);
          return !codec.accepts_n(x, y);
        });
  };
}

// ---- exponents ----

ExponentFit exponent_fit(std::span<const std::pair<std::size_t, double>> series) {
  ExponentFit fit;
  std::vector<std::pair<double, double>> xy;
  for (const auto& [n, p] : series) {
    if (n == 0) throw std::invalid_argument("exponent_fit: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("exponent_fit: probability outside [0, 1]");
    if (p == 0.0) {
      fit.notes.push_back("n=" + std::to_string(n) + " dropped: zero probability");
      continue;
    }
    const double y = -std::log2(p);
    xy.emplace_back(static_cast<double>(n), y);
    fit.points.emplace_back(n, y / static_cast<double>(n));
  }
  if (xy.size() < 3) throw std::invalid_argument("exponent_fit: need at least 3 positive points");

  double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += x * x;
    sxy += x * y;
    sx += x;
    sy += y;
  }
  const double k = static_cast<double>(xy.size());
  fit.slope = sxy / sxx;
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) {
    fit.notes.push_back("all points share one n; intercept fit undefined");
    fit.ols_slope = std::numeric_limits<double>::quiet_NaN();
    fit.ols_intercept = std::numeric_limits<double>::quiet_NaN();
  } else {
    fit.ols_slope = (k * sxy - sx * sy) / denom;
    fit.ols_intercept = (sy - fit.ols_slope * sx) / k;
  }
  return fit;
}

// ---- hypothesis-testing bounds ----

TestQuantities test_quantities(const JointPmf& joint, const PairPredicate& region,
                               std::uint64_t cap) {
  if (joint.rank() != 2) throw std::invalid_argument("test_quantities: joint must have two axes");
  if (joint.state_count() > cap) throw CapExceeded("test_quantities: dense evaluation exceeds cap");
  const Pmf px = joint.marginal_pmf(0);
  const Pmf py = joint.marginal_pmf(1);
  TestQuantities tq;
  std::size_t t[2];
  for (const auto& e : joint.entries()) {
    joint.unravel(e.index, t);
    if (!region(t[0], t[1])) tq.alpha += e.prob;
  }
  for (std::size_t x = 0; x < px.support_size(); ++x) {
    if (px[x] == 0.0) continue;
    for (std::size_t y = 0; y < py.support_size(); ++y) {
      if (py[y] > 0.0 && region(x, y)) tq.beta += px[x] * py[y];
    }
  }
  tq.alpha = std::clamp(tq.alpha, 0.0, 1.0);
  tq.beta = std::clamp(tq.beta, 0.0, 1.0);
  return tq;
}

BoundCheck logsum_bound_check(double i_xy, const TestQuantities& tq) {
  BoundCheck b;
  b.lhs = i_xy;
  const double alpha = std::clamp(tq.alpha, 0.0, 1.0);
  if (tq.beta <= 0.0) {
    b.rhs = alpha < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    b.vacuous = true;
    b.holds = true;
    return b;
  }
  b.rhs = -binary_entropy(alpha) - (1.0 - alpha) * std::log2(tq.beta);
  b.holds = b.lhs >= b.rhs - kBoundTolerance;
  return b;
}

BoundCheck fano_check(double p_e, double h_s_given_xy, std::size_t n, std::size_t alphabet_size) {
  if (n == 0 || alphabet_size == 0) throw std::invalid_argument("fano_check: n and |S| must be positive");
  const double pe = std::clamp(p_e, 0.0, 1.0);
  const double nn = static_cast<double>(n);
  BoundCheck b;
  b.lhs = h_s_given_xy / nn;
  b.rhs = binary_entropy(pe) / nn + pe * std::log2(static_cast<double>(alphabet_size));
  b.holds = b.lhs <= b.rhs + kBoundTolerance;
  return b;
}

BoundCheck converse_exponent_check(double i_xy, double alpha, double p_x, double p_y,
                                   std::size_t n) {
  if (n == 0) throw std::invalid_argument("converse_exponent_check: n must be positive");
  const double nn = static_cast<double>(n);
  auto exponent = [nn](double p) {
    return p > 0.0 ? -std::log2(p) / nn : std::numeric_limits<double>::infinity();
  };
  BoundCheck b;
  b.lhs = std::max(exponent(p_x), exponent(p_y));
  const double a = std::clamp(alpha, 0.0, 1.0);
  if (a >= 1.0) {
    b.rhs = std::numeric_limits<double>::infinity();
    b.vacuous = true;
    b.holds = true;
    return b;
  }
  b.rhs = (i_xy / nn) / (1.0 - a) + binary_entropy(a) / (nn * (1.0 - a));
  b.holds = b.lhs <= b.rhs + kBoundTolerance;
  return b;
}

}  // namespace tss
