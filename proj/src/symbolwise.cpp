#include "tss/symbolwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tss/errors.hpp"

namespace tss {

std::pair<Symbol, Symbol> fstar(std::size_t modulus, std::size_t secret_size, Symbol s, Symbol u) {
  if (s >= secret_size || s >= modulus || u >= modulus) {
    throw std::out_of_range("fstar: input outside its alphabet");
  }
  const auto m = static_cast<Symbol>(modulus);
  return {static_cast<Symbol>((s + m - u) % m), u};
}

std::optional<Symbol> gstar(std::size_t modulus, std::size_t secret_size, Symbol x, Symbol y) {
  if (x >= modulus || y >= modulus) throw std::out_of_range("gstar: share outside its alphabet");
  const auto v = static_cast<Symbol>((static_cast<std::size_t>(x) + y) % modulus);
  if (v >= secret_size) return std::nullopt;
  return v;
}

BaseScheme BaseScheme::fstar(std::size_t modulus, std::size_t secret_size) {
  if (secret_size == 0 || modulus < secret_size) {
    throw std::invalid_argument("fstar: need M >= M_S >= 1");
  }
  BaseScheme b;
  b.name = "fstar";
  b.secret_size = secret_size;
  b.randomness_size = modulus;
  b.x_size = modulus;
  b.y_size = modulus;
  b.encode = [modulus, secret_size](Symbol s, Symbol u) {
    return tss::fstar(modulus, secret_size, s, u);
  };
  b.decode = [modulus, secret_size](Symbol x, Symbol y) {
    return tss::gstar(modulus, secret_size, x, y);
  };
  return b;
}

BaseScheme identity_leak_scheme(std::size_t modulus, std::size_t secret_size) {
  if (modulus < secret_size) throw std::invalid_argument("identity_leak_scheme: need M >= M_S");
  BaseScheme b;
  b.name = "identity-leak";
  b.secret_size = secret_size;
  b.randomness_size = modulus;
  b.x_size = modulus;
  b.y_size = modulus;
  b.encode = [](Symbol s, Symbol u) { return std::pair<Symbol, Symbol>{s, u}; };
  b.decode = [secret_size](Symbol x, Symbol) -> std::optional<Symbol> {
    if (x >= secret_size) return std::nullopt;
    return x;
  };
  return b;
}

BaseScheme non_decodable_scheme(std::size_t modulus, std::size_t secret_size) {
  BaseScheme b;
  b.name = "non-decodable";
  b.secret_size = secret_size;
  b.randomness_size = modulus;
  b.x_size = modulus;
  b.y_size = modulus;
  b.encode = [](Symbol, Symbol u) { return std::pair<Symbol, Symbol>{u, u}; };
  b.decode = [](Symbol, Symbol) -> std::optional<Symbol> { return Symbol{0}; };
  return b;
}

BaseScheme undersized_scheme(std::size_t modulus, std::size_t secret_size) {
  if (modulus == 0) throw std::invalid_argument("undersized_scheme: M must be positive");
  BaseScheme b;
  b.name = "undersized";
  b.secret_size = secret_size;
  b.randomness_size = modulus;
  b.x_size = modulus;
  b.y_size = modulus;
  const auto m = static_cast<Symbol>(modulus);
  b.encode = [m](Symbol s, Symbol u) {
    return std::pair<Symbol, Symbol>{static_cast<Symbol>((s % m + m - u) % m), u};
  };
  b.decode = [m](Symbol x, Symbol y) -> std::optional<Symbol> {
    return static_cast<Symbol>((x + y) % m);
  };
  return b;
}

JointPmf base_joint(const BaseScheme& scheme, const Pmf& source) {
  if (source.support_size() != scheme.secret_size) {
    throw std::invalid_argument("base_joint: source alphabet does not match the scheme");
  }
  if (scheme.randomness_size == 0 || scheme.x_size == 0 || scheme.y_size == 0) {
    throw std::invalid_argument("base_joint: empty alphabet");
  }
  const JointPmf su = JointPmf::product(std::vector<Pmf>{source, Pmf::uniform(scheme.randomness_size)});
  return induce_joint(
      su,
      [&](std::span<const std::size_t> in, std::span<std::size_t> out) {
        const auto [x, y] =
            scheme.encode(static_cast<Symbol>(in[0]), static_cast<Symbol>(in[1]));
        out[0] = x;
        out[1] = y;
        return true;
      },
      {scheme.x_size, scheme.y_size});
}

BaseValidation validate_base(const BaseScheme& scheme, const Pmf& source) {
  const JointPmf j = base_joint(scheme, source);
  const std::size_t s[] = {0};
  const std::size_t x[] = {2};
  const std::size_t y[] = {3};
  const std::size_t xy[] = {2, 3};

  BaseValidation v;
  v.h_s = entropy(source);
  v.h_s_given_x = conditional_entropy(j, s, x);
  v.h_s_given_y = conditional_entropy(j, s, y);
  v.h_s_given_xy = conditional_entropy(j, s, xy);
  v.ell = mutual_information(j, x, y);
  v.sizes_ok = std::min({scheme.x_size, scheme.y_size, scheme.randomness_size}) >= scheme.secret_size;

  v.decoder_consistent = true;
  std::vector<std::size_t> t(4);
  for (const auto& e : j.entries()) {
    j.unravel(e.index, t);
    const auto decoded = scheme.decode(static_cast<Symbol>(t[2]), static_cast<Symbol>(t[3]));
    if (!decoded || *decoded != t[0]) {
      v.decoder_consistent = false;
      break;
    }
  }

  if (std::abs(v.h_s_given_x - v.h_s) > kBaseValidationTolerance) v.failures.push_back("security_x");
  if (std::abs(v.h_s_given_y - v.h_s) > kBaseValidationTolerance) v.failures.push_back("security_y");
  if (v.h_s_given_xy > kBaseValidationTolerance || !v.decoder_consistent) {
    v.failures.push_back("decodability");
  }
  if (!v.sizes_ok) v.failures.push_back("alphabet_size");
  v.passed = v.failures.empty();
  return v;
}

double correlation_level_fstar(std::size_t modulus, const Pmf& source) {
  if (modulus < source.nonzero_count()) {
    throw std::invalid_argument("correlation_level_fstar: M smaller than the source support");
  }
  return std::log2(static_cast<double>(modulus)) - entropy(source);
}

// ---- codec ----

SymbolwiseCodec::SymbolwiseCodec(BaseScheme base, Pmf source, std::size_t n, double gamma)
    : base_(std::move(base)),
      source_(std::move(source)),
      n_(n),
      gamma_(gamma),
      validation_(validate_base(base_, source_)),
      p_x_(Pmf::uniform(1)),
      p_y_(Pmf::uniform(1)) {
  if (n_ == 0) throw std::invalid_argument("SymbolwiseCodec: n must be at least 1");
  if (!(gamma_ >= 0.0) || !std::isfinite(gamma_)) {
    throw std::invalid_argument("SymbolwiseCodec: gamma must be finite and >= 0");
  }
  if (!validation_.passed) {
    std::string what = "SymbolwiseCodec: base scheme '" + base_.name + "' fails:";
    for (const auto& f : validation_.failures) what += " " + f;
    throw std::invalid_argument(what);
  }

  const JointPmf j = base_joint(base_, source_);
  const std::size_t xy[] = {2, 3};
  const JointPmf joint_xy = j.marginal(xy);
  p_xy_.assign(base_.x_size * base_.y_size, 0.0);
  for (const auto& e : joint_xy.entries()) p_xy_[e.index] = e.prob;
  p_x_ = joint_xy.marginal_pmf(0);
  p_y_ = joint_xy.marginal_pmf(1);

  std::vector<double> raw(p_xy_.size(), -std::numeric_limits<double>::infinity());
  std::vector<double> finite;
  for (std::size_t a = 0; a < base_.x_size; ++a) {
    for (std::size_t b = 0; b < base_.y_size; ++b) {
      const double p = p_xy_[a * base_.y_size + b];
      if (p == 0.0) continue;
      raw[a * base_.y_size + b] = std::log2(p / (p_x_[a] * p_y_[b]));
      finite.push_back(raw[a * base_.y_size + b]);
    }
  }
  std::sort(finite.begin(), finite.end());
  for (double v : finite) {
    if (class_values_.empty() ||
        v - class_values_.back() > 1e-12 * std::max(1.0, std::abs(v))) {
      class_values_.push_back(v);
    }
  }
  cell_class_.assign(p_xy_.size(), kNullClass);
  for (std::size_t c = 0; c < raw.size(); ++c) {
    if (std::isinf(raw[c])) continue;
    // Last class whose representative does not exceed the value.
    auto it = std::upper_bound(class_values_.begin(), class_values_.end(),
                               raw[c] + 1e-12 * std::max(1.0, std::abs(raw[c])));
    cell_class_[c] = static_cast<int>(it - class_values_.begin()) - 1;
  }
}

void SymbolwiseCodec::check_pair(std::span<const Symbol> x, std::span<const Symbol> y) const {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("share length is not n");
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i] >= base_.x_size || y[i] >= base_.y_size) {
      throw std::out_of_range("share symbol outside its alphabet");
    }
  }
}

std::pair<Sequence, Sequence> SymbolwiseCodec::encode_n(std::span<const Symbol> s,
                                                        std::span<const Symbol> u) const {
  if (s.size() != n_ || u.size() != n_) throw std::invalid_argument("encode_n: length is not n");
  Sequence x(n_), y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (s[i] >= base_.secret_size || u[i] >= base_.randomness_size) {
      throw std::out_of_range("encode_n: symbol outside its alphabet");
    }
    std::tie(x[i], y[i]) = base_.encode(s[i], u[i]);
  }
  return {std::move(x), std::move(y)};
}

double SymbolwiseCodec::score_from_counts(std::span<const std::size_t> counts) const {
  double total = 0.0;
  for (std::size_t k = 0; k < class_values_.size(); ++k) {
    total += static_cast<double>(counts[k]) * class_values_[k];
  }
  return total / static_cast<double>(n_);
}

bool SymbolwiseCodec::accepts_counts(std::span<const std::size_t> counts) const {
  return score_from_counts(counts) > threshold();
}

double SymbolwiseCodec::llr_score(std::span<const Symbol> x, std::span<const Symbol> y) const {
  check_pair(x, y);
  std::vector<std::size_t> counts(class_values_.size(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const int k = cell_class(x[i], y[i]);
    if (k == kNullClass) return -std::numeric_limits<double>::infinity();
    ++counts[static_cast<std::size_t>(k)];
  }
  return score_from_counts(counts);
}

bool SymbolwiseCodec::accepts_n(std::span<const Symbol> x, std::span<const Symbol> y) const {
  return llr_score(x, y) > threshold();
}

DecodeOutcome SymbolwiseCodec::decode_n(std::span<const Symbol> x,
                                        std::span<const Symbol> y) const {
  if (!accepts_n(x, y)) return DecodeOutcome::reject();
  Sequence s(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto v = base_.decode(x[i], y[i]);
    if (!v) throw std::logic_error("decode_n: base decoder returned the out-of-range symbol "
                                   "on an accepted pair");
    s[i] = *v;
  }
  return DecodeOutcome::secret(std::move(s));
}

// ---- class-count enumeration ----

namespace {

long double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
         std::lgamma(static_cast<long double>(n - k) + 1);
}

void compositions(std::size_t part, std::size_t remaining, std::vector<std::size_t>& counts,
                  long double log_mult,
                  const std::function<void(std::span<const std::size_t>, long double)>& visit) {
  if (part + 1 == counts.size()) {
    counts[part] = remaining;
    visit(counts, log_mult);
    return;
  }
  for (std::size_t c = 0; c <= remaining; ++c) {
    counts[part] = c;
    compositions(part + 1, remaining - c, counts, log_mult + log_binomial(remaining, c), visit);
  }
  counts[part] = 0;
}

}  // namespace

void for_each_composition(std::size_t n, std::size_t k, std::uint64_t cap,
                          const std::function<void(std::span<const std::size_t>, long double)>& visit) {
  if (k == 0) throw std::invalid_argument("for_each_composition: need at least one part");
  const long double count = std::exp(log_binomial(n + k - 1, k - 1));
  if (count > static_cast<long double>(cap) * 1.0001L) {
    throw CapExceeded("for_each_composition: " + std::to_string(static_cast<double>(count)) +
                      " compositions exceed the cap");
  }
  std::vector<std::size_t> counts(k, 0);
  compositions(0, n, counts, 0.0L, visit);
}

double class_composition_mass(const SymbolwiseCodec& codec, std::span<const double> class_probs,
                              bool accepted, std::uint64_t cap) {
  const std::size_t k = codec.class_count();
  if (class_probs.size() != k) throw std::invalid_argument("class_composition_mass: size mismatch");
  if (k == 0) return accepted ? 0.0 : 1.0;
  std::vector<long double> logp(k);
  for (std::size_t i = 0; i < k; ++i) {
    logp[i] = class_probs[i] > 0.0 ? std::log(static_cast<long double>(class_probs[i]))
                                   : -std::numeric_limits<long double>::infinity();
  }
  long double mass = 0.0L;
  for_each_composition(codec.length(), k, cap,
                       [&](std::span<const std::size_t> counts, long double log_mult) {
                         if (codec.accepts_counts(counts) != accepted) return;
                         long double lp = log_mult;
                         for (std::size_t i = 0; i < k; ++i) {
                           if (counts[i] == 0) continue;
                           if (class_probs[i] <= 0.0) return;
                           lp += static_cast<long double>(counts[i]) * logp[i];
                         }
                         mass += std::exp(lp);
                       });
  return static_cast<double>(mass);
}

SymbolwiseQuantities exact_symbolwise_quantities(const SymbolwiseCodec& codec, std::uint64_t cap) {
  const std::size_t k = codec.class_count();
  std::vector<double> legit(k, 0.0);
  std::vector<double> product(k, 0.0);
  for (Symbol x = 0; x < codec.x_size(); ++x) {
    for (Symbol y = 0; y < codec.y_size(); ++y) {
      const int c = codec.cell_class(x, y);
      if (c == SymbolwiseCodec::kNullClass) continue;
      legit[static_cast<std::size_t>(c)] += codec.joint(x, y);
      product[static_cast<std::size_t>(c)] += codec.p_x()[x] * codec.p_y()[y];
    }
  }
  const BaseValidation& v = codec.validation();
  SymbolwiseQuantities q;
  q.alpha = class_composition_mass(codec, legit, false, cap);
  q.p_e = q.alpha;
  q.beta = class_composition_mass(codec, product, true, cap);
  q.i_xy_per_symbol = v.ell;
  q.h_s = v.h_s;
  q.h_s_given_x = v.h_s_given_x;
  q.h_s_given_y = v.h_s_given_y;
  q.h_s_given_xy = v.h_s_given_xy;
  q.i_sx_per_symbol = detail::clamp_information(v.h_s - v.h_s_given_x);
  q.i_sy_per_symbol = detail::clamp_information(v.h_s - v.h_s_given_y);
  q.rate_x = std::log2(static_cast<double>(codec.base().x_size));
  q.rate_y = std::log2(static_cast<double>(codec.base().y_size));
  q.rate_u = std::log2(static_cast<double>(codec.base().randomness_size));
  return q;
}

}  // namespace tss
