#include "tss/probcore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "tss/errors.hpp"

namespace tss {

namespace {

void check_probabilities(std::span<const double> probs, const char* who) {
  // Extended accumulator: long uniform vectors would otherwise drift past the
  // tolerance on rounding alone.
  long double sum = 0.0L;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument(std::string(who) + ": probabilities must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0L) > kNormalizationTolerance) {
    throw std::invalid_argument(std::string(who) + ": probabilities sum to " +
                                std::to_string(static_cast<double>(sum)) + ", not 1");
  }
}

std::uint64_t checked_product(std::span<const std::size_t> dims) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("JointPmf: axis size must be positive");
    if (total > kLimit / d) throw CapExceeded("JointPmf: state space does not fit in 63 bits");
    total *= d;
  }
  return total;
}

// Mixed-radix index over a subset of axes of an unravelled tuple.
std::uint64_t group_index(std::span<const std::size_t> tuple, std::span<const std::size_t> axes,
                          const std::vector<std::size_t>& dims) {
  std::uint64_t idx = 0;
  for (std::size_t a : axes) idx = idx * dims[a] + tuple[a];
  return idx;
}

void check_axes(std::span<const std::size_t> axes, std::size_t rank) {
  std::vector<bool> seen(rank, false);
  for (std::size_t a : axes) {
    if (a >= rank) throw std::out_of_range("axis index out of range");
    if (seen[a]) throw std::invalid_argument("axis listed twice");
    seen[a] = true;
  }
}

// Sorted (key, prob) accumulation with duplicate merging.
std::vector<JointPmf::Entry> merge_sorted(std::vector<JointPmf::Entry> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  std::vector<JointPmf::Entry> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!out.empty() && out.back().index == e.index) {
      out.back().prob += e.prob;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const auto& e) { return e.prob == 0.0; });
  return out;
}

double lookup(const std::vector<JointPmf::Entry>& sorted, std::uint64_t key) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key,
                             [](const auto& e, std::uint64_t k) { return e.index < k; });
  return (it != sorted.end() && it->index == key) ? it->prob : 0.0;
}

std::vector<JointPmf::Entry> group_marginal(const JointPmf& j, std::span<const std::size_t> axes) {
  std::vector<std::size_t> tuple(j.rank());
  std::vector<JointPmf::Entry> v;
  v.reserve(j.entries().size());
  for (const auto& e : j.entries()) {
    j.unravel(e.index, tuple);
    v.push_back({group_index(tuple, axes, j.dims()), e.prob});
  }
  return merge_sorted(std::move(v));
}

}  // namespace

// ---- Pmf ----

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Pmf: empty support");
  check_probabilities(probs_, "Pmf");
}

Pmf Pmf::uniform(std::size_t k) {
  if (k == 0) throw std::invalid_argument("Pmf::uniform: k must be positive");
  return Pmf(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Pmf Pmf::point_mass(std::size_t k, std::size_t at) {
  if (at >= k) throw std::invalid_argument("Pmf::point_mass: index out of range");
  std::vector<double> p(k, 0.0);
  p[at] = 1.0;
  return Pmf(std::move(p));
}

Pmf Pmf::parse(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw std::invalid_argument("Pmf::parse: empty input");
  std::vector<double> probs;
  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("Pmf::parse: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("Pmf::parse: expected an array");
    for (const auto& v : j) {
      if (!v.is_number()) throw std::invalid_argument("Pmf::parse: non-numeric entry");
      probs.push_back(v.get<double>());
    }
  } else {
    std::size_t pos = first;
    while (pos < text.size()) {
      const auto start = text.find_first_not_of(" \t\r\n,;", pos);
      if (start == std::string_view::npos) break;
      auto end = text.find_first_of(" \t\r\n,;", start);
      if (end == std::string_view::npos) end = text.size();
      double v = 0.0;
      const auto* b = text.data() + start;
      const auto* e = text.data() + end;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e) {
        throw std::invalid_argument("Pmf::parse: bad number '" +
                                    std::string(text.substr(start, end - start)) + "'");
      }
      probs.push_back(v);
      pos = end;
    }
  }
  return Pmf(std::move(probs));
}

std::size_t Pmf::nonzero_count() const {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

// ---- JointPmf ----

JointPmf::JointPmf(std::vector<std::size_t> dims, std::vector<Entry> entries)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("JointPmf: need at least one axis");
  state_count_ = checked_product(dims_);
  for (const auto& e : entries) {
    if (e.index >= state_count_) throw std::out_of_range("JointPmf: entry index out of range");
    if (!std::isfinite(e.prob) || e.prob < 0.0) {
      throw std::invalid_argument("JointPmf: probabilities must be finite and >= 0");
    }
  }
  entries_ = merge_sorted(std::move(entries));
  const double t = total();
  if (std::abs(t - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("JointPmf: total " + std::to_string(t) + " is not 1");
  }
}

JointPmf JointPmf::from_pmf(const Pmf& p) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < p.support_size(); ++i) e.push_back({i, p[i]});
  return JointPmf({p.support_size()}, std::move(e));
}

JointPmf JointPmf::product(std::span<const Pmf> factors) {
  if (factors.empty()) throw std::invalid_argument("JointPmf::product: no factors");
  std::vector<std::size_t> dims;
  for (const auto& f : factors) dims.push_back(f.support_size());
  const std::uint64_t n = checked_product(dims);
  if (n > kDefaultStateCap) throw CapExceeded("JointPmf::product: too many states");
  std::vector<Entry> entries;
  std::vector<std::size_t> tuple(dims.size(), 0);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    double p = 1.0;
    for (std::size_t a = 0; a < dims.size(); ++a) p *= factors[a][tuple[a]];
    if (p > 0.0) entries.push_back({idx, p});
    for (std::size_t a = dims.size(); a-- > 0;) {
      if (++tuple[a] < dims[a]) break;
      tuple[a] = 0;
    }
  }
  return JointPmf(std::move(dims), std::move(entries));
}

JointPmf JointPmf::from_dense(std::vector<std::size_t> dims, std::span<const double> probs) {
  if (checked_product(dims) != probs.size()) {
    throw std::invalid_argument("JointPmf::from_dense: size does not match dims");
  }
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] != 0.0) entries.push_back({i, probs[i]});
  }
  return JointPmf(std::move(dims), std::move(entries));
}

std::uint64_t JointPmf::linear_index(std::span<const std::size_t> tuple) const {
  if (tuple.size() != dims_.size()) throw std::invalid_argument("JointPmf: tuple rank mismatch");
  std::uint64_t idx = 0;
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    if (tuple[a] >= dims_[a]) throw std::out_of_range("JointPmf: coordinate out of range");
    idx = idx * dims_[a] + tuple[a];
  }
  return idx;
}

void JointPmf::unravel(std::uint64_t index, std::span<std::size_t> tuple) const {
  for (std::size_t a = dims_.size(); a-- > 0;) {
    tuple[a] = static_cast<std::size_t>(index % dims_[a]);
    index /= dims_[a];
  }
}

double JointPmf::prob(std::span<const std::size_t> tuple) const {
  return lookup(entries_, linear_index(tuple));
}

double JointPmf::total() const {
  long double t = 0.0L;
  for (const auto& e : entries_) t += e.prob;
  return static_cast<double>(t);
}

JointPmf JointPmf::marginal(std::span<const std::size_t> axes) const {
  check_axes(axes, rank());
  if (axes.empty()) throw std::invalid_argument("JointPmf::marginal: no axes");
  std::vector<std::size_t> dims;
  for (std::size_t a : axes) dims.push_back(dims_[a]);
  return JointPmf(std::move(dims), group_marginal(*this, axes));
}

Pmf JointPmf::marginal_pmf(std::size_t axis) const {
  const std::size_t axes[] = {axis};
  check_axes(axes, rank());
  std::vector<double> p(dims_[axis], 0.0);
  std::vector<std::size_t> tuple(rank());
  for (const auto& e : entries_) {
    unravel(e.index, tuple);
    p[tuple[axis]] += e.prob;
  }
  return Pmf(std::move(p));
}

// ---- information measures ----

namespace detail {

double clamp_information(double value) {
  if (value < 0.0 && value > -kInformationClampTolerance) return 0.0;
  return value;
}

}  // namespace detail

double entropy(const Pmf& p) {
  double h = 0.0;
  for (double q : p.probs()) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

double entropy(const JointPmf& j) {
  double h = 0.0;
  for (const auto& e : j.entries()) h -= e.prob * std::log2(e.prob);
  return h;
}

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binary_entropy: q outside [0, 1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double mutual_information(const JointPmf& j) {
  if (j.rank() != 2) throw std::invalid_argument("mutual_information: joint must have two axes");
  const std::size_t a[] = {0};
  const std::size_t b[] = {1};
  return mutual_information(j, a, b);
}

double mutual_information(const JointPmf& j, std::span<const std::size_t> axes_a,
                          std::span<const std::size_t> axes_b) {
  std::vector<std::size_t> both(axes_a.begin(), axes_a.end());
  both.insert(both.end(), axes_b.begin(), axes_b.end());
  check_axes(both, j.rank());
  const auto pa = group_marginal(j, axes_a);
  const auto pb = group_marginal(j, axes_b);
  const auto pab = group_marginal(j, both);

  std::uint64_t b_states = 1;
  for (std::size_t ax : axes_b) b_states *= j.dims()[ax];

  double mi = 0.0;
  for (const auto& e : pab) {
    const double p = lookup(pa, e.index / b_states);
    const double q = lookup(pb, e.index % b_states);
    mi += e.prob * std::log2(e.prob / (p * q));
  }
  return detail::clamp_information(mi);
}

double conditional_entropy(const JointPmf& j, std::size_t target_axis) {
  const std::size_t target[] = {target_axis};
  check_axes(target, j.rank());
  std::vector<std::size_t> given;
  for (std::size_t a = 0; a < j.rank(); ++a) {
    if (a != target_axis) given.push_back(a);
  }
  return conditional_entropy(j, target, given);
}

double conditional_entropy(const JointPmf& j, std::span<const std::size_t> target_axes,
                           std::span<const std::size_t> given_axes) {
  if (given_axes.empty()) return entropy(j.marginal(target_axes));
  std::vector<std::size_t> both(given_axes.begin(), given_axes.end());
  both.insert(both.end(), target_axes.begin(), target_axes.end());
  check_axes(both, j.rank());
  const auto pg = group_marginal(j, given_axes);
  const auto pgt = group_marginal(j, both);

  std::uint64_t t_states = 1;
  for (std::size_t ax : target_axes) t_states *= j.dims()[ax];

  // Summing p(g,t) log(p(g)/p(g,t)) term by term keeps deterministic targets at
  // exactly zero: each term is then log2(1).
  double h = 0.0;
  for (const auto& e : pgt) {
    h += e.prob * std::log2(lookup(pg, e.index / t_states) / e.prob);
  }
  return detail::clamp_information(h);
}

// ---- induction ----

JointPmf induce_joint(const JointPmf& src, const OutputMap& map, std::vector<std::size_t> out_dims,
                      std::uint64_t cap) {
  if (src.entries().size() > cap) {
    throw CapExceeded("induce_joint: source support exceeds the state cap");
  }
  std::vector<std::size_t> dims = src.dims();
  dims.insert(dims.end(), out_dims.begin(), out_dims.end());
  const std::uint64_t out_states = checked_product(out_dims);
  checked_product(dims);

  std::vector<std::size_t> in(src.rank());
  std::vector<std::size_t> out(out_dims.size());
  std::vector<JointPmf::Entry> entries;
  entries.reserve(src.entries().size());
  for (const auto& e : src.entries()) {
    src.unravel(e.index, in);
    if (!map(in, out)) throw std::invalid_argument("induce_joint: map undefined on a support point");
    std::uint64_t o = 0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (out[k] >= out_dims[k]) throw std::out_of_range("induce_joint: output out of range");
      o = o * out_dims[k] + out[k];
    }
    entries.push_back({e.index * out_states + o, e.prob});
  }
  return JointPmf(std::move(dims), std::move(entries));
}

JointPmf pushforward(const JointPmf& src, const OutputMap& map, std::vector<std::size_t> out_dims,
                     std::uint64_t cap) {
  const std::size_t in_rank = src.rank();
  const JointPmf joint = induce_joint(src, map, std::move(out_dims), cap);
  std::vector<std::size_t> axes(joint.rank() - in_rank);
  std::iota(axes.begin(), axes.end(), in_rank);
  return joint.marginal(axes);
}

// ---- sampling ----

PmfSampler::PmfSampler(const Pmf& p) {
  cdf_.resize(p.support_size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.support_size(); ++i) {
    acc += p[i];
    cdf_[i] = acc;
    if (p[i] > 0.0) last_positive_ = i;
  }
}

std::size_t PmfSampler::operator()(RandomStream& rng) const {
  const double u = rng.next_unit();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  // The accumulated total can fall a hair short of 1.
  if (it == cdf_.end()) return last_positive_;
  return static_cast<std::size_t>(it - cdf_.begin());
}

std::size_t sample(const Pmf& p, RandomStream& rng) { return PmfSampler(p)(rng); }

// ---- i.i.d. extension ----

IidExtension::IidExtension(Pmf base, std::size_t n)
    : base_(std::move(base)), n_(n), sampler_(base_) {
  if (n_ == 0) throw std::invalid_argument("IidExtension: n must be at least 1");
}

double IidExtension::prob(std::span<const Symbol> seq) const {
  if (seq.size() != n_) throw std::invalid_argument("IidExtension::prob: wrong length");
  double p = 1.0;
  for (Symbol s : seq) {
    if (s >= base_.support_size()) throw std::out_of_range("IidExtension::prob: bad symbol");
    p *= base_[s];
  }
  return p;
}

std::uint64_t IidExtension::state_count() const {
  return checked_power(base_.support_size(), n_);
}

Pmf IidExtension::materialize(std::uint64_t cap) const {
  const std::uint64_t states = state_count();
  if (states > cap) {
    throw CapExceeded("IidExtension::materialize: " + std::to_string(states) +
                      " states exceed the cap of " + std::to_string(cap));
  }
  // Row-major outer product, one factor at a time.
  std::vector<double> dense{1.0};
  const std::size_t k = base_.support_size();
  for (std::size_t step = 0; step < n_; ++step) {
    std::vector<double> next(dense.size() * k);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      for (std::size_t s = 0; s < k; ++s) next[i * k + s] = dense[i] * base_[s];
    }
    dense.swap(next);
  }
  // Rounding in long products can leave the total a few ulps from 1.
  long double total = 0.0L;
  for (double p : dense) total += p;
  for (double& p : dense) p = static_cast<double>(p / total);
  return Pmf(std::move(dense));
}

void IidExtension::sample(RandomStream& rng, std::span<Symbol> out) const {
  if (out.size() != n_) throw std::invalid_argument("IidExtension::sample: wrong length");
  for (auto& s : out) s = static_cast<Symbol>(sampler_(rng));
}

IidExtension iid_extension(const Pmf& p, std::size_t n) { return IidExtension(p, n); }

}  // namespace tss
