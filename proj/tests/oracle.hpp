#pragma once

// Independent reference computations for the tests. Everything here is
// written directly from the definitions, with long double accumulators and
// dense tables, and shares no code with the library beyond plain types.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Real = long double;
using Seq = std::vector<unsigned>;

inline Real entropy(const std::vector<Real>& p) {
  Real h = 0;
  for (Real q : p) {
    if (q > 0) h -= q * std::log2(q);
  }
  return h;
}

inline Real entropy(const std::vector<double>& p) {
  return entropy(std::vector<Real>(p.begin(), p.end()));
}

// All tuples of length n over k symbols in lexicographic order.
inline std::vector<Seq> all_tuples(unsigned k, unsigned n) {
  std::vector<Seq> out;
  Seq s(n, 0);
  while (true) {
    out.push_back(s);
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && ++s[i] == k) s[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline Real tuple_prob(const Seq& s, const std::vector<double>& p) {
  Real r = 1;
  for (unsigned x : s) r *= p[x];
  return r;
}

// Surprisal from the product probability rather than from counts.
inline bool typical(const Seq& s, const std::vector<double>& p, double gamma) {
  const Real pr = tuple_prob(s, p);
  if (pr == 0) return false;
  const Real rate = -std::log2(pr) / s.size();
  return std::fabs(rate - entropy(p)) <= gamma + 1e-12L;
}

// Dense two-axis joint.
struct Joint2 {
  std::size_t na = 0, nb = 0;
  std::vector<Real> p;  // a * nb + b

  Joint2(std::size_t a, std::size_t b) : na(a), nb(b), p(a * b, 0) {}
  Real& at(std::size_t a, std::size_t b) { return p[a * nb + b]; }
  Real at(std::size_t a, std::size_t b) const { return p[a * nb + b]; }

  std::vector<Real> marg_a() const {
    std::vector<Real> m(na, 0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) m[a] += at(a, b);
    return m;
  }
  std::vector<Real> marg_b() const {
    std::vector<Real> m(nb, 0);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) m[b] += at(a, b);
    return m;
  }
  Real mutual_information() const {
    return entropy(marg_a()) + entropy(marg_b()) - entropy(p);
  }
};

// Blockwise scheme rebuilt from its definition for small n: members listed
// by brute force, Z by counting smaller members, shares by formula.
struct BlockOracle {
  unsigned n;
  std::vector<double> source;
  std::vector<Seq> tuples;
  std::vector<bool> member;
  std::vector<std::uint64_t> z;  // per tuple
  std::uint64_t m = 0;
  std::uint64_t l = 0;

  BlockOracle(std::vector<double> src, unsigned n_, double gamma, std::uint64_t l_)
      : n(n_), source(std::move(src)), l(l_) {
    tuples = all_tuples(static_cast<unsigned>(source.size()), n);
    for (const auto& t : tuples) member.push_back(typical(t, source, gamma));
    for (bool b : member) m += b ? 1 : 0;
    std::uint64_t rank = 0;
    for (bool b : member) z.push_back(b ? rank++ : m);
  }

  std::uint64_t share_count() const { return l * (m + 1); }
  std::uint64_t x_code(std::uint64_t zz, std::uint64_t ul, std::uint64_t um) const {
    return ul * (m + 1) + (zz + (m + 1) - um) % (m + 1);
  }
  std::uint64_t y_code(std::uint64_t ul, std::uint64_t um) const { return ul * (m + 1) + um; }
  bool accept(std::uint64_t xc, std::uint64_t yc) const {
    const std::uint64_t mod = m + 1;
    return xc / mod == yc / mod && (xc % mod + yc % mod) % mod != m;
  }
  Real atypical() const {
    Real d = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (!member[i]) d += tuple_prob(tuples[i], source);
    return d;
  }

  // Dense joint of (X, Y).
  Joint2 xy() const {
    const std::uint64_t k = share_count();
    Joint2 j(k, k);
    const Real pu = Real(1) / k;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const Real ps = tuple_prob(tuples[i], source);
      if (ps == 0) continue;
      for (std::uint64_t ul = 0; ul < l; ++ul)
        for (std::uint64_t um = 0; um <= m; ++um) j.at(x_code(z[i], ul, um), y_code(ul, um)) += ps * pu;
    }
    return j;
  }
  // Dense joint of (S^n, X) or (S^n, Y).
  Joint2 s_share(bool want_x) const {
    const std::uint64_t k = share_count();
    Joint2 j(tuples.size(), k);
    const Real pu = Real(1) / k;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const Real ps = tuple_prob(tuples[i], source);
      for (std::uint64_t ul = 0; ul < l; ++ul)
        for (std::uint64_t um = 0; um <= m; ++um)
          j.at(i, want_x ? x_code(z[i], ul, um) : y_code(ul, um)) += ps * pu;
    }
    return j;
  }
};

}  // namespace oracle
