#include "tss/blockwise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tss/errors.hpp"

namespace tss {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

void check_budget(std::uint64_t steps, std::uint64_t budget, const char* what) {
  if (steps > budget) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(steps) +
                      " enumeration steps exceed the budget of " + std::to_string(budget));
  }
}

}  // namespace

std::uint64_t block_count(std::size_t n, double ell) {
  if (!(ell >= 0.0) || !std::isfinite(ell)) throw std::invalid_argument("ell must be >= 0");
  const long double bits = static_cast<long double>(n) * static_cast<long double>(ell);
  if (bits > static_cast<long double>(kMaxBlockExponentBits)) {
    throw std::invalid_argument("n * ell = " + std::to_string(static_cast<double>(bits)) +
                                " exceeds the supported 40 bits");
  }
  // ell is usually a decimal or a ratio like 1/3, so n * ell can miss an
  // integer power by an ulp and floor the wrong way. Snap near-integers first.
  const long double v = std::exp2l(bits);
  const long double r = std::round(v);
  if (std::fabs(v - r) <= 1e-9L * r) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::floor(v));
}

BlockwiseParams::BlockwiseParams(TypicalIndex index, double ell)
    : index_(std::move(index)), ell_(ell), l_(block_count(index_.length(), ell)) {}

BlockwiseParams BlockwiseParams::make(const Pmf& source, std::size_t n, double ell, double gamma,
                                      std::uint64_t cap) {
  return BlockwiseParams(TypicalIndex::build(source, n, gamma, cap), ell);
}

BlockSharePair encode_index(const BlockwiseParams& p, std::uint64_t z, const BlockRandomness& r) {
  if (z > p.m() || r.u_l >= p.l() || r.u_m > p.m()) {
    throw std::out_of_range("encode: index or randomness out of range");
  }
  const std::uint64_t mod = p.modulus();
  return {BlockShare{r.u_l, (z + mod - r.u_m) % mod}, BlockShare{r.u_l, r.u_m}};
}

BlockSharePair encode(const BlockwiseParams& p, std::span<const Symbol> secret,
                      const BlockRandomness& r) {
  return encode_index(p, p.index().xi_plus(secret), r);
}

bool accepts(const BlockwiseParams& p, const BlockShare& x, const BlockShare& y) {
  return x.l_idx == y.l_idx && (x.m_idx + y.m_idx) % p.modulus() != p.m();
}

std::optional<std::uint64_t> decode_index(const BlockwiseParams& p, const BlockShare& x,
                                          const BlockShare& y) {
  if (x.l_idx != y.l_idx) return std::nullopt;
  const std::uint64_t sum = (x.m_idx + y.m_idx) % p.modulus();
  if (sum == p.m()) return std::nullopt;
  return sum;
}

DecodeOutcome decode(const BlockwiseParams& p, const BlockShare& x, const BlockShare& y) {
  if (!p.in_range(x) || !p.in_range(y)) throw std::out_of_range("decode: share out of range");
  const auto m = decode_index(p, x, y);
  if (!m) return DecodeOutcome::reject();
  return DecodeOutcome::secret(p.index().unrank(*m));
}

BlockRandomness draw_randomness(const BlockwiseParams& p, RandomStream& rng) {
  BlockRandomness r;
  r.u_l = rng.next_below(p.l());
  r.u_m = rng.next_below(p.modulus());
  return r;
}

namespace {

// Laws of the two shares from the law of their second components. U^L is
// uniform and copied into both shares, so it only spreads each law evenly
// over the L_n rows.
void spread_rows(const BlockwiseParams& p, const std::vector<double>& m_law,
                 std::vector<double>& out) {
  const std::uint64_t mod = p.modulus();
  const double pl = 1.0 / static_cast<double>(p.l());
  out.assign(p.share_alphabet(), 0.0);
  for (std::uint64_t l = 0; l < p.l(); ++l) {
    for (std::uint64_t m = 0; m < mod; ++m) out[l * mod + m] = pl * m_law[m];
  }
}

std::uint64_t second_component_x(std::uint64_t z, std::uint64_t u_m, std::uint64_t mod) {
  return (z + mod - u_m) % mod;
}

}  // namespace

BlockwiseLaws share_laws(const BlockwiseParams& p, std::uint64_t budget) {
  const std::uint64_t mod = p.modulus();
  check_budget(saturating_mul(mod, mod), budget, "share_laws");
  const Pmf source_block = IidExtension(p.source(), p.length()).materialize();

  BlockwiseLaws laws;
  laws.p_z.assign(mod, 0.0);
  for (std::uint64_t code = 0; code < source_block.support_size(); ++code) {
    laws.p_z[p.index().xi_plus_code(code)] += source_block[code];
  }
  const double pu = 1.0 / static_cast<double>(mod);
  std::vector<double> x_m(mod, 0.0);
  for (std::uint64_t u_m = 0; u_m < mod; ++u_m) {
    for (std::uint64_t z = 0; z < mod; ++z) {
      if (laws.p_z[z] != 0.0) x_m[second_component_x(z, u_m, mod)] += pu * laws.p_z[z];
    }
  }
  spread_rows(p, x_m, laws.p_x);
  spread_rows(p, std::vector<double>(mod, pu), laws.p_y);
  return laws;
}

// U^L is independent of (S^n, U^M) and appears verbatim in both shares, so
// every quantity below is computed on the second components alone:
//   I(S^n; X) = I(S^n; X^M),  I(X; Y) = log2 L_n + I(X^M; U^M),
// and decoding depends on U^L not at all.
BlockwiseQuantities exact_quantities(const BlockwiseParams& p, std::uint64_t budget) {
  const std::uint64_t mod = p.modulus();
  const std::uint64_t u_count = p.share_alphabet();
  const std::uint64_t s_count = IidExtension(p.source(), p.length()).state_count();
  check_budget(saturating_mul(s_count, mod), budget, "exact_quantities");
  check_budget(saturating_mul(mod, mod), budget, "exact_quantities");

  const Pmf source_block = IidExtension(p.source(), p.length()).materialize();
  const Pmf u_m_law = Pmf::uniform(mod);
  const TypicalIndex& index = p.index();
  const double log_l = std::log2(static_cast<double>(p.l()));

  BlockwiseQuantities q;
  q.h_s = entropy(source_block);

  // Decoding failures and rejections, block by block over every U^M value.
  std::vector<std::uint64_t> z_of(s_count);
  for (std::uint64_t code = 0; code < s_count; ++code) {
    const double ps = source_block[code];
    z_of[code] = index.xi_plus_code(code);
    if (ps == 0.0) continue;
    std::uint64_t wrong = 0;
    std::uint64_t rejected = 0;
    for (std::uint64_t u_m = 0; u_m < mod; ++u_m) {
      const auto [x, y] = encode_index(p, z_of[code], BlockRandomness{0, u_m});
      const auto decoded = decode_index(p, x, y);
      if (!decoded) {
        ++rejected;
        ++wrong;
      } else if (index.member_code(*decoded) != code) {
        ++wrong;
      }
    }
    q.p_e += ps * static_cast<double>(wrong) / static_cast<double>(mod);
    q.alpha += ps * static_cast<double>(rejected) / static_cast<double>(mod);
  }

  const auto sx = channel_information(source_block, u_m_law, mod, [&](std::size_t s, std::size_t u) {
    return second_component_x(z_of[s], u, mod);
  });
  const auto sy = channel_information(source_block, u_m_law, mod,
                                      [&](std::size_t, std::size_t u) { return u; });
  q.i_sx = sx.mutual_information;
  q.i_sy = sy.mutual_information;
  q.h_y = log_l + sy.output_entropy;
  spread_rows(p, sy.output_marginal, q.laws.p_y);

  // (X^M, U^M) is in bijection with (Z, U^M), so I(X^M; U^M) is the
  // information X^M carries about U^M when Z is the noise.
  q.laws.p_z.assign(mod, 0.0);
  for (std::uint64_t code = 0; code < s_count; ++code) q.laws.p_z[z_of[code]] += source_block[code];
  const Pmf z_law(q.laws.p_z);
  const auto xy = channel_information(u_m_law, z_law, mod, [&](std::size_t u, std::size_t z) {
    return second_component_x(z, u, mod);
  });
  q.i_xy = log_l + xy.mutual_information;
  q.h_x = log_l + xy.output_entropy;
  spread_rows(p, xy.output_marginal, q.laws.p_x);

  // H(S^n | X, Y) = H(S^n | Z): only the atypical class is ambiguous.
  const double atypical = q.laws.p_z[p.m()];
  if (atypical > 0.0) {
    for (std::uint64_t code = 0; code < s_count; ++code) {
      const double ps = source_block[code];
      if (z_of[code] == p.m() && ps > 0.0) q.h_s_given_xy += ps * std::log2(atypical / ps);
    }
  }

  const double n = static_cast<double>(p.length());
  q.rate_x = std::log2(static_cast<double>(u_count)) / n;
  q.rate_y = q.rate_x;
  q.rate_u = q.rate_x;
  return q;
}

}  // namespace tss
