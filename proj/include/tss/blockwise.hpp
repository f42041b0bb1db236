#pragma once

// Blockwise scheme over the typical set. A secret block s^n is mapped to
// Z = xi_plus(s^n) in {0..M_n}, and the two shares are
//
//     X = (U^L, Z - U^M mod (M_n+1)),   Y = (U^L, U^M)
//
// with U^L uniform on {0..L_n-1}, U^M uniform on {0..M_n} and
// L_n = floor(2^{n ell}). The decoder rejects unless the first components
// agree and the second components add up to a member rank.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tss/decode_outcome.hpp"
#include "tss/probcore.hpp"
#include "tss/random_stream.hpp"
#include "tss/typicality.hpp"

namespace tss {

// n * ell is limited so that L_n is exact in 64 bits.
inline constexpr double kMaxBlockExponentBits = 40.0;

// Budget on the number of elementary steps an exact blockwise evaluation may
// take before it refuses.
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 32;

// floor(2^{n ell}), evaluated in extended precision.
std::uint64_t block_count(std::size_t n, double ell);

struct BlockShare {
  std::uint64_t l_idx = 0;
  std::uint64_t m_idx = 0;
  bool operator==(const BlockShare&) const = default;
};

struct BlockRandomness {
  std::uint64_t u_l = 0;
  std::uint64_t u_m = 0;
};

class BlockwiseParams {
 public:
  BlockwiseParams(TypicalIndex index, double ell);

  static BlockwiseParams make(const Pmf& source, std::size_t n, double ell, double gamma,
                              std::uint64_t cap = kDefaultStateCap);

  std::size_t length() const { return index_.length(); }
  double ell() const { return ell_; }
  std::uint64_t l() const { return l_; }
  std::uint64_t m() const { return index_.size(); }
  std::uint64_t modulus() const { return index_.size() + 1; }
  std::uint64_t share_alphabet() const { return l_ * modulus(); }
  const TypicalIndex& index() const { return index_; }
  const Pmf& source() const { return index_.source(); }

  // Row-major code l_idx * (M_n + 1) + m_idx.
  std::uint64_t share_code(const BlockShare& s) const { return s.l_idx * modulus() + s.m_idx; }
  BlockShare share_from_code(std::uint64_t c) const { return {c / modulus(), c % modulus()}; }
  bool in_range(const BlockShare& s) const { return s.l_idx < l_ && s.m_idx <= m(); }

 private:
  TypicalIndex index_;
  double ell_;
  std::uint64_t l_;
};

using BlockSharePair = std::pair<BlockShare, BlockShare>;

// Shares for a given Z value.
BlockSharePair encode_index(const BlockwiseParams& p, std::uint64_t z, const BlockRandomness& r);
BlockSharePair encode(const BlockwiseParams& p, std::span<const Symbol> secret,
                      const BlockRandomness& r);

bool accepts(const BlockwiseParams& p, const BlockShare& x, const BlockShare& y);

// Member rank of the decoded block, or nullopt on rejection.
std::optional<std::uint64_t> decode_index(const BlockwiseParams& p, const BlockShare& x,
                                          const BlockShare& y);
DecodeOutcome decode(const BlockwiseParams& p, const BlockShare& x, const BlockShare& y);

BlockRandomness draw_randomness(const BlockwiseParams& p, RandomStream& rng);

// Exact laws of Z and of the two shares, the latter indexed by share_code().
struct BlockwiseLaws {
  std::vector<double> p_z;
  std::vector<double> p_x;
  std::vector<double> p_y;
};

BlockwiseLaws share_laws(const BlockwiseParams& p,
                         std::uint64_t budget = kDefaultEnumerationBudget);

struct BlockwiseQuantities {
  double p_e = 0.0;           // Pr{decoded block != S^n}
  double alpha = 0.0;         // Pr{(X, Y) rejected}
  double i_sx = 0.0;          // I(S^n; X), bits
  double i_sy = 0.0;          // I(S^n; Y)
  double i_xy = 0.0;          // I(X; Y), bits per block
  double h_s = 0.0;           // H(S^n)
  double h_x = 0.0;
  double h_y = 0.0;
  double h_s_given_xy = 0.0;  // H(S^n | X, Y)
  double rate_x = 0.0;        // (1/n) log2 |X|
  double rate_y = 0.0;
  double rate_u = 0.0;
  BlockwiseLaws laws;
};

// All quantities by exhaustive enumeration over (s^n, U^M); U^L factors out.
// Throws CapExceeded when |S|^n * (M_n + 1) exceeds the budget.
BlockwiseQuantities exact_quantities(const BlockwiseParams& p,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace tss
