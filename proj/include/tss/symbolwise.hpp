#pragma once

// Symbol-by-symbol scheme: a one-shot base scheme (f, g) applied to each
// position, with a joint-typicality acceptance test on the share pair.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tss/decode_outcome.hpp"
#include "tss/probcore.hpp"
#include "tss/sequence.hpp"

namespace tss {

// One-shot (2,2) scheme. decode returns nullopt for the out-of-range symbol.
struct BaseScheme {
  std::string name;
  std::size_t secret_size = 0;
  std::size_t randomness_size = 0;
  std::size_t x_size = 0;
  std::size_t y_size = 0;
  std::function<std::pair<Symbol, Symbol>(Symbol s, Symbol u)> encode;
  std::function<std::optional<Symbol>(Symbol x, Symbol y)> decode;

  // x = s - u mod M, y = u; decode x + y mod M when it is a secret symbol.
  static BaseScheme fstar(std::size_t modulus, std::size_t secret_size);
};

// Deliberately flawed base schemes, for exercising the validator.
// x = s, y = u: the first share is the secret.
BaseScheme identity_leak_scheme(std::size_t modulus, std::size_t secret_size);
// x = y = u: the shares carry no secret at all.
BaseScheme non_decodable_scheme(std::size_t modulus, std::size_t secret_size);
// Modular scheme with M < |S|.
BaseScheme undersized_scheme(std::size_t modulus, std::size_t secret_size);

std::pair<Symbol, Symbol> fstar(std::size_t modulus, std::size_t secret_size, Symbol s, Symbol u);
std::optional<Symbol> gstar(std::size_t modulus, std::size_t secret_size, Symbol x, Symbol y);

inline constexpr double kBaseValidationTolerance = 1e-9;

struct BaseValidation {
  double h_s = 0.0;
  double h_s_given_x = 0.0;
  double h_s_given_y = 0.0;
  double h_s_given_xy = 0.0;
  double ell = 0.0;  // I(X; Y)
  bool sizes_ok = false;
  bool decoder_consistent = false;
  bool passed = false;
  // Subset of "security_x", "security_y", "decodability", "alphabet_size".
  std::vector<std::string> failures;
};

// Joint of (S, U, X, Y) with U uniform and independent of S.
JointPmf base_joint(const BaseScheme& scheme, const Pmf& source);

BaseValidation validate_base(const BaseScheme& scheme, const Pmf& source);

// log2 M - H(S).
double correlation_level_fstar(std::size_t modulus, const Pmf& source);

// Per-cell scores log2(P_XY / (P_X P_Y)) are grouped into classes of equal
// value (1e-12 relative), in increasing order. A block score is computed from
// the class counts alone, so it is the same for every ordering of the block
// and the acceptance decision can be reproduced from counts.
class SymbolwiseCodec {
 public:
  static constexpr int kNullClass = -1;  // P_XY = 0, score -inf

  // Throws std::invalid_argument if the base scheme fails validation.
  SymbolwiseCodec(BaseScheme base, Pmf source, std::size_t n, double gamma);

  const BaseScheme& base() const { return base_; }
  const Pmf& source() const { return source_; }
  const BaseValidation& validation() const { return validation_; }
  std::size_t length() const { return n_; }
  double gamma() const { return gamma_; }
  double ell() const { return validation_.ell; }
  double threshold() const { return validation_.ell - gamma_; }

  std::size_t x_size() const { return base_.x_size; }
  std::size_t y_size() const { return base_.y_size; }
  double joint(Symbol x, Symbol y) const { return p_xy_[x * base_.y_size + y]; }
  const Pmf& p_x() const { return p_x_; }
  const Pmf& p_y() const { return p_y_; }

  std::size_t class_count() const { return class_values_.size(); }
  double class_value(std::size_t k) const { return class_values_[k]; }
  int cell_class(Symbol x, Symbol y) const { return cell_class_[x * base_.y_size + y]; }

  std::pair<Sequence, Sequence> encode_n(std::span<const Symbol> s,
                                         std::span<const Symbol> u) const;
  double llr_score(std::span<const Symbol> x, std::span<const Symbol> y) const;
  bool accepts_n(std::span<const Symbol> x, std::span<const Symbol> y) const;
  // Throws std::logic_error if an accepted pair decodes to the out-of-range
  // symbol, which a validated base scheme cannot produce.
  DecodeOutcome decode_n(std::span<const Symbol> x, std::span<const Symbol> y) const;

  // Score and decision for a block with the given finite-class counts
  // (summing to n).
  double score_from_counts(std::span<const std::size_t> counts) const;
  bool accepts_counts(std::span<const std::size_t> counts) const;

 private:
  void check_pair(std::span<const Symbol> x, std::span<const Symbol> y) const;

  BaseScheme base_;
  Pmf source_;
  std::size_t n_;
  double gamma_;
  BaseValidation validation_;
  std::vector<double> p_xy_;
  Pmf p_x_;
  Pmf p_y_;
  std::vector<double> class_values_;
  std::vector<int> cell_class_;
};

inline constexpr std::uint64_t kDefaultCompositionCap = std::uint64_t{1} << 26;

// Calls visit(counts, log_multinomial) for every composition of n into k
// parts. Throws CapExceeded if there are more than cap of them.
void for_each_composition(std::size_t n, std::size_t k, std::uint64_t cap,
                          const std::function<void(std::span<const std::size_t>, long double)>& visit);

// Probability mass of blocks whose class counts satisfy keep(), when the n
// positions draw classes i.i.d. from class_probs (which may sum to less than 1;
// the remainder is the null class, which no kept block may contain).
double class_composition_mass(const SymbolwiseCodec& codec, std::span<const double> class_probs,
                              bool accepted, std::uint64_t cap = kDefaultCompositionCap);

struct SymbolwiseQuantities {
  double p_e = 0.0;                // Pr{(X^n, Y^n) rejected}
  double alpha = 0.0;
  double beta = 0.0;               // product-law mass of the acceptance region
  double i_xy_per_symbol = 0.0;
  double i_sx_per_symbol = 0.0;
  double i_sy_per_symbol = 0.0;
  double h_s = 0.0;                // per symbol
  double h_s_given_x = 0.0;        // per symbol
  double h_s_given_y = 0.0;
  double h_s_given_xy = 0.0;
  double rate_x = 0.0;
  double rate_y = 0.0;
  double rate_u = 0.0;
};

SymbolwiseQuantities exact_symbolwise_quantities(const SymbolwiseCodec& codec,
                                                 std::uint64_t cap = kDefaultCompositionCap);

}  // namespace tss
