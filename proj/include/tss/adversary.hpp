#pragma once

// Impersonation attacks and the hypothesis-testing bounds that limit them.
//
// The attack success probability is linear in the forgery distribution, so
// its maximum is attained at a point mass; exact attacks evaluate every
// forged value and report the lexicographically smallest maximizer.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tss/blockwise.hpp"
#include "tss/montecarlo.hpp"
#include "tss/probcore.hpp"
#include "tss/symbolwise.hpp"

namespace tss {

// Success probabilities closer than this (relative) count as ties.
inline constexpr double kAttackTieTolerance = 1e-12;

struct AttackResult {
  enum class Mode { kExact, kMonteCarlo };

  double success_prob = 0.0;
  // The maximizing forged value: a share code for single-symbol forgeries, or
  // a symbol sequence. Empty for Monte Carlo results.
  std::vector<std::uint64_t> forgery;
  Mode mode = Mode::kExact;
  std::uint64_t trials = 0;
  double ci_halfwidth = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

enum class Direction { kForgeX, kForgeY };

// Max over forged values f in [0, count) of acceptance(f).
AttackResult optimal_attack(std::uint64_t count, const std::function<double(std::uint64_t)>& acceptance);

using PairPredicate = std::function<bool(std::uint64_t x, std::uint64_t y)>;

// Dense attacks: the honest share is drawn from its marginal and the pair is
// accepted by region(x, y).
AttackResult optimal_attack_x(std::uint64_t x_count, const Pmf& p_y, const PairPredicate& region);
AttackResult optimal_attack_y(std::uint64_t y_count, const Pmf& p_x, const PairPredicate& region);

// Blockwise: per-forgery acceptance is evaluated in O(1) from row sums of the
// honest share law. forgery = {share code}.
class BlockwiseAttack {
 public:
  BlockwiseAttack(const BlockwiseParams& params, const BlockwiseLaws& laws);

  double acceptance(Direction d, std::uint64_t forged_code) const;
  AttackResult optimal(Direction d) const;
  // Pr_{P_X x P_Y}{accepted}.
  double beta() const;

 private:
  const BlockwiseParams& params_;
  const BlockwiseLaws& laws_;
  std::vector<double> row_x_;
  std::vector<double> row_y_;
};

// Symbolwise: depends only on the forged type, found by a depth-first search
// over types with incremental convolution of class-count laws. forgery = the
// maximizing sequence. Throws InfeasibleExact when the class-count state space
// exceeds state_cap.
AttackResult symbolwise_optimal_attack(const SymbolwiseCodec& codec, Direction d,
                                       std::uint64_t state_cap = std::uint64_t{1} << 22);

// Acceptance probability of one forged sequence, by the same convolution.
double symbolwise_acceptance(const SymbolwiseCodec& codec, Direction d,
                             std::span<const Symbol> forged,
                             std::uint64_t state_cap = std::uint64_t{1} << 22);

// For the modular base scheme every forgery has the same success probability:
// the decoded block is uniform on {0..M-1}^n, so the probability is the number
// of accepted decoded blocks over M^n, counted by secret type.
AttackResult fstar_attack_by_types(const SymbolwiseCodec& codec,
                                   std::uint64_t cap = kDefaultCompositionCap);

// Runs trials of a caller-built experiment; make_trial() returns a fresh
// bool(RandomStream&) for each worker.
using TrialFactory = std::function<std::function<bool(RandomStream&)>()>;
McEstimate monte_carlo_estimate(const TrialFactory& make_trial, std::uint64_t trials,
                                const RandomStream& rng, unsigned threads = 1);

AttackResult monte_carlo_attack(const TrialFactory& make_trial, std::uint64_t trials,
                                const RandomStream& rng, unsigned threads = 1);

// Forged share codes drawn from forgery; honest shares from a fresh encoding.
TrialFactory blockwise_attack_trials(const BlockwiseParams& params, Direction d, const Pmf& forgery);
// Forged symbols drawn i.i.d. from forgery.
TrialFactory symbolwise_attack_trials(const SymbolwiseCodec& codec, Direction d, const Pmf& forgery);
// Independently encoded X and Y, tested for acceptance (estimates beta).
TrialFactory blockwise_product_trials(const BlockwiseParams& params);
TrialFactory symbolwise_product_trials(const SymbolwiseCodec& codec);
// Legitimate pairs, success = rejected (estimates alpha and P_e).
TrialFactory blockwise_rejection_trials(const BlockwiseParams& params);
TrialFactory symbolwise_rejection_trials(const SymbolwiseCodec& codec);

struct ExponentFit {
  double slope = 0.0;          // through the origin
  double ols_slope = 0.0;      // with intercept
  double ols_intercept = 0.0;
  std::vector<std::pair<std::size_t, double>> points;  // (n, -(1/n) log2 P)
  std::vector<std::string> notes;
};

// Needs at least three points with positive probability; zero probabilities
// are dropped with a note.
ExponentFit exponent_fit(std::span<const std::pair<std::size_t, double>> series);

struct TestQuantities {
  double alpha = 0.0;
  double beta = 0.0;
};

// Dense evaluation over a two-axis joint of (X, Y).
TestQuantities test_quantities(const JointPmf& joint, const PairPredicate& region,
                               std::uint64_t cap = kDefaultStateCap);

inline constexpr double kBoundTolerance = 1e-9;

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool vacuous = false;
};

// I(X;Y) >= -h(alpha) - (1 - alpha) log2 beta.
BoundCheck logsum_bound_check(double i_xy, const TestQuantities& tq);

// (1/n) H(S^n | X, Y) <= (1/n) h(P_e) + P_e log2 |S|.
BoundCheck fano_check(double p_e, double h_s_given_xy, std::size_t n, std::size_t alphabet_size);

// max{-(1/n) log2 P^X, -(1/n) log2 P^Y}
//     <= (1/n) I(X;Y) / (1 - alpha) + h(alpha) / (n (1 - alpha)).
BoundCheck converse_exponent_check(double i_xy, double alpha, double p_x, double p_y,
                                   std::size_t n);

}  // namespace tss
