#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle.hpp"
#include "tss/errors.hpp"
#include "tss/typicality.hpp"

namespace {

using tss::GammaSchedule;
using tss::Pmf;
using tss::Sequence;

const Pmf kSkewed({0.7, 0.3});

TEST(Gamma, ScheduleValues) {
  const auto s = GammaSchedule::power_law(1.0 / 3.0);
  EXPECT_NEAR(tss::gamma_at(s, 8), 0.5, 1e-15);
  EXPECT_EQ(tss::gamma_at(s, 1), 1.0);
  EXPECT_EQ(tss::gamma_at(GammaSchedule::constant(0.1), 17), 0.1);
  EXPECT_THROW(GammaSchedule::power_law(0.5), std::invalid_argument);
  EXPECT_THROW(GammaSchedule::power_law(0.0), std::invalid_argument);
  EXPECT_THROW(GammaSchedule::constant(-1), std::invalid_argument);
  EXPECT_THROW(tss::gamma_at(s, 0), std::invalid_argument);
}

TEST(Gamma, PowerLawPrefixMonotonicity) {
  for (double a : {0.05, 0.2, 1.0 / 3.0, 0.45, 0.499}) {
    const auto s = GammaSchedule::power_law(a);
    for (std::size_t n = 2; n < 2000; ++n) {
      EXPECT_LT(tss::gamma_at(s, n + 1), tss::gamma_at(s, n));
      EXPECT_GT(std::sqrt(double(n + 1)) * tss::gamma_at(s, n + 1), std::sqrt(double(n)) * tss::gamma_at(s, n));
    }
  }
}

TEST(IsTypical, Examples) {
  const Sequence ones{1, 1, 1, 1};
  EXPECT_FALSE(tss::is_typical(ones, kSkewed, 0.1));
  EXPECT_NEAR(tss::surprisal_rate(ones, kSkewed) - tss::entropy(kSkewed), 0.85567469, 1e-8);
  EXPECT_TRUE(tss::is_typical(ones, kSkewed, 0.86));

  for (std::size_t n : {1u, 3u, 7u}) {
    for (const auto& t : oracle::all_tuples(3, n)) {
      const Sequence s(t.begin(), t.end());
      EXPECT_TRUE(tss::is_typical(s, Pmf::uniform(3), 0.0));
    }
  }
  const Pmf with_zero({0.5, 0.0, 0.5});
  EXPECT_FALSE(tss::is_typical(Sequence{0, 1, 2}, with_zero, 100.0));
  EXPECT_TRUE(std::isinf(tss::surprisal_rate(Sequence{1}, with_zero)));
}

TEST(IsTypical, BoundaryIsClosed) {
  // (0,0,1,1) has surprisal exactly 1 bit/symbol under (0.5, 0.25, 0.25)
  // whose entropy is 1.5, so gamma = 0.5 sits on the boundary.
  const Pmf p({0.5, 0.25, 0.25});
  EXPECT_TRUE(tss::is_typical(Sequence{0, 0, 0, 0}, p, 0.5));
  EXPECT_FALSE(tss::is_typical(Sequence{0, 0, 0, 0}, p, 0.4999));
}

TEST(BuildIndex, Sizes) {
  EXPECT_EQ(tss::build_index(Pmf::uniform(2), 4, 0.0).size(), 16u);
  EXPECT_EQ(tss::build_index(kSkewed, 4, 1.0).size(), 16u);
  EXPECT_EQ(tss::build_index(kSkewed, 8, 0.2).size(), 84u);
  EXPECT_EQ(tss::build_index(kSkewed, 12, std::cbrt(1.0 / 12.0)).size(), 3302u);
  EXPECT_EQ(tss::build_index(Pmf::point_mass(3, 2), 5, 0.1).size(), 1u);
}

TEST(BuildIndex, EmptyAtSmallGamma) {
  // Every weight class (k ones out of 4) deviates by more than 0.05 here.
  EXPECT_THROW(tss::build_index(kSkewed, 4, 0.05), tss::EmptyTypicalSet);
}

TEST(BuildIndex, CapExceeded) {
  EXPECT_THROW(tss::build_index(kSkewed, 30, 0.1), tss::CapExceeded);
  EXPECT_THROW(tss::build_index(kSkewed, 10, 0.1, 1000), tss::CapExceeded);
}

TEST(Rank, LexicographicOrder) {
  const auto idx = tss::build_index(Pmf::uniform(2), 2, 0.0);
  EXPECT_EQ(idx.rank(Sequence{0, 0}), 0u);
  EXPECT_EQ(idx.rank(Sequence{0, 1}), 1u);
  EXPECT_EQ(idx.rank(Sequence{1, 0}), 2u);
  EXPECT_EQ(idx.rank(Sequence{1, 1}), 3u);
  const auto idx3 = tss::build_index(Pmf::uniform(2), 3, 0.0);
  EXPECT_EQ(idx3.xi_plus(Sequence{1, 0, 1}), 5u);
}

TEST(Rank, ErrorsAndXiPlus) {
  const auto idx = tss::build_index(kSkewed, 8, 0.2);
  const Sequence ones(8, 1);
  EXPECT_THROW(idx.rank(ones), std::invalid_argument);
  EXPECT_EQ(idx.xi_plus(ones), idx.size());
  EXPECT_THROW(idx.unrank(idx.size()), std::out_of_range);
}

TEST(Rank, RoundTripAndMatchesBruteForce) {
  for (double g : {0.2, 0.35, 0.6}) {
    const auto idx = tss::build_index(kSkewed, 8, g);
    std::uint64_t expect = 0;
    for (const auto& t : oracle::all_tuples(2, 8)) {
      const Sequence s(t.begin(), t.end());
      if (oracle::typical(t, {0.7, 0.3}, g)) {
        EXPECT_EQ(idx.rank(s), expect);
        EXPECT_EQ(idx.unrank(expect), s);
        ++expect;
      } else {
        EXPECT_EQ(idx.xi_plus(s), idx.size());
      }
    }
    EXPECT_EQ(expect, idx.size());
  }
}

TEST(AtypicalMass, Examples) {
  EXPECT_EQ(tss::atypical_mass(Pmf::uniform(3), 6, 0.01), 0.0);
  EXPECT_EQ(tss::atypical_mass(Pmf::point_mass(2, 0), 9, 0.01), 0.0);
  // Exact decimal: the sum over weight classes k in {0,1,4,5,6,7,8}.
  EXPECT_NEAR(tss::atypical_mass(kSkewed, 8, 0.2), 0.44940268, 1e-14);
  EXPECT_NEAR(tss::atypical_mass(kSkewed, 12, std::cbrt(1.0 / 12.0)), 0.00948937113, 1e-14);
  EXPECT_NEAR(tss::atypical_mass(kSkewed, 16, std::cbrt(1.0 / 16.0)), 0.0071295224368365, 1e-14);
}

TEST(AtypicalMass, DecreasesAlongDefaultSchedule) {
  const auto s = GammaSchedule::default_schedule();
  std::vector<double> d;
  for (std::size_t n : {8u, 16u, 24u}) d.push_back(tss::atypical_mass(kSkewed, n, tss::gamma_at(s, n)));
  EXPECT_GT(d[0], d[1]);
  EXPECT_GT(d[1], d[2]);
}

TEST(AtypicalMass, MonteCarloCoversExact) {
  const double exact = tss::atypical_mass(kSkewed, 8, 0.2);
  const auto est = tss::atypical_mass_mc(kSkewed, 8, 0.2, 200000, tss::RandomStream(3));
  EXPECT_LE(est.ci_low, exact);
  EXPECT_GE(est.ci_high, exact);
  const auto again = tss::atypical_mass_mc(kSkewed, 8, 0.2, 200000, tss::RandomStream(3), 3);
  EXPECT_EQ(est.successes, again.successes);
}

// ---- properties ----

Pmf random_source(std::mt19937_64& g) {
  const std::size_t k = 2 + g() % 3;
  std::vector<double> w(k);
  double t = 0;
  for (auto& x : w) t += (x = 0.05 + std::uniform_real_distribution<double>(0, 1)(g));
  double acc = 0;
  for (std::size_t i = 0; i + 1 < k; ++i) acc += (w[i] /= t);
  w[k - 1] = 1 - acc;
  return Pmf(w);
}

TEST(Properties, CardinalityBoundAndOracleAgreement) {
  std::mt19937_64 g(11);
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Pmf p = random_source(g);
    const std::size_t n = 2 + g() % 7;
    const double gamma = std::uniform_real_distribution<double>(0.02, 0.8)(g);
    const std::vector<double> probs(p.probs().begin(), p.probs().end());
    std::uint64_t count = 0;
    for (const auto& t : oracle::all_tuples(static_cast<unsigned>(p.support_size()), static_cast<unsigned>(n)))
      count += oracle::typical(t, probs, gamma) ? 1 : 0;
    if (count == 0) {
      EXPECT_THROW(tss::build_index(p, n, gamma), tss::EmptyTypicalSet);
      continue;
    }
    const auto idx = tss::build_index(p, n, gamma);
    ++built;
    EXPECT_EQ(idx.size(), count);
    EXPECT_LE(static_cast<double>(idx.size()), std::exp2(double(n) * (tss::entropy(p) + gamma)) * (1 + 1e-12));
    for (std::uint64_t m = 0; m < idx.size(); ++m) EXPECT_EQ(idx.rank(idx.unrank(m)), m);
  }
  EXPECT_GT(built, 20);
}

TEST(Properties, MembershipIsPermutationInvariant) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 500; ++trial) {
    const Pmf p = random_source(g);
    const std::size_t n = 1 + g() % 12;
    Sequence s(n);
    for (auto& x : s) x = static_cast<tss::Symbol>(g() % p.support_size());
    const double gamma = std::uniform_real_distribution<double>(0.0, 1.0)(g);
    const bool base = tss::is_typical(s, p, gamma);
    const double rate = tss::surprisal_rate(s, p);
    for (int k = 0; k < 5; ++k) {
      std::shuffle(s.begin(), s.end(), g);
      EXPECT_EQ(tss::is_typical(s, p, gamma), base);
      EXPECT_EQ(tss::surprisal_rate(s, p), rate);
    }
  }
}

}  // namespace
