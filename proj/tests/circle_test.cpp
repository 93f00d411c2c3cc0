#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "densest/circle.hpp"
#include "densest/sequences.hpp"
#include "oracles.hpp"

using namespace densest;

TEST(CirclePoint, ReducesModOne) {
  EXPECT_DOUBLE_EQ(CirclePoint(1.25).value(), 0.25);
  EXPECT_DOUBLE_EQ(CirclePoint(-0.25).value(), 0.75);
  EXPECT_EQ(CirclePoint(3.0).value(), 0.0);
  // Rounds up to 1 without the guard.
  EXPECT_LT(CirclePoint(-1e-20).value(), 1.0);
  EXPECT_THROW(CirclePoint(std::nan("")), std::invalid_argument);
}

TEST(Rho, Examples) {
  EXPECT_EQ(rho(CirclePoint(0.3), CirclePoint(0.3)), 0.0);
  EXPECT_EQ(rho(CirclePoint(0.0), CirclePoint(0.5)), 0.5);
  EXPECT_NEAR(rho(CirclePoint(0.25), CirclePoint(0.9)), 0.35, 1e-15);
}

TEST(Rho, IsAMetricOnRandomTriples) {
  SplitMix64 rng(2024);
  for (int i = 0; i < 20000; ++i) {
    CirclePoint a(rng.uniform()), b(rng.uniform()), c(rng.uniform());
    EXPECT_GE(rho(a, b), 0.0);
    EXPECT_LE(rho(a, b), 0.5);
    EXPECT_EQ(rho(a, b), rho(b, a));
    EXPECT_LE(rho(a, c), rho(a, b) + rho(b, c) + 1e-15);
  }
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi(1), 0.5);
  EXPECT_NEAR(phi(2), 0.29248125036057809, 1e-16);
  EXPECT_NEAR(phi(3), 0.20751874963942191, 1e-16);
  EXPECT_NEAR(phi(2) + phi(3), 0.5, 1e-16);
  EXPECT_THROW(phi(0), std::invalid_argument);
}

TEST(Phi, MatchesHighPrecisionOracle) {
  for (std::uint64_t n : {1u, 2u, 3u, 7u, 100u, 4097u, 1000000u}) {
    EXPECT_NEAR(phi(n), oracle::phi(n), 2e-16 * oracle::phi(n)) << n;
  }
}

TEST(Phi, StrictlyDecreasingAndNPhiIncreasesToLimit) {
  for (std::uint64_t n = 1; n < 5000; ++n) {
    EXPECT_GT(phi(n), phi(n + 1));
    EXPECT_LT(n * phi(n), (n + 1) * phi(n + 1) + 1e-15);
    EXPECT_LT(n * phi(n), kLimitConstant);
  }
  EXPECT_NEAR(kLimitConstant, 0.72134752044448170, 1e-16);
}

TEST(Phi, TelescopingIdentities) {
  for (std::uint64_t n = 1; n <= 2048; ++n) {
    double s = 0.0;
    for (std::uint64_t k = 1; k <= n; ++k) s += 2.0 * phi(n + k - 1);
    ASSERT_NEAR(s, 1.0, 1e-12) << n;
  }
  for (std::uint64_t n = 1; n <= 1024; ++n) {
    double s = 0.0;
    for (std::uint64_t k = 2 * n; k <= 4 * n - 1; ++k) s += phi(k);
    ASSERT_NEAR(s, 0.5, 1e-12) << n;
  }
}

TEST(Partition, BisectionSplitsTheWholeCircle) {
  PartitionState s;
  s.insert(CirclePoint(0.0));
  EXPECT_EQ(s.sorted_gap_vector(), std::vector<double>{1.0});
  auto out = s.insert(CirclePoint(0.5));
  EXPECT_FALSE(out.duplicate);
  EXPECT_EQ(out.removed.length, 1.0);
  EXPECT_EQ(s.sorted_gap_vector(), (std::vector<double>{0.5, 0.5}));
}

TEST(Partition, DuplicateLeavesGapsAndCounts) {
  PartitionState s;
  s.insert(CirclePoint(0.0));
  auto out = s.insert(CirclePoint(0.0));
  EXPECT_TRUE(out.duplicate);
  EXPECT_EQ(s.duplicates(), 1u);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.sorted_gap_vector(), std::vector<double>{1.0});
  EXPECT_EQ(s.min_distance(), 0.0);
}

TEST(Partition, LogOddPrefixGaps) {
  PartitionState s;
  s.insert(CirclePoint(0.0));
  s.insert(CirclePoint(0.5849625));
  auto two = s.sorted_gap_vector();
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(two[0], 0.5849625, 1e-15);
  EXPECT_NEAR(two[1], 0.4150375, 1e-15);

  s.insert(CirclePoint(0.3219281));
  auto three = s.sorted_gap_vector();
  ASSERT_EQ(three.size(), 3u);
  EXPECT_NEAR(three[0], 0.4150375, 1e-15);
  EXPECT_NEAR(three[1], 0.3219281, 1e-15);
  EXPECT_NEAR(three[2], 0.2630344, 1e-15);
  EXPECT_DOUBLE_EQ(s.dispersion() * 2, three.front());
  EXPECT_DOUBLE_EQ(s.min_distance(), three.back());
}

TEST(Partition, EmptyAndSinglePointQueries) {
  PartitionState s;
  EXPECT_THROW(s.sorted_gap_vector(), std::domain_error);
  EXPECT_THROW(s.dispersion(), std::domain_error);
  s.insert(CirclePoint(0.7));
  EXPECT_EQ(s.dispersion(), 0.5);
  EXPECT_THROW(s.min_distance(), std::domain_error);
}

TEST(Partition, MaxGapTieGoesToSmallestLeft) {
  PartitionState s;
  for (double x : {0.5, 0.0, 0.25, 0.75}) s.insert(CirclePoint(x));
  EXPECT_EQ(s.max_gap().left.value(), 0.0);
  EXPECT_EQ(s.max_gap().length, 0.25);
}

// Each non-duplicate insertion removes one arc and adds two summing to it;
// arcs always sum to one and the extremes match the sorted vector.
TEST(Partition, SplittingInvariantOnRandomInserts) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PartitionState s;
    for (std::uint64_t k = 1; k <= 1024; ++k) {
      const auto before = s.size();
      auto out = s.insert(random_point(seed, k));
      ASSERT_FALSE(out.duplicate);
      ASSERT_EQ(s.size(), before + 1);
      ASSERT_EQ(s.gaps().size(), s.size());
      if (before >= 1 && k > 1) {
        ASSERT_NEAR(out.first.length + out.second.length, out.removed.length, 1e-15);
      }
      const auto v = s.sorted_gap_vector();
      ASSERT_TRUE(std::is_sorted(v.rbegin(), v.rend()));
      ASSERT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-12);
      ASSERT_EQ(v.front(), 2 * s.dispersion());
      if (s.size() >= 2) { ASSERT_EQ(v.back(), s.min_distance()); }
    }
  }
}
