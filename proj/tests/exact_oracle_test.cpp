#include <gtest/gtest.h>

#include <vector>

#include "densest/exact_oracle.hpp"
#include "densest/gap_tracker.hpp"
#include "oracles.hpp"

using namespace densest;

namespace {

using Ledger = MantissaLedger<__int128>;

std::vector<std::string> values(const Ledger& l) {
  std::vector<std::string> out;
  for (const auto& m : l.mantissas()) out.push_back(mantissa_value<__int128>(m).str());
  return out;
}

}  // namespace

TEST(Ledger, InsertKeepsExactOrder) {
  Ledger l;
  l.insert({1, 0});
  l.insert({3, 1});
  EXPECT_EQ(values(l), (std::vector<std::string>{"1/1", "3/2"}));
  l.insert({5, 2});
  EXPECT_EQ(values(l), (std::vector<std::string>{"1/1", "5/4", "3/2"}));
  l.insert({7, 2});
  EXPECT_EQ(values(l), (std::vector<std::string>{"1/1", "5/4", "3/2", "7/4"}));
}

TEST(Ledger, RejectsDuplicatesAndNonMantissas) {
  Ledger l;
  l.insert({3, 1});
  EXPECT_THROW(l.insert({3, 1}), std::logic_error);
  EXPECT_THROW(l.insert({4, 2}), std::invalid_argument);  // even
  EXPECT_THROW(l.insert({9, 2}), std::invalid_argument);  // 9/4 >= 2
  EXPECT_THROW(Ledger{}.extreme_ratios(), std::domain_error);
}

TEST(Ledger, ExtremeRatios) {
  Ledger l;
  l.insert({1, 0});
  auto one = l.extreme_ratios();
  EXPECT_EQ(one.max.ratio.str(), "2/1");
  EXPECT_FALSE(one.min);

  l.insert({3, 1});
  auto two = l.extreme_ratios();
  EXPECT_EQ(two.max.ratio.str(), "3/2");
  EXPECT_EQ(two.min->ratio.str(), "4/3");

  l.insert({5, 2});
  auto three = l.extreme_ratios();
  EXPECT_EQ(three.max.ratio.str(), "4/3");
  EXPECT_TRUE(three.max.wraps);
  EXPECT_EQ(three.min->ratio.str(), "6/5");
  EXPECT_EQ(mantissa_value<__int128>(three.min->lower).str(), "5/4");
  EXPECT_EQ(mantissa_value<__int128>(three.min->upper).str(), "3/2");
}

// The ratios multiply to 2 around the circle, and wide and 128-bit
// arithmetic agree.
TEST(Ledger, RatiosMultiplyToTwo) {
  Ledger fast;
  MantissaLedger<BigInt> wide;
  for (std::uint64_t k = 1; k <= 300; ++k) {
    fast.insert(log_odd_mantissa(k));
    wide.insert(log_odd_mantissa(k));
    BigInt num = 1, den = 1;
    for (const auto& a : wide.adjacencies()) {
      num *= a.ratio.num;
      den *= a.ratio.den;
    }
    ASSERT_EQ(num, 2 * den) << k;
    ASSERT_EQ(fast.adjacencies().size(), k);
    ASSERT_EQ(fast.extreme_ratios().max.ratio.str(), wide.extreme_ratios().max.ratio.str());
  }
}

TEST(VerifyExample1, SmallPrefixWitnesses) {
  auto rep = verify_example1(3);
  EXPECT_TRUE(rep.clean());
  ASSERT_EQ(rep.witnesses.size(), 3u);
  EXPECT_EQ(rep.witnesses[0].max.ratio, "2/1");
  EXPECT_FALSE(rep.witnesses[0].min);
  EXPECT_EQ(rep.witnesses[1].max.ratio, "3/2");
  EXPECT_EQ(rep.witnesses[1].min->ratio, "4/3");
  const auto& w3 = rep.witnesses[2];
  EXPECT_EQ(w3.max.ratio, "4/3");
  EXPECT_EQ(w3.max.lower, "3/2");
  EXPECT_EQ(w3.max.upper, "2/1");
  EXPECT_EQ(w3.min->ratio, "6/5");
  EXPECT_EQ(w3.min->lower, "5/4");
  EXPECT_EQ(w3.min->upper, "3/2");
}

TEST(VerifyExample1, ThousandIsClean) {
  auto rep = verify_example1(1000);
  EXPECT_TRUE(rep.clean());
  EXPECT_FALSE(rep.wide_integers);
  EXPECT_EQ(rep.witnesses.size(), 1000u);
}

TEST(VerifyExample1, WidePathAgrees) {
  Example1Report rep;
  detail::run_example1<BigInt>(rep, 2000, [](std::uint64_t k) { return log_odd_mantissa(k); }, 0);
  EXPECT_TRUE(rep.clean());
}

TEST(VerifyExample1, DroppedPointIsCaught) {
  auto rep = verify_example1_with(3, [](std::uint64_t k) { return log_odd_mantissa(k == 1 ? 1 : k + 1); });
  ASSERT_FALSE(rep.clean());
  bool at3 = false;
  for (const auto& v : rep.violations) at3 |= v.n == 3;
  EXPECT_TRUE(at3);
}

TEST(VerifyExample1, JsonShape) {
  auto j = to_json(verify_example1(2));
  EXPECT_EQ(j["n_max"], 2);
  EXPECT_TRUE(j["violations"].empty());
  EXPECT_EQ(j["witnesses"][1]["min"]["ratio"], "4/3");
  EXPECT_TRUE(j["witnesses"][0]["min"].is_null());
}

// log2 of the exact extremes against the floating tracker.
TEST(CrossCheck, TrackerMatchesExactRatios) {
  Ledger l;
  GapTracker t;
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    l.insert(log_odd_mantissa(n));
    const auto& r = t.push(log_odd_point(n));
    const auto ext = l.extreme_ratios();
    const auto ratio_log2 = [](const ExactRatio<__int128>& q) {
      return oracle::log2_ratio(static_cast<std::uint64_t>(q.num), static_cast<std::uint64_t>(q.den));
    };
    ASSERT_NEAR(r.D_n, ratio_log2(ext.max.ratio) / 2.0, 1e-12) << n;
    if (n >= 2) { ASSERT_NEAR(*r.d_n, ratio_log2(ext.min->ratio), 1e-12) << n; }
  }
}
