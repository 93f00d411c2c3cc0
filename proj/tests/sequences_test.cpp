#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "densest/exact_oracle.hpp"
#include "densest/sequences.hpp"
#include "oracles.hpp"

using namespace densest;

TEST(LogOdd, Points) {
  EXPECT_EQ(log_odd_point(1).value(), 0.0);
  EXPECT_NEAR(log_odd_point(2).value(), 0.58496250072115618, 1e-16);
  EXPECT_NEAR(log_odd_point(3).value(), 0.32192809488736235, 1e-16);
  EXPECT_THROW(log_odd_point(0), std::invalid_argument);
}

TEST(LogOdd, Mantissas) {
  EXPECT_EQ(log_odd_mantissa(1), (DyadicMantissa{1, 0}));
  EXPECT_EQ(log_odd_mantissa(3), (DyadicMantissa{5, 2}));
  EXPECT_EQ(log_odd_mantissa(8), (DyadicMantissa{15, 3}));
  EXPECT_THROW(log_odd_mantissa(0), std::invalid_argument);
}

// Coordinates agree with an independent 50-digit evaluation of log2 of the
// mantissa, and every precision path rounds to the same double.
TEST(LogOdd, PointsMatchMantissaLog) {
  for (std::uint64_t k = 1; k <= 1'000'000; k += (k < 5000 ? 1 : 997)) {
    const auto m = log_odd_mantissa(k);
    const double expect = oracle::log2_ratio(m.numerator, std::uint64_t{1} << m.exponent);
    ASSERT_NEAR(log_odd_point(k).value(), expect, 1e-14) << k;
  }
  for (std::uint64_t k : {2u, 3u, 77u, 12345u, 999999u}) {
    EXPECT_EQ(log_odd_point(k, 113).value(), log_odd_point(k, 256).value()) << k;
    EXPECT_NEAR(log_odd_point(k, 64).value(), log_odd_point(k, 113).value(), 1e-16) << k;
  }
  EXPECT_THROW(log_odd_point(3, 512), std::invalid_argument);
}

TEST(LogOdd, MantissasAreDistinct) {
  std::set<DyadicMantissa, MantissaLess<__int128>> seen;
  for (std::uint64_t k = 1; k <= 100'000; ++k) {
    const auto m = log_odd_mantissa(k);
    ASSERT_EQ(m.numerator % 2, 1u);
    ASSERT_LE(std::uint64_t{1} << m.exponent, m.numerator);
    ASSERT_LT(m.numerator, std::uint64_t{2} << m.exponent);
    ASSERT_TRUE(seen.insert(m).second) << k;
  }
}

TEST(Kronecker, Points) {
  EXPECT_EQ(kronecker_point(0.5, 3).value(), 0.5);
  EXPECT_NEAR(kronecker_point(kGoldenConjugate, 1).value(), 0.6180339887498949, 1e-15);
  EXPECT_NEAR(kronecker_point(kGoldenConjugate, 2).value(), 0.2360679774997897, 1e-15);
}

TEST(VanDerCorput, Points) {
  EXPECT_EQ(van_der_corput_point(2, 1).value(), 0.5);
  EXPECT_EQ(van_der_corput_point(2, 3).value(), 0.75);
  EXPECT_EQ(van_der_corput_point(3, 5).value(), 7.0 / 9.0);
  EXPECT_THROW(van_der_corput_point(1, 5), std::invalid_argument);
}

TEST(SplitMix, CounterMatchesStream) {
  SplitMix64 g(99);
  for (std::uint64_t k = 1; k <= 100; ++k) EXPECT_EQ(g(), SplitMix64::at(99, k));
  // Reference output of SplitMix64 seeded with 0.
  EXPECT_EQ(SplitMix64::at(0, 1), 0xe220a8397b1dcdafULL);
}

TEST(Streams, AllPointsInUnitInterval) {
  for (const auto& spec : stock_sequences()) {
    for (const auto& p : take(spec, 4096)) {
      ASSERT_GE(p.value(), 0.0) << spec.label();
      ASSERT_LT(p.value(), 1.0) << spec.label();
    }
  }
}

TEST(Streams, LogOddPrefix) {
  auto pts = take(SequenceSpec::log_odd(), 3);
  EXPECT_EQ(pts[0].value(), 0.0);
  EXPECT_NEAR(pts[1].value(), 0.58496250072115618, 1e-16);
  EXPECT_NEAR(pts[2].value(), 0.32192809488736235, 1e-16);
}

TEST(Streams, RandomIsDeterministic) {
  EXPECT_EQ(take(SequenceSpec::random(7), 5), take(SequenceSpec::random(7), 5));
  EXPECT_NE(take(SequenceSpec::random(7), 5), take(SequenceSpec::random(8), 5));
}

class TempFile {
 public:
  explicit TempFile(const std::string& body) : path_(testing::TempDir() + "densest_pts_" + std::to_string(++n_)) {
    std::ofstream(path_) << body;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  static inline int n_ = 0;
  std::string path_;
};

TEST(Streams, FilePassthrough) {
  TempFile f("0.25\n0.75\n");
  auto pts = take(SequenceSpec::file(f.path()), 2);
  EXPECT_EQ(pts[0].value(), 0.25);
  EXPECT_EQ(pts[1].value(), 0.75);
}

TEST(Streams, FileCommentsAndErrors) {
  std::istringstream ok("# header\n0.5  # half\n\n0.125\n");
  auto pts = parse_point_list(ok);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[1].value(), 0.125);

  std::istringstream bad("0.5\nabc\n");
  try {
    parse_point_list(bad, "pts.txt");
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("pts.txt:2"), std::string::npos) << e.what();
  }
  std::istringstream range("0.5\n\n1.0\n");
  try {
    parse_point_list(range, "r.txt");
    FAIL();
  } catch (const input_error& e) {
    EXPECT_NE(std::string(e.what()).find("r.txt:3"), std::string::npos) << e.what();
  }
}

TEST(Streams, ShortFileIsInsufficient) {
  TempFile f("0.1\n0.2\n0.3\n");
  EXPECT_THROW(take(SequenceSpec::file(f.path()), 5), input_error);
  EXPECT_THROW(take(SequenceSpec::file(f.path() + ".missing"), 1), input_error);
}

TEST(SpecParse, MiniLanguage) {
  EXPECT_EQ(SequenceSpec::parse("log-odd").label(), "log-odd");
  EXPECT_EQ(SequenceSpec::parse("kronecker:golden").label(), "kronecker:golden");
  EXPECT_EQ(std::get<spec::Kronecker>(SequenceSpec::parse("kronecker:1.25").kind).alpha, 0.25);
  EXPECT_EQ(SequenceSpec::parse("vdc:3").label(), "vdc:3");
  EXPECT_EQ(SequenceSpec::parse("random:7").label(), "random:7");
  EXPECT_EQ(SequenceSpec::parse("file:a/b.txt").label(), "file:a/b.txt");
  for (const auto& spec : stock_sequences()) {
    EXPECT_EQ(take(SequenceSpec::parse(spec.label()), 64), take(spec, 64)) << spec.label();
  }
  for (const char* bad : {"bogus", "vdc:1", "vdc:", "vdc:x", "random:-1", "kronecker:", "kronecker:nan",
                          "log-odd:3", "file:"}) {
    EXPECT_THROW(SequenceSpec::parse(bad), input_error) << bad;
  }
}

TEST(Stock, FifteenSequences) { EXPECT_EQ(stock_sequences().size(), 15u); }
