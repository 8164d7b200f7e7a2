#include "tmoebius/core/divisors.hpp"
#include "tmoebius/core/half_int.hpp"
#include "tmoebius/core/laurent.hpp"
#include "tmoebius/core/linear_algebra.hpp"
#include "tmoebius/core/partition.hpp"
#include "tmoebius/core/truncated_series.hpp"

#include <gtest/gtest.h>

using namespace tmoebius;

TEST(HalfInt, ParsesFractionsAndIntegers) {
  EXPECT_EQ(HalfInt::parse("3/2").doubled(), 3);
  EXPECT_EQ(HalfInt::parse("2").doubled(), 4);
  EXPECT_EQ(HalfInt::parse("4/2").doubled(), 4);
  EXPECT_EQ(HalfInt::parse("3/2").to_string(), "3/2");
  EXPECT_EQ(HalfInt::parse("1").to_string(), "1");
}

TEST(HalfInt, RejectsDecimalsAndThirds) {
  EXPECT_ANY_THROW(HalfInt::parse("1.5"));
  EXPECT_ANY_THROW(HalfInt::parse("1/3"));
  EXPECT_ANY_THROW(HalfInt::parse("x"));
}

TEST(Divisors, SmallValues) {
  EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(sigma1(1), 1);
  EXPECT_EQ(sigma1(6), 12);
  EXPECT_EQ(sigma1(28), 56);
  EXPECT_THROW(sigma1(0), std::domain_error);
}

TEST(Divisors, TildeSigmaIsSigmaMinusHalfArgument) {
  // Frozen: 1, 2, 4, 4, 6, 8, 8, 8.
  const std::vector<std::int64_t> expected{1, 2, 4, 4, 6, 8, 8, 8};
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(sigma1_tilde(n), expected[n - 1]) << n;
  for (int n = 1; n <= 300; ++n) {
    std::int64_t want = sigma1(n) - (n % 2 == 0 ? sigma1(n / 2) : 0);
    EXPECT_EQ(sigma1_tilde(n), want) << n;
  }
}

TEST(PartitionTest, ParseSortsAndRoundTrips) {
  auto p = Partition::parse("1,2,1");
  EXPECT_EQ(p.to_list(), "2,1,1");
  EXPECT_EQ(p.norm(), 4);
  EXPECT_EQ(p.length(), 3);
  EXPECT_EQ(p.symmetry_order(), 2);
  EXPECT_EQ(Partition::parse("").length(), 0);
  EXPECT_ANY_THROW(Partition::parse("1,,2"));
  EXPECT_ANY_THROW(Partition::parse("0"));
  EXPECT_ANY_THROW(Partition::parse("1,"));
}

TEST(PartitionTest, CountsMatchPartitionNumbers) {
  const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22};
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(partitions_of(n).size(), p[n]) << n;
}

TEST(PartitionTest, SubMultisets) {
  auto p = Partition::parse("2,1,1");
  auto subs = p.sub_multisets();
  EXPECT_EQ(subs.size(), 6u);
  for (const auto& s : subs) EXPECT_EQ(s + p.minus(s), p);
  EXPECT_THROW(p.minus(Partition::parse("3")), std::invalid_argument);
}

TEST(Laurent, QAnalogSymmetricAndSpecializes) {
  for (int m = 1; m <= 7; ++m) {
    auto q = q_analog(m);
    EXPECT_TRUE(q.is_palindromic());
    EXPECT_EQ(q.evaluate_at_one(), m);
  }
  // [3]_q = q + 1 + q^-1.
  auto q3 = q_analog(3);
  EXPECT_EQ(q3.coefficient(2), 1);
  EXPECT_EQ(q3.coefficient(0), 1);
  EXPECT_EQ(q3.coefficient(-2), 1);
  // [2]_q = q^(1/2) + q^(-1/2).
  EXPECT_EQ(q_analog(2).to_string(), "q^(1/2) + q^(-1/2)");
}

TEST(Series, ProductAndSubstitution) {
  TruncatedSeries<Rational> s(5);
  s.set(0, 1);
  s.set(1, 1);
  auto sq = s * s;
  EXPECT_EQ(sq[0], 1);
  EXPECT_EQ(sq[1], 2);
  EXPECT_EQ(sq[2], 1);
  EXPECT_EQ(sq[3], 0);
  auto sub = s.substitute_power(2);
  EXPECT_EQ(sub[2], 1);
  EXPECT_EQ(sub[1], 0);
}

TEST(Series, EisensteinCoefficients) {
  auto g = eisenstein_G2(12);
  EXPECT_EQ(g[0], 0);
  EXPECT_EQ(g[12], 28);
  auto h = series_H(12);
  EXPECT_EQ(h[12], 28 - 12);
  EXPECT_EQ((series_H0(12) + series_H1(12)), h);
  EXPECT_EQ(series_H0(12)[3], 0);
  EXPECT_EQ(series_H1(12)[3], 4);
}

TEST(Series, DerivativeIsEulerOperator) {
  auto g = eisenstein_G2(10);
  auto d = g.derivative(2);
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(d[n], Rational(n * n * sigma1(n)));
}

TEST(LinearAlgebra, DeterminantRankSmith) {
  IntMatrix a{{2, 1}, {1, 1}};
  EXPECT_EQ(determinant(a), 1);
  IntMatrix b{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  EXPECT_EQ(abs(determinant(b)), 2);
  EXPECT_EQ(smith_invariants(b), (std::vector<Integer>{1, 1, 2}));
  IntMatrix c{{1, 2}, {2, 4}};
  EXPECT_EQ(rank(c), 1u);
  EXPECT_EQ(determinant(c), 0);
}
