#include <gtest/gtest.h>

#include "homolocal/error.hpp"
#include "homolocal/series.hpp"

using namespace homolocal;

TEST(Series, RationalExpansion) {
  auto s = TruncatedSeries::rational({1, 1}, {1, -1, -1}, 8);
  EXPECT_EQ(s.coeffs, (std::vector<std::int64_t>{1, 2, 3, 5, 8, 13, 21, 34, 55}));
  EXPECT_FALSE(s.polynomial);
  EXPECT_FALSE(s.at(9).has_value());
  EXPECT_THROW(s[9], Error);
}

TEST(Series, OnePlusTPowers) {
  EXPECT_EQ(TruncatedSeries::one_plus_t_pow(3, 5).coeffs, (std::vector<std::int64_t>{1, 3, 3, 1}));
  EXPECT_TRUE(TruncatedSeries::one_plus_t_pow(3, 5).polynomial);
  EXPECT_EQ(TruncatedSeries::one_plus_t_pow(-1, 4).coeffs,
            (std::vector<std::int64_t>{1, -1, 1, -1, 1}));
}

TEST(Series, ProductRespectsWindow) {
  auto a = TruncatedSeries::rational({1}, {1, -1}, 5);  // 1 + t + ... + t^5
  auto b = TruncatedSeries::one_plus_t_pow(1, 0);
  auto c = a * b;
  EXPECT_EQ(c.hi(), 6 - 1 + 1 - 1);
  EXPECT_EQ(c[0], 1);
  EXPECT_EQ(c[3], 2);
  auto d = a * a;
  EXPECT_EQ(d.hi(), 5);
  EXPECT_EQ(d[4], 5);
}

TEST(Series, ArithmeticAndComparison) {
  TruncatedSeries a(0, {1, 2, 3});
  TruncatedSeries b(0, {1, 3, 3, 7});
  EXPECT_FALSE(first_violation(a, b).has_value());
  EXPECT_EQ(first_violation(b, a), 1);
  EXPECT_EQ((b - a).coeffs, (std::vector<std::int64_t>{0, 1, 0}));
  EXPECT_EQ(common_hi(a, b), 2);
}

TEST(Series, ReversalAndShift) {
  TruncatedSeries p(0, {1, 2}, true);
  auto r = p.reversed(2);
  EXPECT_EQ(r[0], 0);
  EXPECT_EQ(r[1], 2);
  EXPECT_EQ(r[2], 1);
  auto q = p.shifted(3);
  EXPECT_EQ(q.lo, 3);
  EXPECT_EQ(*q.order(), 3);
  EXPECT_EQ(q[0], 0);
}

TEST(Series, DivideByOnePlusT) {
  TruncatedSeries p(0, {1, 3, 3, 1}, true);
  auto q = p.divide_one_plus_t();
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->coeffs, (std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_FALSE(TruncatedSeries(0, {1, 1, 1}, true).divide_one_plus_t().has_value());
}

TEST(Series, CertaintyCombines) {
  EXPECT_EQ(weaker(Certainty::Exact, Certainty::Guarded), Certainty::Guarded);
  EXPECT_EQ(weaker(Certainty::Partial, Certainty::Guarded), Certainty::Partial);
  EXPECT_TRUE(certified(Certainty::Guarded));
  EXPECT_FALSE(certified(Certainty::Partial));
  TruncatedSeries a(0, {1, 1}, false, Certainty::Guarded);
  TruncatedSeries b(0, {1, 1}, false, Certainty::Partial);
  EXPECT_EQ((a + b).cert(1), Certainty::Partial);
  EXPECT_FALSE((a + b).all_certified());
}
