#include <gtest/gtest.h>

#include <cmath>

#include "nullswitch/complexity.hpp"

using namespace nullswitch::complexity;

namespace {

// Worst-case iterative-search IFFT count summed term by term: sum_k kR-(k-1).
long long ms_by_summation(int p, int r) {
  long long total = 0;
  for (int k = 1; k <= p; ++k) total += static_cast<long long>(k) * r - (k - 1);
  return total;
}

}  // namespace

TEST(Complexity, QOf) {
  EXPECT_EQ(q_of(64), 384);
  EXPECT_EQ(q_of(2), 2);
  EXPECT_EQ(q_of(1024), 10240);
  EXPECT_THROW(q_of(48), nullswitch::ConfigError);
}

TEST(Complexity, MsKnownValues) {
  EXPECT_EQ(ms_of(2, 26), 77);
  EXPECT_EQ(ms_of(2, 26), 26 + (2 * 26 - 1));
  EXPECT_EQ(ms_of(1, 1), 1);
  EXPECT_EQ(ms_of(4, 13), 13 + 25 + 37 + 49);
  EXPECT_EQ(ms_of(4, 13), 124);
  EXPECT_THROW(ms_of(0, 3), nullswitch::ConfigError);
}

TEST(Complexity, MsMatchesSummation) {
  for (int p = 1; p <= 20; ++p) {
    for (int r = 1; r <= 100; ++r) EXPECT_EQ(ms_of(p, r), ms_by_summation(p, r)) << p << "," << r;
  }
}

TEST(Complexity, PublishedCounts) {
  const auto orig = count_ops(Scheme::original, 64, 52, 2);
  EXPECT_EQ(orig.ifft_count, 1326);
  EXPECT_EQ(orig.additions, Rational(847314));
  EXPECT_EQ(orig.multiplications, Rational(595374));

  const auto prop = count_ops(Scheme::proposed, 64, 52, 2);
  EXPECT_EQ(prop.ifft_count, 26);
  EXPECT_EQ(round_half_up(prop.additions), 16640);
  EXPECT_EQ(round_half_up(prop.multiplications), 11726);

  EXPECT_NEAR(reduction_percent(orig.additions, prop.additions), 98.04, 0.005);
  EXPECT_NEAR(reduction_percent(orig.multiplications, prop.multiplications), 98.03, 0.005);
  EXPECT_NEAR(to_double(orig.additions / prop.additions), 50.92, 0.005);

  const auto ahmed = count_ops(Scheme::ahmed, 64, 52, 2);
  EXPECT_EQ(ahmed.ifft_count, 77);
  EXPECT_EQ(ahmed.additions, Rational(77 * 639));
  EXPECT_EQ(ahmed.multiplications, Rational(77 * 449));
}

TEST(Complexity, DetectionTermKeptExact) {
  // P=4, R=13: (52 - 1/2 + 1) / 8 = 105/16
  const auto prop = count_ops(Scheme::proposed, 64, 52, 4);
  EXPECT_EQ(prop.additions, Rational(13 * 639) + Rational(105, 16));
  EXPECT_EQ(round_half_up(prop.additions), 13 * 639 + 7);
  EXPECT_EQ(prop.multiplications, Rational(13 * 449 + 52));
}

TEST(Complexity, RoundHalfUp) {
  EXPECT_EQ(round_half_up(Rational(33280, 2)), 16640);
  EXPECT_EQ(round_half_up(Rational(5, 2)), 3);
  EXPECT_EQ(round_half_up(Rational(-5, 2)), -2);
  EXPECT_EQ(round_half_up(Rational(7, 3)), 2);
}

TEST(Complexity, SideInformationBits) {
  EXPECT_EQ(si_bits(64, 2, SiLayout::per_index), 12);
  EXPECT_EQ(si_bits(64, 4, SiLayout::equidistant), 6);
  EXPECT_EQ(si_bits(2, 1, SiLayout::per_index), 1);
  const auto reports = compare_schemes(64, 52, 4);
  EXPECT_EQ(reports[0].si_bits_nonblind, 24);
  EXPECT_EQ(reports[2].si_bits_nonblind, 6);
  for (const auto& r : reports) EXPECT_EQ(r.si_bits_blind, 0);
}

TEST(Complexity, RejectsInvalid) {
  EXPECT_THROW(count_ops(Scheme::proposed, 64, 52, 3), nullswitch::ConfigError);
  EXPECT_THROW(count_ops(Scheme::ahmed, 64, 52, 8), nullswitch::ConfigError);
  EXPECT_THROW(count_ops(Scheme::original, 60, 52, 2), nullswitch::ConfigError);
  EXPECT_THROW(count_ops(Scheme::original, 64, 64, 2), nullswitch::ConfigError);
  EXPECT_NO_THROW(count_ops(Scheme::original, 64, 52, 3));
}

// Ordering original > ahmed > proposed whenever C(Nd,P) > M_s > R.
TEST(Complexity, OrderingSweep) {
  int checked = 0;
  for (int n : {16, 32, 64, 128, 256}) {
    for (int nd = 2; nd < n; nd += 2) {
      for (int p = 2; p <= std::min(nd, 20); p += 2) {
        if (nd % p) continue;
        const auto o = count_ops(Scheme::original, n, nd, p);
        const auto a = count_ops(Scheme::ahmed, n, nd, p);
        const auto r = count_ops(Scheme::proposed, n, nd, p);
        if (!(o.ifft_count > a.ifft_count && a.ifft_count > r.ifft_count)) continue;
        EXPECT_GT(o.additions, a.additions);
        EXPECT_GT(a.additions, r.additions);
        EXPECT_GT(o.multiplications, a.multiplications);
        EXPECT_GT(a.multiplications, r.multiplications);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}
