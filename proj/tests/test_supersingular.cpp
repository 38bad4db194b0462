#include <gtest/gtest.h>

#include "wplus/supersingular.hpp"

using namespace wplus;

namespace {

FpPoly P(std::uint32_t p, std::initializer_list<long> c) { return FpPoly::from_ints(PrimeField(p), c); }

}  // namespace

TEST(Supersingular, SmallPrimes) {
  EXPECT_EQ(ss_polys(5).S_p, P(5, {0, 1}));
  EXPECT_EQ(ss_polys(7).S_p, P(7, {1, 1}));
  EXPECT_EQ(ss_polys(11).S_p, P(11, {0, -1, 1}));
  EXPECT_EQ(ss_polys(13).S_p, P(13, {-5, 1}));
}

TEST(Supersingular, Split67) {
  const auto s = ss_polys(67);
  EXPECT_EQ(s.alpha_rho, 0);
  EXPECT_EQ(s.alpha_i, 1);
  EXPECT_EQ(s.S_l, P(67, {1, 1}) * P(67, {14, 1}));
  EXPECT_EQ(s.S_tilde_l, P(67, {1, 1}));
  EXPECT_EQ(s.S_q, P(67, {45, 8, 1}) * P(67, {24, 44, 1}));
}

TEST(Supersingular, OracleAgrees) {
  for (std::uint32_t p = 5; p <= 103; ++p) {
    if (!is_prime(p)) continue;
    const auto s = ss_polys(p);
    EXPECT_EQ(s.S_p, ss_oracle(p)) << p;
    EXPECT_EQ(s.S_l, ss_linear_by_counting(p)) << p;
    const int extra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
    EXPECT_EQ(s.degree(), static_cast<int>(p / 12) + extra[p % 12]) << p;
  }
}

TEST(Supersingular, OracleBound) {
  EXPECT_THROW(ss_oracle(107), BoundExceeded);
  EXPECT_NO_THROW(ss_oracle(107, 200));
  EXPECT_THROW(ss_polys(9), InvalidArgument);
}

TEST(Supersingular, PointCounting) {
  EXPECT_EQ(character_sum(11, 0, 1), 0);
  EXPECT_TRUE(is_supersingular_j(11, 0));
  EXPECT_TRUE(is_supersingular_j(11, 1));
  EXPECT_FALSE(is_supersingular_j(13, 0));
}
