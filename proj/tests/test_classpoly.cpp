#include <gtest/gtest.h>

#include "wplus/classpoly.hpp"
#include "wplus/supersingular.hpp"

using namespace wplus;

namespace {

ZPoly Z(std::initializer_list<long> c) { return ZPoly::from_ints(IntegerRing{}, c); }

}  // namespace

TEST(ClassPoly, ReducedForms) {
  EXPECT_EQ(class_number(3), 1);
  EXPECT_EQ(class_number(4), 1);
  EXPECT_EQ(class_number(20), 2);
  EXPECT_EQ(class_number(23), 3);
  EXPECT_EQ(class_number(67), 1);
  EXPECT_EQ(class_number(268), 3);
  EXPECT_EQ(class_number(12), 1);  // primitive only: (1,0,3)
  EXPECT_THROW(reduced_forms(5), InvalidArgument);
  // class numbers of fundamental discriminants -D for small D against a table
  const std::vector<std::pair<long, long>> table = {{7, 1}, {8, 1}, {11, 1}, {15, 2}, {19, 1}, {24, 2},
                                                    {31, 3}, {39, 4}, {47, 5}, {71, 7}, {56, 4}, {84, 4}};
  for (auto [D, h] : table) EXPECT_EQ(class_number(D), h) << D;
}

TEST(ClassPoly, KnownPolynomials) {
  EXPECT_EQ(class_poly(3).poly, Z({0, 1}));
  EXPECT_EQ(class_poly(4).poly, Z({-1728, 1}));
  EXPECT_EQ(class_poly(7).poly, Z({3375, 1}));
  EXPECT_EQ(class_poly(8).poly, Z({-8000, 1}));
  EXPECT_EQ(class_poly(67).poly, Z({147197952000L, 1}));
  const auto h15 = class_poly(15).poly;
  EXPECT_EQ(h15, Z({-121287375, 191025, 1}));
  const auto h23 = class_poly(23).poly;
  EXPECT_EQ(h23, Z({12771880859375L, -5151296875L, 3491750, 1}));
}

TEST(ClassPoly, StableUnderMorePrecision) {
  for (long D : {268L, 404L, 796L}) {
    const auto a = class_poly(D);
    const auto b = class_poly(D, 2 * a.precision_bits);
    EXPECT_EQ(a.poly, b.poly) << D;
  }
}

TEST(ClassPoly, TooLittlePrecisionIsReported) {
  EXPECT_THROW(class_poly(796, 8, 2), PrecisionExhausted);
}

TEST(ClassPoly, FixedPointsAreSupersingularLines) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 67u, 101u, 103u}) {
    const auto s = ss_polys(p);
    EXPECT_EQ(reduce_mod_p(fixed_point_poly(p), p), s.S_l * s.S_l) << p;
  }
}
