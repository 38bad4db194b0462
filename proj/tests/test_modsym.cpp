#include <gtest/gtest.h>

#include "wplus/modsym.hpp"

using namespace wplus;

namespace {
RationalField Q;

std::vector<long> expansion(const QExpansion& f, int upto) {
  std::vector<long> out;
  for (int n = 1; n <= upto; ++n) {
    EXPECT_EQ(f.coeff(n).get_den(), 1);
    out.push_back(f.coeff(n).get_num().get_si());
  }
  return out;
}
}  // namespace

TEST(ModSym, GenusAgainstFormula) {
  EXPECT_EQ(genus_x0(11), 1);
  EXPECT_EQ(genus_x0(23), 2);
  EXPECT_EQ(genus_x0(67), 5);
  for (std::uint32_t p : {5u, 7u, 11u, 13u, 23u, 37u, 67u, 101u, 131u}) {
    auto plus = build_space(p, 1);
    EXPECT_EQ(plus.g_p, genus_x0(p)) << p;
    EXPECT_EQ(plus.free_dim, static_cast<std::size_t>(genus_x0(p) + 1)) << p;
    auto full = build_space(p, 0);
    EXPECT_EQ(full.cuspidal.rows(), static_cast<std::size_t>(2 * genus_x0(p))) << p;
  }
}

TEST(ModSym, BoundaryKillsCuspidal) {
  auto S = build_space(67, 0);
  auto prod = S.cuspidal * S.boundary;
  EXPECT_TRUE(prod == QMatrix(Q, prod.rows(), 2));
}

TEST(Hecke, EllipticCurve11a) {
  auto S = build_space(11, 1);
  SubspaceHecke H(S, Subspace::from_rows(S.cuspidal));
  ASSERT_EQ(H.dim(), 1u);
  EXPECT_EQ(H.prime(2)(0, 0), -2);
  EXPECT_EQ(H.prime(3)(0, 0), -1);
  EXPECT_EQ(H.prime(5)(0, 0), 1);
  EXPECT_EQ(H.prime(7)(0, 0), -2);
  EXPECT_EQ(H.prime(11)(0, 0), 1);
}

TEST(Hecke, CommutativityAndAtkinLehner) {
  for (std::uint32_t p : {37u, 67u, 97u}) {
    auto S = build_space(p, 0);
    SubspaceHecke H(S, Subspace::from_rows(S.cuspidal));
    const auto& t2 = H.prime(2);
    const auto& t3 = H.prime(3);
    EXPECT_TRUE(t2 * t3 == t3 * t2) << p;
    auto W = atkin_lehner(S);
    EXPECT_TRUE(W * W == QMatrix::identity(Q, S.free_dim)) << p;
    for (std::uint32_t l : {2u, 3u, 5u}) {
      auto T = hecke_free(S, l);
      EXPECT_TRUE(W * T == T * W) << p << " " << l;
    }
  }
}

TEST(AtkinLehner, PlusDimensions) {
  EXPECT_EQ(atkin_lehner_plus(build_space(67)).dim(), 2u);
  EXPECT_EQ(atkin_lehner_plus(build_space(23)).dim(), 0u);
  EXPECT_EQ(atkin_lehner_plus(build_space(37)).dim(), 1u);
}

TEST(AtkinLehner, UpEqualsMinusOneOnPlusSpace) {
  for (std::uint32_t p : {37u, 67u, 103u}) {
    auto d = plus_data(p);
    const auto& tp = d.hecke->prime(p);
    EXPECT_TRUE(tp == Rat(-1) * QMatrix::identity(Q, d.hecke->dim())) << p;
  }
}

TEST(Hecke, HasseBound) {
  for (std::uint32_t p : {67u, 109u, 163u}) {
    auto d = plus_data(p);
    for (std::uint32_t l : {2u, 3u, 5u, 7u, 11u}) EXPECT_TRUE(hasse_bound_holds(d.hecke->prime(l), l)) << p << " " << l;
  }
  auto bad = QMatrix::from_rows(Q, {{Rat(3)}}, 1);
  EXPECT_FALSE(hasse_bound_holds(bad, 2));
}

TEST(GoodBasis, Example67) {
  auto b = good_basis(67, 20);
  ASSERT_EQ(b.g, 2);
  EXPECT_EQ(b.pivots, (std::vector<int>{1, 2}));
  EXPECT_TRUE(b.p_integral);
  EXPECT_EQ(expansion(b.forms[0], 8), (std::vector<long>{1, 0, -3, -3, -3, 1, 4, 3}));
  EXPECT_EQ(expansion(b.forms[1], 8), (std::vector<long>{0, 1, -1, -3, 0, 0, 3, 4}));
  EXPECT_EQ(wt_infinity(b), 0);
  EXPECT_TRUE(b.sturm_ok());
  EXPECT_EQ(b.g_p, 5);
}

TEST(GoodBasis, SmallGenus) {
  EXPECT_EQ(good_basis(23, 10).g, 0);
  auto b = good_basis(37, 10);
  ASSERT_EQ(b.g, 1);
  EXPECT_EQ(b.pivots, (std::vector<int>{1}));
  EXPECT_THROW(good_basis(67, 5), PrecisionTooSmall);
}

TEST(GoodBasis, EchelonAndSturmOverRange) {
  for (std::uint32_t p = 67; p <= 200; ++p) {
    if (!is_prime(p)) continue;
    auto b = good_basis(p, min_basis_precision(p) + 4);
    for (std::size_t i = 0; i < b.forms.size(); ++i)
      for (std::size_t j = 0; j < b.forms.size(); ++j)
        EXPECT_EQ(b.forms[i].coeff(b.pivots[j]), i == j ? 1 : 0);
    for (std::size_t i = 1; i < b.pivots.size(); ++i) EXPECT_LT(b.pivots[i - 1], b.pivots[i]);
    EXPECT_TRUE(b.sturm_ok()) << p;
    int total = 0;
    for (const auto& blk : b.galois_blocks) total += blk.dim;
    EXPECT_EQ(total, b.g);
  }
}
