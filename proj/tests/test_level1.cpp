#include <gtest/gtest.h>

#include <random>
#include <set>

#include "wplus/level1.hpp"

using namespace wplus;

namespace {

RationalField Q;

// q * prod (1 - q^n)^24 via the pentagonal number theorem.
QExpansion delta_eta(int prec) {
  std::vector<Rat> eta(static_cast<std::size_t>(prec), Rat(0));
  for (long k = -prec; k <= prec; ++k) {
    long e = k * (3 * k - 1) / 2;
    if (e >= 0 && e < prec) eta[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
  }
  QExpansion s(Q, 0, eta, prec);
  return s.pow(24).shifted(1).truncated(prec).set_weight(12);
}

}  // namespace

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(bernoulli(1), Rat(-1, 2));
  EXPECT_EQ(bernoulli(4), Rat(-1, 30));
  EXPECT_EQ(bernoulli(6), Rat(1, 42));
  EXPECT_EQ(bernoulli(12), Rat(-691, 2730));
  EXPECT_EQ(bernoulli(7), 0);
}

TEST(Eisenstein, FirstCoefficients) {
  auto e4 = eisenstein(4, 5), e6 = eisenstein(6, 5);
  EXPECT_EQ(e4.coeff(0), 1);
  EXPECT_EQ(e4.coeff(1), 240);
  EXPECT_EQ(e4.coeff(2), 2160);
  EXPECT_EQ(e6.coeff(1), -504);
  EXPECT_EQ(eisenstein(12, 3).coeff(0), 1);
  EXPECT_EQ(eisenstein(12, 3).coeff(1), Rat(65520, 691));
}

TEST(Delta, PrintedCoefficientsAndEtaProduct) {
  auto d = delta(Q, 30);
  EXPECT_EQ(d.coeff(1), 1);
  EXPECT_EQ(d.coeff(2), -24);
  EXPECT_EQ(d.coeff(3), 252);
  EXPECT_EQ(d.coeff(4), -1472);
  EXPECT_TRUE(d.agrees_with(delta_eta(30)));
}

TEST(JFunction, PrintedCoefficientsAndDefiningIdentity) {
  auto j = j_function(Q, 10);
  EXPECT_EQ(j.valuation(), -1);
  EXPECT_EQ(j.precision(), 10);
  EXPECT_EQ(j.coeff(-1), 1);
  EXPECT_EQ(j.coeff(0), 744);
  EXPECT_EQ(j.coeff(1), 196884);
  auto e4 = eisenstein(4, 12);
  EXPECT_TRUE((j * delta(Q, 12)).agrees_with(e4 * e4 * e4));
}

TEST(EtildeSpec, WeightDecomposition) {
  for (int k = 0; k <= 200; k += 2) {
    if (k == 2) continue;
    auto s = etilde_spec(k);
    EXPECT_EQ(k, 12 * s.m + 4 * s.a + 6 * s.b) << k;
    EXPECT_LE(s.a, 2);
    EXPECT_LE(s.b, 1);
  }
  EXPECT_EQ(m_of(14), 0);
  EXPECT_EQ(m_of(26), 1);
  EXPECT_EQ(m_of(68), 5);
}

TEST(DivisorPolynomial, SimpleForms) {
  auto d = delta(Q, 10);
  EXPECT_EQ(divisor_polynomial(d), QPoly::one(Q));
  auto e4 = eisenstein(4, 10);
  EXPECT_EQ(divisor_polynomial(e4 * e4 * e4), QPoly::x(Q));
  EXPECT_EQ(divisor_polynomial(eisenstein(6, 10) * eisenstein(6, 10)), QPoly::from_ints(Q, {-1728, 1}));
}

TEST(DivisorPolynomial, DegreeIsMOfK) {
  for (int k : {12, 16, 24, 36, 50}) {
    auto e = eisenstein(k, m_of(k) + 6);
    EXPECT_EQ(divisor_polynomial(e).degree(), m_of(k)) << k;
  }
}

TEST(DivisorPolynomial, RejectsNonForms) {
  auto d = delta(Q, 10);
  auto bogus = d + series_from_ints(Q, 5, {1}, 10, 12);
  EXPECT_THROW(divisor_polynomial(bogus), NonPolynomialQuotient);
  EXPECT_THROW(divisor_polynomial(d.truncated(2)), PrecisionTooSmall);
  EXPECT_THROW(divisor_polynomial(Rat(2) * d), InvalidArgument);
}

TEST(DivisorPolynomial, E66Mod67IsSupersingularWithout1728) {
  PrimeField F(67);
  auto e = eisenstein(F, 66, 12);
  auto want = FpPoly::from_ints(F, {1, 1}) * FpPoly::from_ints(F, {45, 8, 1}) * FpPoly::from_ints(F, {24, 44, 1});
  EXPECT_EQ(divisor_polynomial(e), want);
}

TEST(MillerBasis, Weight12And68) {
  auto b = miller_basis(Q, 12, 8);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_TRUE(b[1].agrees_with(delta(Q, 8)));
  EXPECT_EQ(b[0].coeff(0), 1);
  EXPECT_EQ(b[0].coeff(1), 0);
  EXPECT_EQ(miller_basis(Q, 68, 10).size(), 6u);
  EXPECT_EQ(dim_modular_forms(68), 6);
  EXPECT_EQ(dim_modular_forms(14), 1);
  EXPECT_EQ(dim_modular_forms(26), 2);
}

TEST(MillerBasis, IntegralEchelonAndRoundTrip) {
  for (int k = 4; k <= 200; k += 2) {
    if (k == 2) continue;
    const int n = m_of(k);
    const int prec = n + 8;
    auto basis = miller_basis(Q, k, prec);
    ASSERT_EQ(static_cast<int>(basis.size()), dim_modular_forms(k));
    for (int i = 0; i <= n; ++i) {
      const auto& h = basis[static_cast<std::size_t>(i)];
      for (int e = 0; e < prec; ++e) EXPECT_EQ(h.coeff(e).get_den(), 1) << k;
      for (int e = 0; e <= n; ++e) EXPECT_EQ(h.coeff(e), e == i ? 1 : 0);
      if (k % 20 == 0 || k <= 30) {
        auto poly = divisor_polynomial(h);
        EXPECT_EQ(poly.degree(), n - i);
        EXPECT_TRUE(form_from_divisor_polynomial(poly, k, prec).agrees_with(h)) << k << " " << i;
      }
    }
  }
}

TEST(CpFactor, TableEntries) {
  PrimeField F(11);
  EXPECT_EQ(cp_factor(2, 11), FpPoly::x(F) * x_minus_1728(11));
  PrimeField F5(5);
  EXPECT_EQ(cp_factor(8, 5), FpPoly::x(F5));
  EXPECT_EQ(cp_factor(12, 13), FpPoly::one(PrimeField(13)));
  EXPECT_EQ(cp_factor(6, 7), x_minus_1728(7));
}

TEST(GpPoly, ClosedFormCases) {
  auto g67 = gp_poly(2, 67);
  EXPECT_EQ(g67.poly, FpPoly::from_ints(PrimeField(67), {14, 1}));
  for (int g = 2; g <= 6; ++g) EXPECT_EQ(gp_poly(g, 13).poly, FpPoly::one(PrimeField(13)));
  auto g11 = gp_poly(2, 11);
  EXPECT_EQ(g11.poly, FpPoly::x(PrimeField(11)) * x_minus_1728(11));
  for (std::uint32_t p : {13u, 17u, 19u, 23u})
    for (int g = 2; g <= 50; ++g) EXPECT_NO_THROW(gp_poly(g, p));
}

TEST(SquareFactor, ExplicitCases) {
  auto d = delta(Q, 12);
  auto e4 = eisenstein(4, 12), e6 = eisenstein(6, 12);
  EXPECT_TRUE(square_divisor_relation(d).holds);
  auto c6 = square_divisor_relation(e6 * d);
  EXPECT_TRUE(c6.holds);
  EXPECT_EQ(c6.squared, QPoly::from_ints(Q, {-1728, 1}) * c6.single * c6.single);
  EXPECT_TRUE(square_divisor_relation(e4 * d).holds);
}

TEST(SquareFactor, RandomMonomials) {
  std::mt19937_64 rng(2024);
  std::set<int> residues;
  for (int t = 0; t < 24; ++t) {
    int i = int(rng() % 4), a = int(rng() % 5), b = int(rng() % 3);
    if (i + a + b == 0) a = 1;
    const int k = 12 * i + 4 * a + 6 * b;
    if (k == 2) continue;
    const int prec = m_of(2 * k) + 6;
    auto f = delta(Q, prec).pow(unsigned(i)) * eisenstein(4, prec).pow(unsigned(a)) *
             eisenstein(6, prec).pow(unsigned(b));
    f = f.truncated(prec + i);
    residues.insert(k % 12);
    EXPECT_TRUE(square_divisor_relation(f).holds) << i << a << b;
  }
  EXPECT_GE(residues.size(), 4u);
}
