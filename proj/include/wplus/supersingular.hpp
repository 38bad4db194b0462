#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wplus/core/factor.hpp"
#include "wplus/level1.hpp"

namespace wplus {

/// S_p and its pieces: S_p = S_l S_q, S_l = x^{alpha_rho} (x - 1728)^{alpha_i} S~_l.
struct SupersingularSplit {
  std::uint32_t p = 0;
  FpPoly S_p, S_l, S_q, S_tilde, S_tilde_l;
  int alpha_rho = 0;
  int alpha_i = 0;

  int degree() const { return S_p.degree(); }
};

inline int alpha_rho_of(std::uint32_t p) { return p % 3 == 2 ? 1 : 0; }
inline int alpha_i_of(std::uint32_t p) { return p % 4 == 3 ? 1 : 0; }

inline FpPoly elliptic_factor(std::uint32_t p, int x_exp, int x1728_exp) {
  PrimeField fp(p);
  return FpPoly::x(fp).pow(static_cast<unsigned>(x_exp)) * x_minus_1728(p).pow(static_cast<unsigned>(x1728_exp));
}

/// Split from a reduction of E_{p-1}: S~_p = F~(E_{p-1}, x) mod p.
inline SupersingularSplit ss_polys(std::uint32_t p, const FpSeries& e_pm1) {
  require_supported_prime(p);
  if (e_pm1.field().p != p) throw ModulusMismatch("E_{p-1} reduced modulo " + std::to_string(e_pm1.field().p));
  if (e_pm1.weight() != static_cast<int>(p) - 1) throw WeightMismatch("expected weight " + std::to_string(p - 1));
  SupersingularSplit s;
  s.p = p;
  s.alpha_rho = alpha_rho_of(p);
  s.alpha_i = alpha_i_of(p);
  s.S_tilde = divisor_polynomial(e_pm1);
  const FpPoly ell = elliptic_factor(p, s.alpha_rho, s.alpha_i);
  s.S_p = ell * s.S_tilde;
  s.S_l = split_linear_part(s.S_p);
  s.S_q = exact_div(s.S_p, s.S_l, "S_q");
  for (const auto& [f, e] : factor(s.S_q).factors)
    if (f.degree() != 2)
      throw SplitDegreeMismatch("S_q has an irreducible factor of degree " + std::to_string(f.degree()));
  s.S_tilde_l = exact_div(s.S_l, ell, "S~_l");
  return s;
}

inline SupersingularSplit ss_polys(std::uint32_t p) {
  require_supported_prime(p);
  const int k = static_cast<int>(p) - 1;
  return ss_polys(p, eisenstein(PrimeField(p), k, m_of(k) + 10));
}

// ---------------------------------------------------------------------------
// Independent oracle
// ---------------------------------------------------------------------------

/// Sum over x in F_p of the quadratic character of x^3 + a x + b; #E(F_p) = p + 1 + this.
inline long character_sum(std::uint32_t p, std::uint64_t a, std::uint64_t b) {
  std::vector<int> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y < p; ++y) chi[y * y % p] = 1;
  long s = 0;
  for (std::uint64_t x = 0; x < p; ++x) s += chi[(x * x % p * x + a * x + b) % p];
  return s;
}

/// True when the curve with invariant j over F_p has p + 1 points.
inline bool is_supersingular_j(std::uint32_t p, std::uint32_t j) {
  const std::uint32_t j1728 = 1728 % p;
  if (j == 0) return character_sum(p, 0, 1) == 0;
  if (j == j1728) return character_sum(p, 1, 0) == 0;
  PrimeField F(p);
  const Zp k = F.from_int(j) * (F.from_int(1728) - F.from_int(j)).inverse();
  return character_sum(p, (F.from_int(3) * k).value(), (F.from_int(2) * k).value()) == 0;
}

/// Supersingular polynomial from the Legendre-form Hasse invariant, eliminated
/// against j(lambda), with j = 0 and 1728 fixed by point counting.
inline FpPoly ss_oracle(std::uint32_t p, std::uint32_t bound = 103) {
  require_supported_prime(p);
  if (p > bound) throw BoundExceeded("oracle limited to p <= " + std::to_string(bound));
  PrimeField F(p);
  const unsigned m = (p - 1) / 2;
  std::vector<Zp> hc;
  Integer binom;
  for (unsigned i = 0; i <= m; ++i) {
    mpz_bin_uiui(binom.get_mpz_t(), m, i);
    hc.push_back(F.from_integer(binom * binom));
  }
  const FpPoly hasse(F, hc);
  const FpPoly lam = FpPoly::x(F);
  const FpPoly one = FpPoly::one(F);
  const FpPoly quad = lam * (lam - one);
  const FpPoly lhs = quad * quad;  // lambda^2 (1 - lambda)^2
  const FpPoly rhs = F.from_int(256) * (lam * lam - lam + one).pow(3);

  // R(j) = Res_lambda(H, j lhs - rhs) has degree <= m in j.
  std::vector<Zp> xs, ys;
  for (unsigned t = 0; t <= m; ++t) {
    const Zp jv = F.from_int(t);
    xs.push_back(jv);
    ys.push_back(resultant(hasse, jv * lhs - rhs));
  }
  FpPoly R(F);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    FpPoly basis = FpPoly::one(F);
    Zp denom = F.one();
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k == i) continue;
      basis *= FpPoly::linear(F, xs[k]);
      denom *= xs[i] - xs[k];
    }
    R += (ys[i] * denom.inverse()) * basis;
  }
  if (R.is_zero()) throw InternalError("vanishing elimination resultant");
  FpPoly rad = radical(R.monic());
  const FpPoly x = FpPoly::x(F), x1728 = x_minus_1728(p);
  while (x.divides(rad)) rad = rad / x;
  while (x1728.divides(rad)) rad = rad / x1728;
  if (is_supersingular_j(p, 0)) rad *= x;
  if (is_supersingular_j(p, 1728 % p)) rad *= x1728;
  return rad;
}

/// Roots in F_p found by point counting alone.
inline FpPoly ss_linear_by_counting(std::uint32_t p) {
  PrimeField F(p);
  FpPoly r = FpPoly::one(F);
  for (std::uint32_t j = 0; j < p; ++j)
    if (is_supersingular_j(p, j)) r *= FpPoly::linear(F, F.from_int(j));
  return r;
}

}  // namespace wplus
