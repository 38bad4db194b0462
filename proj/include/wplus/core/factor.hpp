#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "wplus/core/poly.hpp"

namespace wplus {

struct Factorization {
  Zp unit;
  /// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
  std::vector<std::pair<FpPoly, int>> factors;

  FpPoly expand() const {
    FpPoly r = FpPoly::constant(PrimeField(unit.modulus()), unit);
    for (const auto& [f, e] : factors) r *= f.pow(static_cast<unsigned>(e));
    return r;
  }
};

namespace detail {

// g(x) with g(x)^p = f(x); only valid when f' = 0.
inline FpPoly pth_root(const FpPoly& f) {
  const auto p = f.field().p;
  std::vector<Zp> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i));
  return FpPoly(f.field(), std::move(c));
}

inline bool poly_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i).value() != b.coeff(i).value()) return a.coeff(i).value() < b.coeff(i).value();
  return false;
}

}  // namespace detail

/// Squarefree decomposition of a monic polynomial: f = prod w_i^{i}.
inline std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpPoly& f) {
  if (f.is_zero()) throw InvalidArgument("squarefree decomposition of 0");
  std::vector<std::pair<FpPoly, int>> out;
  const auto field = f.field();
  const FpPoly one = FpPoly::one(field);
  FpPoly mf = f.monic();
  if (mf.degree() <= 0) return out;

  FpPoly c = gcd(mf, mf.derivative());
  FpPoly w = mf / c;
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    const int p = static_cast<int>(field.p);
    for (auto& [g, e] : squarefree_decomposition(detail::pth_root(c))) out.emplace_back(g, e * p);
  }
  // merge equal multiplicities coming from the recursive branch
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<std::pair<FpPoly, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().second == pr.second)
      merged.back().first *= pr.first;
    else
      merged.push_back(std::move(pr));
  }
  return merged;
}

/// Distinct-degree factorization of a monic squarefree polynomial.
inline std::vector<std::pair<FpPoly, int>> distinct_degree_factorization(FpPoly f) {
  std::vector<std::pair<FpPoly, int>> out;
  const auto field = f.field();
  const FpPoly x = FpPoly::x(field);
  FpPoly h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, field.p, f);
    FpPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

/// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles of degree d.
inline std::vector<FpPoly> equal_degree_factorization(const FpPoly& f, int d, std::mt19937_64& rng) {
  if (f.degree() == d) return {f};
  const auto field = f.field();
  const auto p = field.p;
  if (p == 2) throw InvalidArgument("equal-degree splitting needs odd p");
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  for (;;) {
    std::vector<Zp> c(static_cast<std::size_t>(f.degree()));
    for (auto& v : c) v = Zp(dist(rng), p);
    FpPoly a(field, std::move(c));
    if (a.degree() <= 0) continue;
    FpPoly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto left = equal_degree_factorization(g, d, rng);
      auto right = equal_degree_factorization(f / g, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    FpPoly b = powmod(a, e, f) - FpPoly::one(field);
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto left = equal_degree_factorization(g, d, rng);
      auto right = equal_degree_factorization(f / g, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

/// Complete factorization over F_p: squarefree, distinct-degree, equal-degree.
inline Factorization factor(const FpPoly& f, std::uint64_t seed = 0x5eed) {
  if (f.is_zero()) throw InvalidArgument("factorization of the zero polynomial");
  Factorization out{f.lead(), {}};
  std::mt19937_64 rng(seed);
  for (const auto& [w, mult] : squarefree_decomposition(f)) {
    for (const auto& [g, d] : distinct_degree_factorization(w)) {
      for (auto& h : equal_degree_factorization(g, d, rng)) out.factors.emplace_back(h.monic(), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return detail::poly_less(a.first, b.first); });
  return out;
}

/// Monic square root of a monic polynomial; OddMultiplicity if none exists.
inline FpPoly poly_sqrt(const FpPoly& f) {
  if (!f.is_monic()) throw InvalidArgument("poly_sqrt expects a monic polynomial");
  FpPoly r = FpPoly::one(f.field());
  for (const auto& [w, mult] : squarefree_decomposition(f)) {
    if (mult % 2 != 0)
      throw OddMultiplicity("factor " + w.to_string() + " has multiplicity " + std::to_string(mult));
    r *= w.pow(static_cast<unsigned>(mult / 2));
  }
  return r;
}

/// Product of the distinct irreducible factors.
inline FpPoly radical(const FpPoly& f) {
  FpPoly r = FpPoly::one(f.field());
  for (const auto& [w, mult] : squarefree_decomposition(f)) r *= w;
  return r;
}

inline bool is_squarefree(const FpPoly& f) {
  auto sq = squarefree_decomposition(f);
  return sq.empty() || (sq.size() == 1 && sq.front().second == 1);
}

/// Roots in F_p as the monic gcd with x^p - x.
inline FpPoly split_linear_part(const FpPoly& f) {
  const auto field = f.field();
  const FpPoly x = FpPoly::x(field);
  return gcd(powmod(x, field.p, f) - x, f);
}

}  // namespace wplus
