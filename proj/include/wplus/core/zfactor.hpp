#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wplus/core/factor.hpp"
#include "wplus/core/poly.hpp"

// Factorization of monic squarefree integer polynomials (Zassenhaus): factor
// modulo a small prime, Hensel-lift, recombine. Used to split characteristic
// polynomials of Hecke operators into Q-irreducible pieces.

namespace wplus {

namespace zdetail {

using Coeffs = std::vector<Integer>;

inline Coeffs trim(Coeffs c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline Coeffs mod(Coeffs c, const Integer& m) {
  for (auto& v : c) {
    v %= m;
    if (v < 0) v += m;
  }
  return trim(std::move(c));
}

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return trim(std::move(r));
}

inline Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return trim(std::move(r));
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trim(std::move(r));
}

// Division by a monic polynomial modulo m.
inline std::pair<Coeffs, Coeffs> divmod_monic(Coeffs a, const Coeffs& h, const Integer& m) {
  a = mod(std::move(a), m);
  if (a.size() < h.size()) return {{}, a};
  const std::size_t dh = h.size() - 1;
  Coeffs q(a.size() - dh, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer c = a[k + dh] % m;
    if (c < 0) c += m;
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dh; ++j) a[k + j] -= c * h[j];
  }
  a.resize(dh);
  return {mod(std::move(q), m), mod(std::move(a), m)};
}

inline Coeffs from_fp(const FpPoly& f) {
  Coeffs c;
  for (const auto& v : f.coeffs()) c.emplace_back(v.value());
  return c;
}

inline FpPoly to_fp(const Coeffs& c, std::uint32_t l) {
  PrimeField fl(l);
  std::vector<Zp> v;
  for (const auto& x : c) v.push_back(fl.from_integer(x));
  return FpPoly(fl, std::move(v));
}

// s g + t h = 1 over F_l.
inline std::pair<FpPoly, FpPoly> bezout(const FpPoly& g, const FpPoly& h) {
  const auto field = g.field();
  FpPoly r0 = g, r1 = h;
  FpPoly s0 = FpPoly::one(field), s1(field), t0(field), t1 = FpPoly::one(field);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = s0 - q * s1;
    auto t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) throw InternalError("Hensel factors are not coprime");
  const auto inv = r0.lead().inverse();
  return {inv * s0, inv * t0};
}

// Lift f = g h from modulus l to l^k (g, h monic and coprime mod l).
inline std::pair<Coeffs, Coeffs> hensel_lift(const Coeffs& f, const FpPoly& g0, const FpPoly& h0,
                                             std::uint32_t l, unsigned k) {
  auto [s0, t0] = bezout(g0, h0);
  Coeffs g = from_fp(g0), h = from_fp(h0), s = from_fp(s0), t = from_fp(t0);
  Integer m = l;
  Integer target;
  mpz_ui_pow_ui(target.get_mpz_t(), l, k);
  while (m < target) {
    Integer m2 = m * m;
    Coeffs e = mod(sub(f, mul(g, h)), m2);
    auto [q, r] = divmod_monic(mul(s, e), h, m2);
    Coeffs gs = mod(add(add(g, mul(t, e)), mul(q, g)), m2);
    Coeffs hs = mod(add(h, r), m2);
    Coeffs b = mod(sub(add(mul(s, gs), mul(t, hs)), Coeffs{Integer(1)}), m2);
    auto [c, d] = divmod_monic(mul(s, b), hs, m2);
    s = mod(sub(s, d), m2);
    t = mod(sub(sub(t, mul(t, b)), mul(c, gs)), m2);
    g = std::move(gs);
    h = std::move(hs);
    m = m2;
  }
  return {mod(g, target), mod(h, target)};
}

// Lift a full list of monic factors mod l to l^k.
inline std::vector<Coeffs> multi_lift(const Coeffs& f, const std::vector<FpPoly>& facs, std::uint32_t l,
                                      unsigned k) {
  if (facs.size() == 1) {
    Integer target;
    mpz_ui_pow_ui(target.get_mpz_t(), l, k);
    return {mod(f, target)};
  }
  const std::size_t half = facs.size() / 2;
  FpPoly g = FpPoly::one(facs[0].field()), h = FpPoly::one(facs[0].field());
  std::vector<FpPoly> left(facs.begin(), facs.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<FpPoly> right(facs.begin() + static_cast<std::ptrdiff_t>(half), facs.end());
  for (const auto& x : left) g *= x;
  for (const auto& x : right) h *= x;
  auto [G, H] = hensel_lift(f, g, h, l, k);
  auto a = multi_lift(G, left, l, k);
  auto b = multi_lift(H, right, l, k);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Coeffs symmetric(Coeffs c, const Integer& m) {
  c = mod(std::move(c), m);
  const Integer halfm = m / 2;
  for (auto& v : c)
    if (v > halfm) v -= m;
  return c;
}

inline bool divides_over_z(const Coeffs& d, const Coeffs& f, Coeffs& quotient) {
  // d monic
  if (d.size() > f.size()) return false;
  Coeffs a = f;
  const std::size_t dd = d.size() - 1;
  Coeffs q(a.size() - dd, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + dd];
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) a[k + j] -= q[k] * d[j];
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (a[i] != 0) return false;
  quotient = trim(std::move(q));
  return true;
}

}  // namespace zdetail

/// Irreducible factors over Q of a monic squarefree integer polynomial.
inline std::vector<ZPoly> factor_over_q(const ZPoly& f, std::uint64_t seed = 0x5eed) {
  using namespace zdetail;
  if (f.is_zero() || f.lead() != 1) throw InvalidArgument("factor_over_q expects a monic polynomial");
  const int n = f.degree();
  if (n <= 1) return {f};
  Coeffs fc = f.coeffs();

  std::uint32_t l = 3;
  FpPoly fl;
  for (;; l += 2) {
    if (!is_prime(l)) continue;
    fl = to_fp(fc, l);
    if (is_squarefree(fl)) break;
    if (l > 10000) throw InvalidArgument("factor_over_q expects a squarefree polynomial");
  }
  std::vector<FpPoly> modular;
  for (const auto& [g, e] : factor(fl, seed).factors) modular.push_back(g);
  if (modular.size() == 1) return {f};

  // Mignotte-type bound on factor coefficients: 2^n * ||f||_2.
  Integer norm2 = 0;
  for (const auto& c : fc) norm2 += c * c;
  Integer norm = sqrt(norm2) + 1;
  Integer bound = (Integer(1) << static_cast<unsigned>(n)) * norm;
  unsigned k = 1;
  Integer mk = l;
  while (mk <= 2 * bound) {
    mk *= l;
    ++k;
  }
  auto lifted = multi_lift(fc, modular, l, k);

  std::vector<ZPoly> out;
  std::vector<bool> used(lifted.size(), false);
  Coeffs rest = fc;
  std::size_t remaining = lifted.size();
  for (std::size_t size = 1; 2 * size <= remaining; ++size) {
    bool found = true;
    while (found) {
      found = false;
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < lifted.size(); ++i)
        if (!used[i]) idx.push_back(i);
      if (2 * size > idx.size()) break;
      std::vector<std::size_t> comb(size);
      for (std::size_t i = 0; i < size; ++i) comb[i] = i;
      for (;;) {
        Coeffs prod{Integer(1)};
        for (auto c : comb) prod = mod(mul(prod, lifted[idx[c]]), mk);
        prod = symmetric(prod, mk);
        Coeffs quotient;
        if (divides_over_z(prod, rest, quotient)) {
          out.emplace_back(IntegerRing{}, prod);
          rest = quotient;
          for (auto c : comb) used[idx[c]] = true;
          remaining -= size;
          found = true;
          break;
        }
        std::size_t i = size;
        while (i > 0 && comb[i - 1] == idx.size() - size + i - 1) --i;
        if (i == 0) break;
        ++comb[i - 1];
        for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }
  if (rest.size() > 1) out.emplace_back(IntegerRing{}, rest);
  return out;
}

}  // namespace wplus
