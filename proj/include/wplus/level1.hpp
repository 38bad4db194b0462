#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "wplus/core/field.hpp"
#include "wplus/core/poly.hpp"
#include "wplus/core/series.hpp"

// Level-1 modular forms: Eisenstein series, Delta, j, the Miller basis and the
// divisor polynomial F~(f, x) with its elliptic-point correction factors.

namespace wplus {

// ---------------------------------------------------------------------------
// Bernoulli numbers and divisor sums
// ---------------------------------------------------------------------------

/// B_n (with B_1 = -1/2), exact and cached.
inline Rat bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rat> cache{Rat(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    const unsigned m = static_cast<unsigned>(cache.size());
    if (m > 1 && m % 2 == 1) {
      cache.emplace_back(0);
      continue;
    }
    Rat acc = 0;
    Integer binom;
    for (unsigned k = 0; k < m; ++k) {
      if (cache[k] == 0) continue;
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, k);
      acc += binom * cache[k];
    }
    Rat b = -acc / (m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[n];
}

/// sigma_k(n) = sum of d^k over divisors d of n.
inline Integer sigma(unsigned k, unsigned long n) {
  Integer s = 0, t;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_ui_pow_ui(t.get_mpz_t(), d, k);
    s += t;
    const unsigned long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), e, k);
      s += t;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Weight bookkeeping
// ---------------------------------------------------------------------------

/// E~_k = E4^a E6^b and m(k), with k = 12 m + 4 a + 6 b.
struct EtildeSpec {
  int k = 0;
  int a = 0;
  int b = 0;
  int m = 0;
};

inline EtildeSpec etilde_spec(int k) {
  if (k < 0 || k % 2 != 0) throw InvalidArgument("weight must be even and nonnegative");
  EtildeSpec s{k, 0, 0, 0};
  switch (k % 12) {
    case 0: s.a = 0, s.b = 0; break;
    case 2: s.a = 2, s.b = 1; break;
    case 4: s.a = 1, s.b = 0; break;
    case 6: s.a = 0, s.b = 1; break;
    case 8: s.a = 2, s.b = 0; break;
    case 10: s.a = 1, s.b = 1; break;
  }
  s.m = (k % 12 == 2) ? k / 12 - 1 : k / 12;
  if (s.m < 0) throw InvalidArgument("no modular forms of weight " + std::to_string(k));
  return s;
}

inline int m_of(int k) { return etilde_spec(k).m; }

/// dim M_k for level 1, k even >= 0.
inline int dim_modular_forms(int k) {
  if (k < 0 || k % 2 || k == 2) return 0;
  return k % 12 == 2 ? k / 12 : k / 12 + 1;
}
inline int dim_cusp_forms(int k) { return k >= 12 ? dim_modular_forms(k) - 1 : 0; }

/// Exponents (of x, of x - 1728) relating F~(f^2, x) to F~(f, x)^2 for f of weight k.
struct SquareFactor {
  int x_exp = 0;
  int x1728_exp = 0;
};

inline SquareFactor square_factor(int k) {
  switch (((k % 12) + 12) % 12) {
    case 2: return {1, 1};
    case 6: return {0, 1};
    case 8: return {1, 0};
    case 10: return {0, 1};
    default: return {0, 0};
  }
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

/// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, coefficients for n < prec.
template <class F>
Series<F> eisenstein(F field, int k, int prec) {
  if (k < 4 || k % 2) throw InvalidArgument("Eisenstein series need even k >= 4");
  const Rat c = Rat(-2 * k) / bernoulli(static_cast<unsigned>(k));
  std::vector<typename F::value_type> v;
  v.reserve(static_cast<std::size_t>(std::max(prec, 0)));
  if (prec > 0) v.push_back(field.one());
  if constexpr (F::is_prime_field) {
    const auto cm = field.from_rat(c);
    for (int n = 1; n < prec; ++n)
      v.push_back(cm * field.from_integer(sigma(static_cast<unsigned>(k - 1), static_cast<unsigned long>(n))));
  } else {
    for (int n = 1; n < prec; ++n)
      v.push_back(field.from_rat(c * sigma(static_cast<unsigned>(k - 1), static_cast<unsigned long>(n))));
  }
  return Series<F>(field, 0, std::move(v), std::max(prec, 0), k, 1);
}

inline QExpansion eisenstein(int k, int prec) { return eisenstein(RationalField{}, k, prec); }

/// Delta = (E4^3 - E6^2) / 1728.
template <class F>
Series<F> delta(F field, int prec) {
  auto e4 = eisenstein(field, 4, prec);
  auto e6 = eisenstein(field, 6, prec);
  auto d = e4 * e4 * e4 - e6 * e6;
  return F::inverse(field.from_int(1728)) * d;
}

/// j = E4^3 / Delta, known for exponents < prec.
template <class F>
Series<F> j_function(F field, int prec) {
  auto e4 = eisenstein(field, 4, prec + 2);
  return (e4 * e4 * e4) / delta(field, prec + 2);
}

/// E~_k per the weight residue mod 12 (constant 1 for k = 0 mod 12).
template <class F>
Series<F> etilde(F field, int k, int prec) {
  const auto s = etilde_spec(k);
  Series<F> r = Series<F>::constant(field, field.one(), prec, 0, 1);
  if (s.a) r = r * eisenstein(field, 4, prec).pow(static_cast<unsigned>(s.a));
  if (s.b) r = r * eisenstein(field, 6, prec);
  return r;
}

// ---------------------------------------------------------------------------
// Divisor polynomial
// ---------------------------------------------------------------------------

/// The polynomial F~(f, x) with F~(f, j) = f / (Delta^{m(k)} E~_k), for f of
/// weight k = f.weight() with leading coefficient 1.
template <class F>
Poly<F> divisor_polynomial(const Series<F>& f) {
  const F field = f.field();
  if (f.is_zero()) throw InvalidArgument("divisor polynomial of the zero form");
  if (f.leading() != field.one()) throw InvalidArgument("divisor polynomial needs leading coefficient 1");
  const auto spec = etilde_spec(f.weight());
  const int m = spec.m;
  const int rel = f.relative_precision();
  const int dprec = m + rel;
  Series<F> denom = etilde(field, f.weight(), dprec);
  if (m > 0) denom = delta(field, dprec).pow(static_cast<unsigned>(m)) * denom;
  denom = denom.truncated(dprec);
  Series<F> quot = f / denom;
  quot.set_level(1);
  if (quot.precision() < 2)
    throw PrecisionTooSmall("weight " + std::to_string(f.weight()) + " needs " + std::to_string(m + 2) +
                            " coefficients past the valuation, have " + std::to_string(rel));
  const int d = -quot.valuation();
  if (d < 0 || d > m)
    throw NonPolynomialQuotient("quotient has valuation " + std::to_string(quot.valuation()));
  const int qprec = quot.precision();

  std::vector<typename F::value_type> coef(static_cast<std::size_t>(d + 1), field.zero());
  std::vector<Series<F>> powers;
  powers.reserve(static_cast<std::size_t>(d + 1));
  powers.push_back(Series<F>::constant(field, field.one(), qprec));
  if (d > 0) {
    auto j = j_function(field, qprec + d);
    powers.push_back(j);
    for (int k = 2; k <= d; ++k) powers.push_back(powers.back() * j);
  }
  Series<F> rest = quot;
  for (int k = d; k >= 0; --k) {
    const auto c = rest.coeff(-k);
    coef[static_cast<std::size_t>(k)] = c;
    if (!F::is_zero(c)) rest -= c * powers[static_cast<std::size_t>(k)];
  }
  if (!rest.is_zero())
    throw NonPolynomialQuotient("residual " + rest.to_string(4) + " after removing the polynomial part");
  return Poly<F>(field, std::move(coef));
}

/// Delta^{m(k)} E~_k F~(f, j): rebuilds the form from its divisor polynomial.
template <class F>
Series<F> form_from_divisor_polynomial(const Poly<F>& poly, int k, int prec) {
  const F field = poly.field();
  const auto spec = etilde_spec(k);
  const int d = poly.degree();
  // j^i has valuation -i; Delta^m brings the total back to valuation m - d >= 0.
  const int work = prec + d + 2;
  auto j = j_function(field, work);
  Series<F> acc = Series<F>::zero(field, work - d);
  Series<F> jp = Series<F>::constant(field, field.one(), work);
  for (int i = 0; i <= d; ++i) {
    if (i) jp = jp * j;
    acc += poly.coeff(i) * jp;
  }
  auto front = etilde(field, k, prec + d + 2);
  if (spec.m > 0) front = delta(field, prec + d + 2).pow(static_cast<unsigned>(spec.m)) * front;
  return (front * acc).truncated(prec);
}

// ---------------------------------------------------------------------------
// Miller basis
// ---------------------------------------------------------------------------

/// Echelon basis h_0..h_n of M_k with h_i = q^i + O(q^{n+1}), integral over Z.
template <class F>
std::vector<Series<F>> miller_basis(F field, int k, int prec) {
  if (k < 4 || k % 2) throw InvalidArgument("Miller basis needs even k >= 4");
  const auto spec = etilde_spec(k);
  const int n = spec.m;
  if (prec < n + 1) throw PrecisionTooSmall("Miller basis of weight " + std::to_string(k) + " needs precision > " + std::to_string(n));
  const auto e6 = eisenstein(field, 6, prec);
  const auto e6sq = e6 * e6;
  const auto d = delta(field, prec);
  const auto et = etilde(field, k, prec);

  std::vector<Series<F>> e6pow{Series<F>::constant(field, field.one(), prec)};
  for (int i = 1; i <= n; ++i) e6pow.push_back(e6pow.back() * e6sq);
  std::vector<Series<F>> basis;
  Series<F> dpow = Series<F>::constant(field, field.one(), prec);
  for (int i = 0; i <= n; ++i) {
    if (i) dpow = dpow * d;
    basis.push_back((dpow * e6pow[static_cast<std::size_t>(n - i)] * et).truncated(prec).set_weight(k));
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto c = basis[static_cast<std::size_t>(i)].coeff(j);
      if (!F::is_zero(c)) basis[static_cast<std::size_t>(i)] -= c * basis[static_cast<std::size_t>(j)];
    }
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Correction factors for the mod-p product formula
// ---------------------------------------------------------------------------

inline FpPoly x_minus_1728(std::uint32_t p) {
  PrimeField fp(p);
  return FpPoly::linear(fp, fp.from_int(1728));
}

/// C_p(k; x), keyed on (k mod 12, p mod 12).
inline FpPoly cp_factor(int k, std::uint32_t p) {
  require_supported_prime(p);
  PrimeField fp(p);
  const int kr = ((k % 12) + 12) % 12;
  const int pr = static_cast<int>(p % 12);
  const FpPoly x = FpPoly::x(fp);
  auto is = [&](int a, int b) { return kr == a && pr == b; };
  if (is(2, 5) || is(8, 5) || is(8, 11)) return x;
  if (is(2, 7) || is(6, 7) || is(10, 7) || is(6, 11) || is(10, 11)) return x_minus_1728(p);
  if (is(2, 11)) return x * x_minus_1728(p);
  return FpPoly::one(fp);
}

struct GpPoly {
  FpPoly poly;
  int x_exp = 0;
  int x1728_exp = 0;
};

/// G_p(x) = prod_{s=1}^{g^2-g} C_p(2g(g+p) + (g^2-g-s)(p-1); x), returned in closed form
/// after checking it against the product.
inline GpPoly gp_poly(int g, std::uint32_t p) {
  require_supported_prime(p);
  if (g < 2) throw InvalidArgument("G_p needs g >= 2");
  const int gg = g * g - g;
  PrimeField fp(p);
  FpPoly product = FpPoly::one(fp);
  for (int s = 1; s <= gg; ++s) {
    const long k = 2L * g * (g + static_cast<long>(p)) + static_cast<long>(gg - s) * (static_cast<long>(p) - 1);
    product *= cp_factor(static_cast<int>(k % 12), p);
  }
  GpPoly out;
  switch (p % 12) {
    case 1: break;
    case 5: out.x_exp = (gg + 2) / 3; break;
    case 7: out.x1728_exp = gg / 2; break;
    case 11:
      out.x_exp = (gg + 2) / 3;
      out.x1728_exp = gg / 2;
      break;
  }
  out.poly = FpPoly::x(fp).pow(static_cast<unsigned>(out.x_exp)) *
             x_minus_1728(p).pow(static_cast<unsigned>(out.x1728_exp));
  if (out.poly != product)
    throw ClosedFormMismatch("p = " + std::to_string(p) + ", g = " + std::to_string(g) + ": product " +
                             product.to_string() + " vs closed form " + out.poly.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Square of a form
// ---------------------------------------------------------------------------

template <class F>
struct SquareDivisorCheck {
  int k = 0;
  Poly<F> single;   ///< F~(f, x)
  Poly<F> squared;  ///< F~(f^2, x), computed from the series f^2
  Poly<F> predicted;
  bool holds = false;
};

/// Compares F~(f^2, x) with x^a (x - 1728)^b F~(f, x)^2 from the weight residue.
template <class F>
SquareDivisorCheck<F> square_divisor_relation(const Series<F>& f) {
  const F field = f.field();
  SquareDivisorCheck<F> out;
  out.k = f.weight();
  out.single = divisor_polynomial(f);
  out.squared = divisor_polynomial(f * f);
  const auto sf = square_factor(out.k);
  out.predicted = Poly<F>::x(field).pow(static_cast<unsigned>(sf.x_exp)) *
                  Poly<F>::linear(field, field.from_int(1728)).pow(static_cast<unsigned>(sf.x1728_exp)) *
                  out.single * out.single;
  out.holds = out.predicted == out.squared;
  return out;
}

}  // namespace wplus
