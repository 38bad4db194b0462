#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wplus/core/poly.hpp"
#include "wplus/level1.hpp"

namespace wplus {

namespace mp {

/// Owning MPFR value.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}

  void set_integer(const Integer& n) {
    mpfr_set_z(re.get(), n.get_mpz_t(), MPFR_RNDN);
    mpfr_set_zero(im.get(), 1);
  }
};

/// r = a * b (r may alias a or b).
inline void mul(Complex& r, const Complex& a, const Complex& b) {
  const auto prec = r.re.prec();
  Real t1(prec), t2(prec), t3(prec), t4(prec);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t3.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t4.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t3.get(), t4.get(), MPFR_RNDN);
}

/// r = a / b.
inline void div(Complex& r, const Complex& a, const Complex& b) {
  const auto prec = r.re.prec();
  Real n(prec), t(prec);
  mpfr_sqr(n.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
  Complex conj(prec);
  mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
  mul(r, a, conj);
  mpfr_div(r.re.get(), r.re.get(), n.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), r.im.get(), n.get(), MPFR_RNDN);
}

inline void sub(Complex& r, const Complex& a, const Complex& b) {
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

}  // namespace mp

/// Primitive positive definite form a x^2 + b x y + c y^2.
struct QuadForm {
  long a, b, c;
  friend bool operator==(const QuadForm& x, const QuadForm& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }
};

/// Reduced primitive forms of discriminant -D (D > 0, D = 0 or 3 mod 4).
inline std::vector<QuadForm> reduced_forms(long D) {
  if (D <= 0 || (D % 4 != 0 && D % 4 != 3)) throw InvalidArgument("-D is not a discriminant: D = " + std::to_string(D));
  std::vector<QuadForm> out;
  for (long a = 1; 3 * a * a <= D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b + D;
      if (num % (4 * a)) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

inline long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

struct ClassPolyData {
  long D = 0;
  std::vector<QuadForm> forms;
  ZPoly poly;
  long precision_bits = 0;
  int attempts = 0;
};

namespace cpdetail {

/// Integer q-expansion coefficients of E4 and Delta, n < N.
struct JSeries {
  std::vector<Integer> e4, delta;
};

inline JSeries j_series(int N) {
  JSeries s;
  const auto E4 = eisenstein(4, N);
  const auto Dl = delta(RationalField{}, N);
  for (int n = 0; n < N; ++n) {
    s.e4.push_back(E4.coeff(n).get_num());
    s.delta.push_back(Dl.coeff(n).get_num());
  }
  return s;
}

inline Integer round_checked(const mp::Complex& z, double tol, bool& ok) {
  const auto prec = z.re.prec();
  mp::Real r(prec), diff(prec);
  mpfr_rint(r.get(), z.re.get(), MPFR_RNDN);
  mpfr_sub(diff.get(), z.re.get(), r.get(), MPFR_RNDN);
  if (std::fabs(diff.to_double()) >= tol || std::fabs(z.im.to_double()) >= tol) ok = false;
  Integer out;
  mpfr_get_z(out.get_mpz_t(), r.get(), MPFR_RNDN);
  return out;
}

/// Attempt at a fixed working precision; ok is false when rounding is ambiguous.
inline ZPoly attempt(long D, const std::vector<QuadForm>& forms, long bits, bool& ok) {
  const mpfr_prec_t prec = bits;
  const double sqrtD = std::sqrt(static_cast<double>(D));
  long max_a = 1;
  for (const auto& f : forms) max_a = std::max(max_a, f.a);
  // terms: |q|^N * N^8 below 2^-bits
  const double decay = M_PI * sqrtD / static_cast<double>(max_a) / std::log(2.0);
  int N = 8;
  while (N * decay < bits + 8 * std::log2(N) + 32) ++N;
  const auto js = j_series(N + 1);

  mp::Real pi(prec), sq(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_si(sq.get(), D, MPFR_RNDN);
  mpfr_sqrt(sq.get(), sq.get(), MPFR_RNDN);

  std::vector<mp::Complex> poly;  // coefficients, low to high
  poly.emplace_back(prec);
  mpfr_set_ui(poly[0].re.get(), 1, MPFR_RNDN);

  for (const auto& f : forms) {
    // q = exp(2 pi i tau), tau = (-b + i sqrt D) / (2a)
    mp::Real mod(prec), ang(prec);
    mpfr_mul(mod.get(), pi.get(), sq.get(), MPFR_RNDN);
    mpfr_div_si(mod.get(), mod.get(), f.a, MPFR_RNDN);
    mpfr_neg(mod.get(), mod.get(), MPFR_RNDN);
    mpfr_exp(mod.get(), mod.get(), MPFR_RNDN);
    mpfr_mul_si(ang.get(), pi.get(), -f.b, MPFR_RNDN);
    mpfr_div_si(ang.get(), ang.get(), f.a, MPFR_RNDN);
    mp::Complex q(prec);
    mpfr_sin_cos(q.im.get(), q.re.get(), ang.get(), MPFR_RNDN);
    mpfr_mul(q.re.get(), q.re.get(), mod.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), q.im.get(), mod.get(), MPFR_RNDN);

    auto horner = [&](const std::vector<Integer>& c) {
      mp::Complex acc(prec);
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        mul(acc, acc, q);
        mpfr_add_z(acc.re.get(), acc.re.get(), it->get_mpz_t(), MPFR_RNDN);
      }
      return acc;
    };
    mp::Complex e4 = horner(js.e4), dl = horner(js.delta), j(prec);
    mul(j, e4, e4);
    mul(j, j, e4);
    div(j, j, dl);

    // poly *= (x - j)
    std::vector<mp::Complex> next(poly.size() + 1, mp::Complex(prec));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      mp::Complex t(prec);
      mul(t, poly[i], j);
      sub(next[i], next[i], t);
      mpfr_add(next[i + 1].re.get(), next[i + 1].re.get(), poly[i].re.get(), MPFR_RNDN);
      mpfr_add(next[i + 1].im.get(), next[i + 1].im.get(), poly[i].im.get(), MPFR_RNDN);
    }
    poly = std::move(next);
  }

  std::vector<Integer> coeffs;
  ok = true;
  for (const auto& c : poly) coeffs.push_back(round_checked(c, 0.01, ok));
  return ZPoly(IntegerRing{}, std::move(coeffs));
}

}  // namespace cpdetail

/// Starting working precision in bits for discriminant -D.
inline long class_poly_start_bits(long D, const std::vector<QuadForm>& forms) {
  double s = 0;
  for (const auto& f : forms) s += M_PI * std::sqrt(static_cast<double>(D)) / (static_cast<double>(f.a) * std::log(2.0));
  return 64 + static_cast<long>(forms.size()) + static_cast<long>(std::ceil(s));
}

/// Hilbert class polynomial of discriminant -D, by evaluating j at the CM
/// points and rounding; precision doubles until rounding is unambiguous.
inline ClassPolyData class_poly(long D, long start_bits = 0, int max_factor = 16) {
  ClassPolyData out;
  out.D = D;
  out.forms = reduced_forms(D);
  const long start = start_bits > 0 ? start_bits : class_poly_start_bits(D, out.forms);
  for (long bits = start; bits <= start * max_factor; bits *= 2) {
    bool ok = false;
    ++out.attempts;
    ZPoly p = cpdetail::attempt(D, out.forms, bits, ok);
    if (ok) {
      out.poly = std::move(p);
      out.precision_bits = bits;
      return out;
    }
  }
  throw PrecisionExhausted("class polynomial for D = " + std::to_string(D) + " not resolved at " +
                           std::to_string(start * max_factor) + " bits");
}

/// H_p = Hilbert(4p), times Hilbert(p) when p = 3 mod 4.
template <class Provider>
ZPoly fixed_point_poly(std::uint32_t p, Provider&& hilbert) {
  require_supported_prime(p);
  ZPoly h = hilbert(4L * p);
  if (p % 4 == 3) h = h * hilbert(static_cast<long>(p));
  return h;
}

inline ZPoly fixed_point_poly(std::uint32_t p) {
  return fixed_point_poly(p, [](long D) { return class_poly(D).poly; });
}

}  // namespace wplus
