#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wplus {

using Integer = mpz_class;
using Rat = mpq_class;

// ---------------------------------------------------------------------------
// Error hierarchy. Every failure the library reports derives from wplus::error
// so callers can separate "the mathematics failed" from usage mistakes.
// ---------------------------------------------------------------------------

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WPLUS_DEFINE_ERROR(Name)              \
  class Name : public error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : error(#Name ": " + what) {}         \
  }

WPLUS_DEFINE_ERROR(InvalidArgument);
WPLUS_DEFINE_ERROR(DivisionByZero);
WPLUS_DEFINE_ERROR(ModulusMismatch);
WPLUS_DEFINE_ERROR(WeightMismatch);
WPLUS_DEFINE_ERROR(NotPIntegral);
WPLUS_DEFINE_ERROR(PrecisionTooSmall);
WPLUS_DEFINE_ERROR(NonPolynomialQuotient);
WPLUS_DEFINE_ERROR(OddMultiplicity);
WPLUS_DEFINE_ERROR(InexactDivision);
WPLUS_DEFINE_ERROR(ClosedFormMismatch);
WPLUS_DEFINE_ERROR(ParityViolation);
WPLUS_DEFINE_ERROR(SplitDegreeMismatch);
WPLUS_DEFINE_ERROR(BoundExceeded);
WPLUS_DEFINE_ERROR(PrecisionExhausted);
WPLUS_DEFINE_ERROR(NoLift);
WPLUS_DEFINE_ERROR(ZeroWronskian);
WPLUS_DEFINE_ERROR(InternalError);

#undef WPLUS_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Small integer helpers
// ---------------------------------------------------------------------------

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * base % m);
    base = static_cast<std::uint64_t>((unsigned __int128)base * base % m);
    exp >>= 1;
  }
  return r;
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
inline int legendre(const Integer& a, std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("legendre needs an odd prime");
  Integer r = a % p;
  if (r < 0) r += p;
  const auto v = r.get_ui();
  if (v == 0) return 0;
  return powmod(v, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline int legendre(long a, std::uint32_t p) { return legendre(Integer(a), p); }

/// Primes accepted by the pipeline: odd p >= 5.
inline void require_supported_prime(std::int64_t p) {
  if (p < 5 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InvalidArgument("expected a prime p >= 5, got " + std::to_string(p));
}

// ---------------------------------------------------------------------------
// Rationals: "num/den" decimal serialization
// ---------------------------------------------------------------------------

inline std::string rat_to_string(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// num/den in lowest terms.
inline Rat make_rat(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_from_string(std::string_view s) {
  Rat r;
  std::string str(s);
  if (str.find('/') == std::string::npos) str += "/1";
  if (r.set_str(str, 10) != 0) throw InvalidArgument("malformed rational '" + std::string(s) + "'");
  if (r.get_den() == 0) throw DivisionByZero("zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

inline bool is_p_integral(const Rat& r, std::uint32_t p) {
  return mpz_divisible_ui_p(r.get_den_mpz_t(), p) == 0;
}

// ---------------------------------------------------------------------------
// Coefficient fields. A field object is a (possibly stateful) context that
// produces constants; elements carry their own arithmetic operators.
// ---------------------------------------------------------------------------

/// Element of F_p. Stores its modulus so mixed-modulus arithmetic is caught.
class Zp {
 public:
  Zp() = default;
  Zp(std::uint64_t v, std::uint32_t p) : v_(static_cast<std::uint32_t>(v % p)), p_(p) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Zp inverse() const {
    if (v_ == 0) throw DivisionByZero("inverse of 0 in F_" + std::to_string(p_));
    return Zp(powmod(v_, p_ - 2, p_), p_);
  }

  Zp operator-() const { return Zp(v_ == 0 ? 0 : p_ - v_, p_); }
  Zp& operator+=(Zp o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Zp& operator-=(Zp o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Zp& operator*=(Zp o) {
    check(o);
    v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % p_);
    return *this;
  }
  Zp& operator/=(Zp o) { return *this *= o.inverse(); }

  friend Zp operator+(Zp a, Zp b) { return a += b; }
  friend Zp operator-(Zp a, Zp b) { return a -= b; }
  friend Zp operator*(Zp a, Zp b) { return a *= b; }
  friend Zp operator/(Zp a, Zp b) { return a /= b; }
  friend bool operator==(Zp a, Zp b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(Zp a, Zp b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, Zp a) { return os << a.v_; }

 private:
  void check(Zp o) const {
    if (o.p_ != p_) throw ModulusMismatch(std::to_string(p_) + " vs " + std::to_string(o.p_));
  }
  std::uint32_t v_ = 0;
  std::uint32_t p_ = 1;
};

struct RationalField {
  using value_type = Rat;
  static constexpr bool is_prime_field = false;

  value_type zero() const { return Rat(0); }
  value_type one() const { return Rat(1); }
  value_type from_int(long n) const { return Rat(n); }
  value_type from_integer(const Integer& n) const { return Rat(n); }
  value_type from_rat(const Rat& r) const { return r; }
  static bool is_zero(const value_type& v) { return v == 0; }
  static value_type inverse(const value_type& v) {
    if (v == 0) throw DivisionByZero("inverse of 0 in Q");
    return 1 / v;
  }
  friend bool operator==(RationalField, RationalField) { return true; }
  std::string name() const { return "Q"; }
};

struct PrimeField {
  using value_type = Zp;
  static constexpr bool is_prime_field = true;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (prime < 2 || !is_prime(prime)) throw InvalidArgument("modulus must be prime");
  }

  std::uint32_t p = 2;

  value_type zero() const { return Zp(0, p); }
  value_type one() const { return Zp(1, p); }
  value_type from_int(long n) const {
    long r = n % static_cast<long>(p);
    if (r < 0) r += p;
    return Zp(static_cast<std::uint64_t>(r), p);
  }
  value_type from_integer(const Integer& n) const {
    Integer r = n % p;
    if (r < 0) r += p;
    return Zp(r.get_ui(), p);
  }
  /// Reduction of a p-integral rational.
  value_type from_rat(const Rat& r) const {
    if (!is_p_integral(r, p))
      throw NotPIntegral(rat_to_string(r) + " is not " + std::to_string(p) + "-integral");
    return from_integer(r.get_num()) * from_integer(r.get_den()).inverse();
  }
  static bool is_zero(const value_type& v) { return v.is_zero(); }
  static value_type inverse(const value_type& v) { return v.inverse(); }
  friend bool operator==(PrimeField a, PrimeField b) { return a.p == b.p; }
  std::string name() const { return "F_" + std::to_string(p); }
};

/// Integers as a coefficient ring (no inverses); used for class polynomials.
struct IntegerRing {
  using value_type = Integer;
  static constexpr bool is_prime_field = false;

  value_type zero() const { return Integer(0); }
  value_type one() const { return Integer(1); }
  value_type from_int(long n) const { return Integer(n); }
  value_type from_integer(const Integer& n) const { return n; }
  static bool is_zero(const value_type& v) { return v == 0; }
  friend bool operator==(IntegerRing, IntegerRing) { return true; }
  std::string name() const { return "Z"; }
};

inline std::string element_to_string(const Rat& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}
inline std::string element_to_string(const Zp& z) { return std::to_string(z.value()); }
inline std::string element_to_string(const Integer& z) { return z.get_str(); }

}  // namespace wplus
