#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wplus/core/field.hpp"

namespace wplus {

/// Dense univariate polynomial, coefficients low to high, trailing zeros trimmed.
template <class F>
class Poly {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Poly() = default;
  explicit Poly(F field) : field_(field) {}
  Poly(F field, std::vector<value_type> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

  static Poly constant(F field, const value_type& c) { return Poly(field, {c}); }
  static Poly one(F field) { return Poly(field, {field.one()}); }
  static Poly x(F field) { return Poly(field, {field.zero(), field.one()}); }
  /// x - a
  static Poly linear(F field, const value_type& root) { return Poly(field, {-root, field.one()}); }
  static Poly from_ints(F field, std::initializer_list<long> coeffs) {
    std::vector<value_type> c;
    for (long v : coeffs) c.push_back(field.from_int(v));
    return Poly(field, std::move(c));
  }

  const F& field() const { return field_; }
  const std::vector<value_type>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  value_type coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : field_.zero();
  }
  value_type lead() const {
    if (c_.empty()) throw InvalidArgument("leading coefficient of the zero polynomial");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back() == field_.one(); }

  Poly monic() const {
    if (c_.empty()) return *this;
    const auto inv = F::inverse(c_.back());
    Poly r = *this;
    for (auto& c : r.c_) c *= inv;
    return r;
  }

  value_type eval(const value_type& x) const {
    value_type acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<value_type> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * field_.from_int(static_cast<long>(i)));
    return Poly(field_, std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<value_type> out(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (F::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.field_, std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const value_type& s, Poly a) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
  }

  Poly pow(unsigned e) const {
    Poly r = one(field_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Euclidean division; returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(field_), *this};
    std::vector<value_type> r = c_;
    std::vector<value_type> q(c_.size() - d.c_.size() + 1, field_.zero());
    const auto inv = F::inverse(d.c_.back());
    const std::size_t dn = d.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      const value_type coef = r[k + dn] * inv;
      q[k] = coef;
      if (F::is_zero(coef)) continue;
      for (std::size_t j = 0; j <= dn; ++j) r[k + j] -= coef * d.c_[j];
    }
    r.resize(dn);
    return {Poly(field_, std::move(q)), Poly(field_, std::move(r))};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }

  bool divides(const Poly& f) const { return (f % *this).is_zero(); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(char var = 'x') const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (F::is_zero(c_[k])) continue;
      std::string s = element_to_string(c_[k]);
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s.erase(0, 1);
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      if (k == 0) {
        os << s;
        continue;
      }
      if (s != "1") os << s;
      os << var;
      if (k > 1) os << '^' << k;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!c_.empty() && F::is_zero(c_.back())) c_.pop_back();
  }

  F field_{};
  std::vector<value_type> c_;
};

using FpPoly = Poly<PrimeField>;
using QPoly = Poly<RationalField>;
using ZPoly = Poly<IntegerRing>;

/// Division that must leave no remainder; otherwise throws InexactDivision.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b, const std::string& what = "") {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero())
    throw InexactDivision((what.empty() ? std::string() : what + ": ") + "(" + a.to_string() +
                          ") / (" + b.to_string() + ") leaves remainder " + r.to_string());
  return q;
}

/// Monic gcd over a field.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m.
template <class F, class Exp>
Poly<F> powmod(const Poly<F>& base, Exp e, const Poly<F>& m) {
  Poly<F> r = Poly<F>::one(base.field()) % m;
  Poly<F> b = base % m;
  while (e > 0) {
    if (e % 2 == 1) r = (r * b) % m;
    e /= 2;
    if (e > 0) b = (b * b) % m;
  }
  return r;
}

/// Multiplicity of the factor `d` in `f` (d non-constant).
template <class F>
int multiplicity(Poly<F> f, const Poly<F>& d) {
  if (f.is_zero()) throw InvalidArgument("multiplicity in the zero polynomial");
  int k = 0;
  for (;;) {
    auto [q, r] = f.divmod(d);
    if (!r.is_zero()) return k;
    f = std::move(q);
    ++k;
  }
}

/// Resultant over a field via the Euclidean remainder sequence.
template <class F>
typename F::value_type resultant(Poly<F> a, Poly<F> b) {
  const F field = a.field();
  if (a.is_zero() || b.is_zero()) return field.zero();
  auto res = field.one();
  for (;;) {
    const int da = a.degree(), db = b.degree();
    if (db == 0) {
      auto lb = b.lead();
      for (int i = 0; i < da; ++i) res *= lb;
      return res;
    }
    if (da < db) {
      if ((da % 2 == 1) && (db % 2 == 1)) res = -res;
      std::swap(a, b);
      continue;
    }
    auto r = a % b;
    if (r.is_zero()) return field.zero();
    // res(a,b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
    if ((da % 2 == 1) && (db % 2 == 1)) res = -res;
    const auto lb = b.lead();
    for (int i = 0; i < da - r.degree(); ++i) res *= lb;
    a = std::move(b);
    b = std::move(r);
  }
}

/// Reduce an integer polynomial coefficientwise mod p.
inline FpPoly reduce_mod_p(const ZPoly& f, std::uint32_t p) {
  PrimeField fp(p);
  std::vector<Zp> c;
  for (const auto& a : f.coeffs()) c.push_back(fp.from_integer(a));
  return FpPoly(fp, std::move(c));
}

}  // namespace wplus
