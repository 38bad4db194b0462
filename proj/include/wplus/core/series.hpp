#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wplus/core/field.hpp"

namespace wplus {

namespace detail {

// Truncated convolution out[k] = sum_{i+j=k} a[i] b[j] for k < n.
template <class V>
void convolve(const std::vector<V>& a, const std::vector<V>& b, std::vector<V>& out, std::size_t n,
              const V& zero) {
  out.assign(n, zero);
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == zero) continue;
    const std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) out[i + j] += a[i] * b[j];
  }
}

// F_p version: accumulate in 64 bits and reduce lazily.
inline void convolve(const std::vector<Zp>& a, const std::vector<Zp>& b, std::vector<Zp>& out,
                     std::size_t n, const Zp& zero) {
  const std::uint64_t p = zero.modulus();
  const std::uint64_t maxprod = (p - 1) * (p - 1);
  const std::uint64_t budget = maxprod == 0 ? 1 : std::numeric_limits<std::uint64_t>::max() / maxprod;
  std::vector<std::uint32_t> av(a.size()), bv(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) av[i] = a[i].value();
  for (std::size_t i = 0; i < b.size(); ++i) bv[i] = b[i].value();
  out.assign(n, zero);
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t acc = 0, used = 0;
    const std::size_t ilo = k + 1 > bv.size() ? k + 1 - bv.size() : 0;
    const std::size_t ihi = std::min(av.size(), k + 1);
    for (std::size_t i = ilo; i < ihi; ++i) {
      acc += std::uint64_t(av[i]) * bv[k - i];
      if (++used == budget) {
        acc %= p;
        used = 1;
      }
    }
    out[k] = Zp(acc % p, static_cast<std::uint32_t>(p));
  }
}

}  // namespace detail

/// Truncated Laurent series sum_{n >= valuation} a_n q^n, known exactly for
/// exponents below `precision`. Weight and level tag the modular-forms origin.
template <class F>
class Series {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Series() = default;

  Series(F field, int valuation, std::vector<value_type> coeffs, int precision, int weight = 0,
         int level = 1)
      : field_(field), val_(valuation), prec_(precision), c_(std::move(coeffs)), weight_(weight),
        level_(level) {
    if (precision < valuation) throw InvalidArgument("series precision below valuation");
    c_.resize(static_cast<std::size_t>(prec_ - val_), field_.zero());
    normalize();
  }

  static Series zero(F field, int precision, int weight = 0, int level = 1) {
    return Series(field, precision, {}, precision, weight, level);
  }
  static Series constant(F field, const value_type& c, int precision, int weight = 0,
                         int level = 1) {
    return Series(field, 0, {c}, precision, weight, level);
  }
  static Series monomial(F field, int exponent, int precision, int weight = 0, int level = 1) {
    return Series(field, exponent, {field.one()}, std::max(precision, exponent), weight, level);
  }

  const F& field() const { return field_; }
  int valuation() const { return val_; }
  int precision() const { return prec_; }
  int relative_precision() const { return prec_ - val_; }
  int weight() const { return weight_; }
  int level() const { return level_; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<value_type>& raw() const { return c_; }

  Series& set_weight(int k) {
    weight_ = k;
    return *this;
  }
  Series& set_level(int n) {
    level_ = n;
    return *this;
  }

  /// Coefficient of q^n; throws if n lies beyond the known precision.
  value_type coeff(int n) const {
    if (n >= prec_)
      throw PrecisionTooSmall("coefficient q^" + std::to_string(n) + " beyond precision " +
                              std::to_string(prec_));
    if (n < val_) return field_.zero();
    return c_[static_cast<std::size_t>(n - val_)];
  }
  value_type leading() const {
    if (is_zero()) throw DivisionByZero("leading coefficient of the zero series");
    return c_.front();
  }

  Series truncated(int precision) const {
    if (precision >= prec_) return *this;
    Series r = *this;
    r.prec_ = std::max(precision, r.val_);
    if (precision <= val_) {
      r.c_.clear();
      r.val_ = r.prec_ = precision;
      return r;
    }
    r.c_.resize(static_cast<std::size_t>(precision - val_));
    r.normalize();
    return r;
  }

  /// Multiply by q^k.
  Series shifted(int k) const {
    Series r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Series& operator+=(const Series& o) { return add_impl(o, false); }
  Series& operator-=(const Series& o) { return add_impl(o, true); }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const value_type& s, Series a) {
    if (F::is_zero(s)) return Series::zero(a.field_, a.prec_, a.weight_, a.level_);
    for (auto& c : a.c_) c *= s;
    return a;
  }
  friend Series operator*(Series a, const value_type& s) { return s * std::move(a); }

  friend Series operator*(const Series& a, const Series& b) {
    a.check_compatible(b);
    const int val = a.val_ + b.val_;
    const int prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
    const int level = std::max(a.level_, b.level_);
    const int weight = a.weight_ + b.weight_;
    if (a.is_zero() || b.is_zero()) return Series::zero(a.field_, prec, weight, level);
    std::vector<value_type> out;
    detail::convolve(a.c_, b.c_, out, static_cast<std::size_t>(prec - val), a.field_.zero());
    return Series(a.field_, val, std::move(out), prec, weight, level);
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  friend Series operator/(const Series& a, const Series& b) {
    a.check_compatible(b);
    if (b.is_zero()) throw DivisionByZero("division by the zero series");
    const int val = a.val_ - b.val_;
    const int rel = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
    const int weight = a.weight_ - b.weight_;
    const int level = std::max(a.level_, b.level_);
    if (a.is_zero()) return Series::zero(a.field_, val + rel, weight, level);
    const auto inv0 = F::inverse(b.c_.front());
    std::vector<value_type> qv(static_cast<std::size_t>(rel), a.field_.zero());
    for (int n = 0; n < rel; ++n) {
      value_type acc = a.c_[static_cast<std::size_t>(n)];
      const int lim = std::min<int>(n, static_cast<int>(b.c_.size()) - 1);
      for (int i = 1; i <= lim; ++i)
        acc -= qv[static_cast<std::size_t>(n - i)] * b.c_[static_cast<std::size_t>(i)];
      qv[static_cast<std::size_t>(n)] = acc * inv0;
    }
    return Series(a.field_, val, std::move(qv), val + rel, weight, level);
  }
  Series& operator/=(const Series& o) { return *this = *this / o; }

  Series pow(unsigned e) const {
    if (e == 0) return Series::constant(field_, field_.one(), prec_ - val_, 0, level_);
    Series result, base = *this;
    bool first = true;
    while (e) {
      if (e & 1) {
        result = first ? base : result * base;
        first = false;
      }
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Equality of the known coefficients up to the shared precision.
  bool agrees_with(const Series& o) const {
    const int n = std::min(prec_, o.prec_);
    for (int k = std::min(val_, o.val_); k < n; ++k)
      if (coeff(k) != o.coeff(k)) return false;
    return true;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.prec_ == b.prec_ && a.val_ == b.val_ && a.c_ == b.c_ && a.weight_ == b.weight_;
  }

  std::string to_string(int max_terms = 12) const {
    std::ostringstream os;
    int shown = 0;
    for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
      if (F::is_zero(c_[i])) continue;
      const int e = val_ + static_cast<int>(i);
      std::string s = element_to_string(c_[i]);
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s.erase(0, 1);
      if (shown == 0)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      const bool unit = s == "1";
      if (e == 0)
        os << s;
      else {
        if (!unit) os << s;
        os << (e == 1 ? std::string("q") : "q^" + std::to_string(e));
      }
      ++shown;
    }
    if (shown == 0) os << "0";
    os << " + O(q^" << prec_ << ")";
    return os.str();
  }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && F::is_zero(c_[lead])) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      val_ = prec_;
      return;
    }
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<int>(lead);
    }
  }

  void check_compatible(const Series& o) const {
    if (!(field_ == o.field_)) throw ModulusMismatch(field_.name() + " vs " + o.field_.name());
    if (level_ != o.level_ && level_ != 1 && o.level_ != 1)
      throw InvalidArgument("series of incompatible levels " + std::to_string(level_) + " and " +
                            std::to_string(o.level_));
  }

  Series& add_impl(const Series& o, bool subtract) {
    check_compatible(o);
    if (weight_ != o.weight_ && !o.is_zero() && !is_zero())
      throw WeightMismatch(std::to_string(weight_) + " vs " + std::to_string(o.weight_));
    if (is_zero()) weight_ = o.weight_;
    const int prec = std::min(prec_, o.prec_);
    const int val = std::min(val_, o.val_);
    level_ = std::max(level_, o.level_);
    if (prec <= val) {
      c_.clear();
      val_ = prec_ = prec;
      return *this;
    }
    std::vector<value_type> out(static_cast<std::size_t>(prec - val), field_.zero());
    for (int k = std::max(val_, val); k < std::min(prec_, prec); ++k)
      out[static_cast<std::size_t>(k - val)] = c_[static_cast<std::size_t>(k - val_)];
    for (int k = std::max(o.val_, val); k < std::min(o.prec_, prec); ++k) {
      auto& slot = out[static_cast<std::size_t>(k - val)];
      const auto& x = o.c_[static_cast<std::size_t>(k - o.val_)];
      if (subtract)
        slot -= x;
      else
        slot += x;
    }
    val_ = val;
    prec_ = prec;
    c_ = std::move(out);
    normalize();
    return *this;
  }

  F field_{};
  int val_ = 0;
  int prec_ = 0;
  std::vector<value_type> c_;
  int weight_ = 0;
  int level_ = 1;
};

using QExpansion = Series<RationalField>;
using FpSeries = Series<PrimeField>;

/// theta = q d/dq: multiplies the coefficient of q^n by n. Raises the weight by 2.
template <class F>
Series<F> theta(const Series<F>& f) {
  std::vector<typename F::value_type> c(f.raw());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] *= f.field().from_int(f.valuation() + static_cast<long>(i));
  return Series<F>(f.field(), f.valuation(), std::move(c), f.precision(), f.weight() + 2, f.level());
}

/// True iff no coefficient denominator is divisible by p.
inline bool is_p_integral(const QExpansion& f, std::uint32_t p) {
  for (const auto& c : f.raw())
    if (!is_p_integral(c, p)) return false;
  return true;
}

/// Coefficientwise reduction mod p; throws NotPIntegral.
inline FpSeries reduce_mod_p(const QExpansion& f, std::uint32_t p) {
  PrimeField fp(p);
  std::vector<Zp> c;
  c.reserve(f.raw().size());
  for (const auto& r : f.raw()) c.push_back(fp.from_rat(r));
  return FpSeries(fp, f.valuation(), std::move(c), f.precision(), f.weight(), f.level());
}

/// Build a series from integer coefficients starting at `valuation`.
template <class F>
Series<F> series_from_ints(F field, int valuation, const std::vector<long>& coeffs, int precision,
                           int weight = 0, int level = 1) {
  std::vector<typename F::value_type> c;
  for (long v : coeffs) c.push_back(field.from_int(v));
  return Series<F>(field, valuation, std::move(c), precision, weight, level);
}

}  // namespace wplus
