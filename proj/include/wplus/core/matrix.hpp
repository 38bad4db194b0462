#pragma once

#include <cstddef>
#include <vector>

#include "wplus/core/poly.hpp"

namespace wplus {

/// Dense row-major matrix over a field. Row vectors act on the left: v * M.
template <class F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static Matrix from_rows(F field, const std::vector<std::vector<value_type>>& rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols && j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  value_type& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<value_type> row(std::size_t i) const {
    return std::vector<value_type>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                   a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void append_row(const std::vector<value_type>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    for (std::size_t j = 0; j < cols_; ++j) a_.push_back(j < r.size() ? r[j] : field_.zero());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw InvalidArgument("matrix shape mismatch");
    Matrix r(x.field_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const auto& xik = x(i, k);
        if (F::is_zero(xik)) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(const value_type& s, Matrix x) {
    for (auto& v : x.a_) v *= s;
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  /// Row vector times matrix.
  std::vector<value_type> apply_left(const std::vector<value_type>& v) const {
    std::vector<value_type> out(cols_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      if (F::is_zero(v[i])) continue;
      for (std::size_t j = 0; j < cols_; ++j) out[j] += v[i] * (*this)(i, j);
    }
    return out;
  }

  /// In-place reduced row echelon form; returns pivot columns. Zero rows are dropped.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && F::is_zero((*this)(piv, c))) ++piv;
      if (piv == rows_) continue;
      if (piv != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(r, j));
      const auto inv = F::inverse((*this)(r, c));
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        const auto f = (*this)(i, c);
        if (F::is_zero(f)) continue;
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    a_.resize(r * cols_);
    rows_ = r;
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis (as rows, in RREF) of the right kernel {x : M x = 0}.
  Matrix kernel() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    Matrix k(field_, 0, cols_);
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<value_type> v(cols_, field_.zero());
      v[free] = field_.one();
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
      k.append_row(v);
    }
    k.rref();
    return k;
  }

  /// Basis of the left kernel {x : x M = 0}.
  Matrix left_kernel() const { return transpose().kernel(); }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> a_;
};

using QMatrix = Matrix<RationalField>;

/// Characteristic polynomial det(x I - M) by reduction to Hessenberg form.
template <class F>
Poly<F> charpoly(Matrix<F> h) {
  const auto field = h.field();
  const std::size_t n = h.rows();
  if (n != h.cols()) throw InvalidArgument("charpoly of a non-square matrix");
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && F::is_zero(h(piv, m - 1))) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
    }
    const auto inv = F::inverse(h(m, m - 1));
    for (std::size_t i = m + 1; i < n; ++i) {
      const typename F::value_type u = h(i, m - 1) * inv;
      if (F::is_zero(u)) continue;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(m, j);
      for (std::size_t j = 0; j < n; ++j) h(j, m) += u * h(j, i);
    }
  }
  // p_k = charpoly of the leading k x k block
  std::vector<Poly<F>> pk;
  pk.push_back(Poly<F>::one(field));
  const auto x = Poly<F>::x(field);
  for (std::size_t k = 1; k <= n; ++k) {
    Poly<F> next = (x - Poly<F>::constant(field, h(k - 1, k - 1))) * pk[k - 1];
    auto prod = field.one();
    for (std::size_t i = 1; i < k; ++i) {
      prod *= h(k - i, k - i - 1);
      const typename F::value_type coef = prod * h(k - i - 1, k - 1);
      next -= Poly<F>::constant(field, coef) * pk[k - i - 1];
    }
    pk.push_back(std::move(next));
  }
  return pk[n];
}

/// p(M) for a polynomial p.
template <class F>
Matrix<F> evaluate(const Poly<F>& p, const Matrix<F>& m) {
  const auto field = m.field();
  Matrix<F> r(field, m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) {
    r = r * m;
    for (std::size_t d = 0; d < m.rows(); ++d) r(d, d) += p.coeff(i);
  }
  return r;
}

}  // namespace wplus
