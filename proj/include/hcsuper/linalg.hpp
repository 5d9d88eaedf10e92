#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grassmann.hpp"

namespace hcsuper {

inline Rational ring_zero(const Rational&) { return Rational(0); }
inline Cyclo ring_zero(const Cyclo&) { return Cyclo(); }
inline Grassmann ring_zero(const Grassmann& like) { return Grassmann(like.gens()); }
inline Rational ring_one(const Rational&) { return Rational(1); }
inline Cyclo ring_one(const Cyclo&) { return Cyclo(1); }
inline Grassmann ring_one(const Grassmann& like) { return Grassmann(like.gens(), Cyclo(1)); }

inline Rational field_inverse(const Rational& x) {
  if (sgn(x) == 0) throw std::domain_error("division by zero");
  return 1 / x;
}
inline Cyclo field_inverse(const Cyclo& x) { return x.inverse(); }

/// Dense row-major matrix over a ring R.
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const R& zero = R()) : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows * cols), zero) {}

  static Matrix identity(int n, const R& like = R()) {
    Matrix m(n, n, ring_zero(like));
    for (int i = 0; i < n; ++i) m(i, i) = ring_one(like);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  R& operator()(int i, int j) { return d_[static_cast<std::size_t>(i * c_ + j)]; }
  const R& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i * c_ + j)]; }
  const std::vector<R>& data() const { return d_; }

  R zero() const { return d_.empty() ? R() : ring_zero(d_.front()); }

  Matrix transpose() const {
    Matrix t(c_, r_, zero());
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(int i0, int j0, int nr, int nc) const {
    Matrix b(nr, nc, zero());
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  bool is_zero() const {
    for (const auto& x : d_)
      if (!hcsuper::is_zero(x)) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.d_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += o.d_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < d_.size(); ++k) d_[k] -= o.d_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix p(a.r_, b.c_, a.d_.empty() ? b.zero() : a.zero());
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const R& x = a(i, k);
        if (hcsuper::is_zero(x)) continue;
        for (int j = 0; j < b.c_; ++j) {
          const R& y = b(k, j);
          if (!hcsuper::is_zero(y)) p(i, j) += x * y;
        }
      }
    return p;
  }

  template <class S>
  Matrix scaled(const S& s) const {
    Matrix m(*this);
    for (auto& x : m.d_) x = x * s;
    return m;
  }

  template <class F>
  Matrix map(F f) const {
    Matrix m(*this);
    for (auto& x : m.d_) x = f(x);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }
  int r_ = 0, c_ = 0;
  std::vector<R> d_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!is_zero(m(i, col))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const F inv = field_inverse(m(row, col));
    for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const F f = m(i, col);
      for (int j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int rank(Matrix<F> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of {x : m x = 0}, one vector per free column.
template <class F>
std::vector<std::vector<F>> nullspace(Matrix<F> m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<std::vector<F>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<F> v(static_cast<std::size_t>(m.cols()), F(0));
    v[static_cast<std::size_t>(free)] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[static_cast<std::size_t>(pivots[r])] = -m(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
F determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  F det(1);
  const int n = m.rows();
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (!is_zero(m(i, col))) {
        p = i;
        break;
      }
    if (p < 0) return F(0);
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det = det * m(col, col);
    const F inv = field_inverse(m(col, col));
    for (int i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const F f = m(i, col) * inv;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  const int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  if (n == 0) return m;
  Matrix<F> aug(n, 2 * n, F(0));
  aug.set_block(0, 0, m);
  for (int i = 0; i < n; ++i) aug(i, n + i) = F(1);
  const auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
  return aug.block(0, n, n, n);
}

/// Solves m x = b; nullopt if inconsistent. Picks free variables as zero.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b) {
  Matrix<F> aug(m.rows(), m.cols() + 1, F(0));
  aug.set_block(0, 0, m);
  for (int i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[static_cast<std::size_t>(i)];
  const auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<F> x(static_cast<std::size_t>(m.cols()), F(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[static_cast<std::size_t>(piv[r])] = aug(static_cast<int>(r), m.cols());
  return x;
}

}  // namespace hcsuper
