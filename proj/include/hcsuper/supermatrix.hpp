#pragma once

#include <map>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <utility>

#include "linalg.hpp"

namespace hcsuper {

/// Block dimensions (even | odd) of a super vector space.
struct BlockShape {
  int even = 0;
  int odd = 0;
  int size() const { return even + odd; }
  bool is_odd(int i) const { return i >= even; }
  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

enum class Parity { even, odd, mixed };

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    default:
      return "mixed";
  }
}

inline int entry_parity(const Grassmann& x) { return x.parity(); }
inline int entry_parity(const Cyclo&) { return 0; }
inline int entry_parity(const Rational&) { return 0; }

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix between super vector spaces. Entry (i, j) of a homogeneous matrix of
/// parity p has parity p + row(i) + col(j); for scalar rings entries count as even.
template <class R>
class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(BlockShape rows, BlockShape cols, const R& zero = R())
      : rows_(rows), cols_(cols), m_(rows.size(), cols.size(), zero) {}
  SuperMatrix(BlockShape shape, const R& zero = R()) : SuperMatrix(shape, shape, zero) {}  // NOLINT
  SuperMatrix(BlockShape rows, BlockShape cols, Matrix<R> m) : rows_(rows), cols_(cols), m_(std::move(m)) {
    if (m_.rows() != rows.size() || m_.cols() != cols.size()) throw ShapeError("matrix does not fit block shape");
  }

  static SuperMatrix identity(BlockShape shape, const R& like = R()) {
    return SuperMatrix(shape, shape, Matrix<R>::identity(shape.size(), like));
  }

  const BlockShape& row_shape() const { return rows_; }
  const BlockShape& col_shape() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  int rows() const { return m_.rows(); }
  int cols() const { return m_.cols(); }
  const Matrix<R>& matrix() const { return m_; }
  Matrix<R>& matrix() { return m_; }
  R& operator()(int i, int j) { return m_(i, j); }
  const R& operator()(int i, int j) const { return m_(i, j); }
  R zero() const { return m_.zero(); }

  Parity parity() const {
    bool can_even = true, can_odd = true;
    for (int i = 0; i < rows(); ++i)
      for (int j = 0; j < cols(); ++j) {
        const R& x = m_(i, j);
        if (hcsuper::is_zero(x)) continue;
        const int p = entry_parity(x);
        const int pos = (rows_.is_odd(i) ? 1 : 0) ^ (cols_.is_odd(j) ? 1 : 0);
        if (p < 0) return Parity::mixed;
        if (p != pos) can_even = false;
        if (p == pos) can_odd = false;
      }
    if (can_even) return Parity::even;
    if (can_odd) return Parity::odd;
    return Parity::mixed;
  }

  SuperMatrix operator-() const { return SuperMatrix(rows_, cols_, -m_); }
  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_same(b);
    return SuperMatrix(a.rows_, a.cols_, a.m_ + b.m_);
  }
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    a.check_same(b);
    return SuperMatrix(a.rows_, a.cols_, a.m_ - b.m_);
  }
  SuperMatrix& operator+=(const SuperMatrix& b) { return *this = *this + b; }
  SuperMatrix& operator-=(const SuperMatrix& b) { return *this = *this - b; }
  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (!(a.cols_ == b.rows_)) throw ShapeError("supermatrix block shapes do not compose");
    return SuperMatrix(a.rows_, b.cols_, a.m_ * b.m_);
  }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.m_ == b.m_;
  }
  friend bool operator!=(const SuperMatrix& a, const SuperMatrix& b) { return !(a == b); }

  template <class S>
  SuperMatrix scaled(const S& s) const {
    return SuperMatrix(rows_, cols_, m_.map([&](const R& x) { return scale_entry(x, s); }));
  }

  bool is_zero() const { return m_.is_zero(); }

  /// [[a, alpha], [beta, b]] -> [[a^t, beta^t], [-alpha^t, b^t]].
  SuperMatrix supertranspose() const {
    if (parity() == Parity::mixed) throw ShapeError("supertranspose of a mixed-parity matrix");
    SuperMatrix t(cols_, rows_, zero());
    for (int i = 0; i < t.rows(); ++i)
      for (int j = 0; j < t.cols(); ++j) {
        const R& x = m_(j, i);
        t(i, j) = (cols_.is_odd(i) && !rows_.is_odd(j)) ? R(-x) : x;
      }
    return t;
  }

  /// Plain transpose of the underlying array, keeping block bookkeeping.
  SuperMatrix transpose() const { return SuperMatrix(cols_, rows_, m_.transpose()); }

  SuperMatrix conj() const {
    return SuperMatrix(rows_, cols_, m_.map([](const R& x) { return hcsuper::conj(x); }));
  }

  /// Block (r, c) with r, c in {0 = even, 1 = odd}.
  Matrix<R> block(int r, int c) const {
    const int i0 = r == 0 ? 0 : rows_.even, j0 = c == 0 ? 0 : cols_.even;
    const int nr = r == 0 ? rows_.even : rows_.odd, nc = c == 0 ? cols_.even : cols_.odd;
    return m_.block(i0, j0, nr, nc);
  }

 private:
  static R scale_entry(const R& x, const R& s) { return x * s; }
  template <class S>
  static R scale_entry(const R& x, const S& s) {
    if constexpr (std::is_same_v<R, Grassmann>)
      return x.scaled(Cyclo(s));
    else
      return x * R(s);
  }
  void check_same(const SuperMatrix& o) const {
    if (!(rows_ == o.rows_) || !(cols_ == o.cols_)) throw ShapeError("supermatrix shape mismatch");
  }

  BlockShape rows_, cols_;
  Matrix<R> m_;
};

using GMatrix = SuperMatrix<Grassmann>;
using CMatrix = SuperMatrix<Cyclo>;

inline int parity_sign(Parity p) {
  if (p == Parity::mixed) throw ShapeError("operation needs a homogeneous matrix");
  return p == Parity::odd ? 1 : 0;
}

/// Supercommutator XY - (-1)^{|X||Y|} YX.
template <class R>
SuperMatrix<R> bracket(const SuperMatrix<R>& x, const SuperMatrix<R>& y) {
  const int px = parity_sign(x.parity()), py = parity_sign(y.parity());
  return (px & py) ? x * y + y * x : x * y - y * x;
}

template <class R>
SuperMatrix<R> bracket(const SuperMatrix<R>& x, Parity px, const SuperMatrix<R>& y, Parity py) {
  return (parity_sign(px) & parity_sign(py)) ? x * y + y * x : x * y - y * x;
}

/// Entrywise lift of a scalar matrix into the Grassmann algebra on `gens` generators.
template <class S>
GMatrix lift(const SuperMatrix<S>& a, int gens) {
  GMatrix g(a.row_shape(), a.col_shape(), Grassmann(gens));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) g(i, j) = Grassmann(gens, Cyclo(a(i, j)));
  return g;
}

inline Matrix<Cyclo> body_matrix(const Matrix<Grassmann>& a) {
  Matrix<Cyclo> b(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b(i, j) = a(i, j).body();
  return b;
}

inline CMatrix body_matrix(const GMatrix& a) { return CMatrix(a.row_shape(), a.col_shape(), body_matrix(a.matrix())); }

/// Entrywise body, kept in the Grassmann ring.
inline GMatrix body_of(const GMatrix& a) {
  GMatrix b(a.row_shape(), a.col_shape(), a.zero());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) b(i, j) = Grassmann(a(i, j).gens(), a(i, j).body());
  return b;
}

/// Determinant over a commutative ring by cofactor expansion, memoized on column subsets.
template <class R>
R commutative_det(const Matrix<R>& a) {
  const int n = a.rows();
  if (n != a.cols()) throw ShapeError("determinant of non-square matrix");
  if (n == 0) throw ShapeError("determinant of an empty matrix");
  if (n > 20) throw std::invalid_argument("matrix too large for cofactor determinant");
  std::map<std::uint32_t, R> memo;
  auto rec = [&](auto&& self, int row, std::uint32_t used) -> R {
    if (row == n) return ring_one(a(0, 0));
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    R acc = ring_zero(a(0, 0));
    int sign = 1;
    for (int j = 0; j < n; ++j) {
      if (used & (1u << j)) continue;
      if (!is_zero(a(row, j))) {
        R term = a(row, j) * self(self, row + 1, used | (1u << j));
        if (sign > 0)
          acc += term;
        else
          acc -= term;
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0, 0);
}

class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inverse of a square Grassmann matrix whose body is invertible: sum_k (-B^{-1} S)^k B^{-1}.
inline Matrix<Grassmann> grassmann_inverse(const Matrix<Grassmann>& a) {
  const int n = a.rows();
  if (n != a.cols()) throw ShapeError("inverse of non-square matrix");
  if (n == 0) return a;
  const int gens = a(0, 0).gens();
  auto binv = inverse(body_matrix(a));
  if (!binv) throw NotInvertible("body is not invertible");
  Matrix<Grassmann> b0(n, n, Grassmann(gens));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b0(i, j) = Grassmann(gens, (*binv)(i, j));
  Matrix<Grassmann> soul(n, n, Grassmann(gens));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) soul(i, j) = a(i, j).soul();
  const Matrix<Grassmann> step = -(b0 * soul);
  Matrix<Grassmann> power = Matrix<Grassmann>::identity(n, Grassmann(gens));
  Matrix<Grassmann> sum = power;
  for (int k = 0; k < gens; ++k) {
    power = power * step;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * b0;
}

inline GMatrix supermatrix_inverse(const GMatrix& a) {
  if (!a.is_square()) throw ShapeError("inverse needs a square supermatrix");
  if (a.parity() != Parity::even) throw ShapeError("inverse needs an even supermatrix");
  const auto p = body_matrix(a.block(0, 0)), s = body_matrix(a.block(1, 1));
  if (p.rows() > 0 && is_zero(determinant(p))) throw NotInvertible("even-even block body is singular");
  if (s.rows() > 0 && is_zero(determinant(s))) throw NotInvertible("odd-odd block body is singular");
  return GMatrix(a.col_shape(), a.row_shape(), grassmann_inverse(a.matrix()));
}

/// det(p - q s^{-1} r) det(s)^{-1}.
inline Grassmann berezinian(const GMatrix& a) {
  if (!a.is_square()) throw ShapeError("Berezinian needs a square supermatrix");
  if (a.parity() != Parity::even) throw ShapeError("Berezinian needs an even supermatrix");
  const int gens = a.rows() == 0 ? 0 : a(0, 0).gens();
  const auto p = a.block(0, 0), q = a.block(0, 1), r = a.block(1, 0), s = a.block(1, 1);
  if (p.rows() > 0 && is_zero(determinant(body_matrix(p)))) throw NotInvertible("even-even block body is singular");
  Grassmann det_s(gens, Cyclo(1));
  Matrix<Grassmann> schur = p;
  if (s.rows() > 0) {
    const auto sinv = grassmann_inverse(s);
    det_s = commutative_det(s);
    if (p.rows() > 0) schur = p - q * sinv * r;
  }
  const Grassmann det_p = p.rows() > 0 ? commutative_det(schur) : Grassmann(gens, Cyclo(1));
  return det_p * det_s.inverse();
}

}  // namespace hcsuper
