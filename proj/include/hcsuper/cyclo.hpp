#pragma once

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace hcsuper {

/// Element of Q(zeta), zeta a primitive 8th root of unity, stored as
/// c0 + c1 zeta + c2 zeta^2 + c3 zeta^3 with zeta^4 = -1.
class Cyclo {
 public:
  using Coeffs = std::array<Rational, 4>;

  Cyclo() = default;
  Cyclo(long v) { c_[0] = v; }  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& v) { c_[0] = v; }  // NOLINT(google-explicit-constructor)
  explicit Cyclo(Coeffs c) : c_(std::move(c)) {}
  Cyclo(Rational a, Rational b, Rational c, Rational d) : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static Cyclo zeta() { return Cyclo(0, 1, 0, 0); }
  static Cyclo i() { return Cyclo(0, 0, 1, 0); }
  /// sqrt(2) = zeta - zeta^3.
  static Cyclo sqrt2() { return Cyclo(0, 1, 0, -1); }

  const Coeffs& coeffs() const { return c_; }
  const Rational& operator[](int k) const { return c_[k]; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  /// Fixed by complex conjugation: a + b sqrt(2).
  bool is_real() const { return c_[2] == 0 && c_[1] == -c_[3]; }
  /// Lies in Q(i).
  bool is_gaussian() const { return c_[1] == 0 && c_[3] == 0; }

  Rational to_rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
  }

  /// Sign of a real element a + b sqrt(2), computed exactly.
  int real_sign() const {
    if (!is_real()) throw std::domain_error("sign of a non-real cyclotomic value");
    const Rational& a = c_[0];
    const Rational& b = c_[1];
    const int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 2 b^2
    const int cmp_v = cmp(Rational(a * a), Rational(2 * b * b));
    return cmp_v > 0 ? sa : (cmp_v < 0 ? sb : 0);
  }

  Cyclo conj() const { return Cyclo(c_[0], -c_[3], -c_[2], -c_[1]); }

  /// Galois automorphism zeta -> zeta^k for odd k.
  Cyclo galois(int k) const {
    Cyclo r;
    for (int j = 0; j < 4; ++j) {
      if (c_[j] == 0) continue;
      int e = (j * k) % 8;
      if (e < 0) e += 8;
      if (e < 4)
        r.c_[e] += c_[j];
      else
        r.c_[e - 4] -= c_[j];
    }
    return r;
  }

  Rational norm() const { return (*this * galois(3) * galois(5) * galois(7)).to_rational(); }

  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    Cyclo rest = galois(3) * galois(5) * galois(7);
    const Rational n = (*this * rest).to_rational();
    for (auto& x : rest.c_) x /= n;
    return rest;
  }

  Cyclo operator-() const { return Cyclo(-c_[0], -c_[1], -c_[2], -c_[3]); }
  Cyclo& operator+=(const Cyclo& o) {
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  Cyclo& operator/=(const Cyclo& o) { return *this = *this * o.inverse(); }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    Cyclo r;
    for (int p = 0; p < 4; ++p) {
      if (a.c_[p] == 0) continue;
      for (int q = 0; q < 4; ++q) {
        if (b.c_[q] == 0) continue;
        const int e = p + q;
        if (e < 4)
          r.c_[e] += a.c_[p] * b.c_[q];
        else
          r.c_[e - 4] -= a.c_[p] * b.c_[q];
      }
    }
    return r;
  }
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo scaled(const Rational& s) const {
    Cyclo r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Human-readable form, e.g. "1/2 - 3*z^2". Only used for diagnostics.
  std::string str() const {
    static const char* const kBasis[4] = {"", "z", "z^2", "z^3"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (c_[k] == 0) continue;
      Rational v = c_[k];
      if (!out.empty()) {
        out += v < 0 ? " - " : " + ";
        v = abs(v);
      } else if (v < 0 && k > 0 && v == -1) {
        out += "-";
        v = 1;
      }
      if (k == 0)
        out += v.get_str();
      else if (v == 1)
        out += kBasis[k];
      else
        out += v.get_str() + "*" + kBasis[k];
    }
    return out.empty() ? "0" : out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyclo& x) { return os << x.str(); }

 private:
  Coeffs c_{};
};

inline bool is_zero(const Cyclo& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Cyclo conj(const Cyclo& x) { return x.conj(); }
inline Rational conj(const Rational& x) { return x; }

}  // namespace hcsuper
