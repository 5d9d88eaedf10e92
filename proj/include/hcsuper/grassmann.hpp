#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cyclo.hpp"

namespace hcsuper {

using Mask = std::uint32_t;

/// Orders generator subsets lexicographically by their sorted index lists.
struct CanonicalMaskLess {
  bool operator()(Mask a, Mask b) const {
    while (a != 0 && b != 0) {
      const int ia = std::countr_zero(a), ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;
  }
};

inline std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

/// Sign of theta_A * theta_B rewritten as theta_{A|B}; 0 if the subsets overlap.
inline int merge_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const Mask above = j >= 31 ? 0u : ~((Mask{1} << (j + 1)) - 1);
    swaps += std::popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

class GeneratorMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of the exterior algebra on N odd generators with cyclotomic coefficients.
class Grassmann {
 public:
  using Terms = std::map<Mask, Cyclo, CanonicalMaskLess>;
  static constexpr int kMaxGenerators = 24;

  Grassmann() = default;
  explicit Grassmann(int gens) : n_(gens) { check_gens(gens); }
  Grassmann(int gens, const Cyclo& scalar) : n_(gens) {
    check_gens(gens);
    if (!scalar.is_zero()) t_.emplace(0, scalar);
  }

  /// theta_i, 1-based.
  static Grassmann generator(int gens, int i) {
    if (i < 1 || i > gens) throw std::out_of_range("generator index out of range");
    Grassmann g(gens);
    g.t_.emplace(Mask{1} << (i - 1), Cyclo(1));
    return g;
  }

  /// theta_{i1} ... theta_{ik} scaled by c; indices need not be sorted.
  static Grassmann monomial(int gens, const std::vector<int>& idx, const Cyclo& c) {
    Grassmann g(gens, c);
    for (int i : idx) g = g * generator(gens, i);
    return g;
  }

  int gens() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  Cyclo body() const {
    auto it = t_.find(0);
    return it == t_.end() ? Cyclo() : it->second;
  }
  Cyclo coeff(Mask m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Cyclo() : it->second;
  }
  Grassmann soul() const {
    Grassmann s(*this);
    s.t_.erase(0);
    return s;
  }

  bool is_even() const {
    for (const auto& [m, c] : t_)
      if (std::popcount(m) & 1) return false;
    return true;
  }
  bool is_odd() const {
    for (const auto& [m, c] : t_)
      if (!(std::popcount(m) & 1)) return false;
    return true;
  }
  /// 0 even, 1 odd, -1 heterogeneous. Zero counts as even.
  int parity() const { return is_even() ? 0 : (is_odd() ? 1 : -1); }

  Grassmann even_part() const { return filter(0); }
  Grassmann odd_part() const { return filter(1); }

  void add_term(Mask m, const Cyclo& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  Grassmann operator-() const {
    Grassmann r(*this);
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  Grassmann& operator+=(const Grassmann& o) {
    same_gens(o);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Grassmann& operator-=(const Grassmann& o) {
    same_gens(o);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend Grassmann operator+(Grassmann a, const Grassmann& b) { return a += b; }
  friend Grassmann operator-(Grassmann a, const Grassmann& b) { return a -= b; }

  friend Grassmann operator*(const Grassmann& a, const Grassmann& b) {
    a.same_gens(b);
    Grassmann r(a.n_);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        const int s = merge_sign(ma, mb);
        if (s == 0) continue;
        Cyclo p = ca * cb;
        r.add_term(ma | mb, s > 0 ? p : -p);
      }
    return r;
  }
  Grassmann& operator*=(const Grassmann& o) { return *this = *this * o; }

  Grassmann scaled(const Cyclo& s) const {
    if (s.is_zero()) return Grassmann(n_);
    Grassmann r(*this);
    for (auto& [m, c] : r.t_) c *= s;
    return r;
  }

  friend bool operator==(const Grassmann& a, const Grassmann& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
  friend bool operator!=(const Grassmann& a, const Grassmann& b) { return !(a == b); }

  bool invertible() const { return !body().is_zero(); }

  /// Two-sided inverse b^{-1} sum_k (-s/b)^k; the series stops since the soul is nilpotent.
  Grassmann inverse() const {
    const Cyclo b = body();
    if (b.is_zero()) throw std::domain_error("Grassmann element with zero body is not invertible");
    const Cyclo binv = b.inverse();
    const Grassmann x = soul().scaled(-binv);
    Grassmann sum(n_, Cyclo(1)), power(n_, Cyclo(1));
    for (int k = 1; k <= n_; ++k) {
      power = power * x;
      if (power.is_zero()) break;
      sum += power;
    }
    return sum.scaled(binv);
  }

  /// Conjugates coefficients; generators are fixed.
  Grassmann conj() const {
    Grassmann r(*this);
    for (auto& [m, c] : r.t_) c = c.conj();
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      for (int i : mask_indices(m)) out += "*t" + std::to_string(i);
    }
    return out;
  }

 private:
  static void check_gens(int gens) {
    if (gens < 0 || gens > kMaxGenerators) throw std::invalid_argument("unsupported generator count");
  }
  void same_gens(const Grassmann& o) const {
    if (n_ != o.n_)
      throw GeneratorMismatch("generator count mismatch: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
  }
  Grassmann filter(int par) const {
    Grassmann r(n_);
    for (const auto& [m, c] : t_)
      if ((std::popcount(m) & 1) == par) r.t_.emplace(m, c);
    return r;
  }

  int n_ = 0;
  Terms t_;
};

inline bool is_zero(const Grassmann& x) { return x.is_zero(); }
inline Grassmann conj(const Grassmann& x) { return x.conj(); }

}  // namespace hcsuper
