#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "liealg.hpp"
#include "weights.hpp"

namespace hcsuper {

/// Word or PBW monomial: a sequence of basis labels of g.
using Word = std::vector<int>;
/// Element of U(g): words (normal-ordered after normal_order) with rational coefficients.
using UElem = std::map<Word, Rational>;

inline void uadd(UElem& acc, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = acc.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

inline void uaxpy(UElem& acc, const Rational& s, const UElem& v) {
  if (s == 0) return;
  for (const auto& [w, c] : v) uadd(acc, w, s * c);
}

/// PBW normal ordering in U(g) for the basis order of g (negatives, Cartan, positives).
class Enveloping {
 public:
  explicit Enveloping(const LieSuperalgebra& g) : g_(&g) {}

  const LieSuperalgebra& algebra() const { return *g_; }
  bool odd(int x) const { return g_->basis[static_cast<std::size_t>(x)].odd; }
  int kind(int x) const {
    const auto& b = g_->basis[static_cast<std::size_t>(x)];
    if (b.cartan) return 0;
    return b.weight < g_->rs.zero() ? -1 : 1;
  }
  bool is_negative(int x) const { return index_negative(x); }
  bool is_positive(int x) const { return !g_->basis[static_cast<std::size_t>(x)].cartan && !index_negative(x); }

  bool is_normal(const Word& w) const {
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i - 1] > w[i]) return false;
      if (w[i - 1] == w[i] && odd(w[i])) return false;
    }
    return true;
  }

  /// Normal form of x * m for a normal monomial m.
  const UElem& mul_gen(int x, const Word& m) {
    auto key = std::make_pair(x, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    UElem out;
    if (m.empty() || x < m.front()) {
      Word w;
      w.reserve(m.size() + 1);
      w.push_back(x);
      w.insert(w.end(), m.begin(), m.end());
      out.emplace(std::move(w), Rational(1));
    } else {
      const int y = m.front();
      const Word rest(m.begin() + 1, m.end());
      if (x == y) {
        if (odd(x)) {
          // x x = (1/2)[x, x]
          for (const auto& [l, c] : g_->bracket(x, x)) uaxpy(out, c / 2, mul_gen(l, rest));
        } else {
          Word w;
          w.reserve(m.size() + 1);
          w.push_back(x);
          w.insert(w.end(), m.begin(), m.end());
          out.emplace(std::move(w), Rational(1));
        }
      } else {
        // x y rest = (-1)^{|x||y|} y (x rest) + [x, y] rest
        const UElem xr = mul_gen(x, rest);
        const Rational sign = (odd(x) && odd(y)) ? -1 : 1;
        for (const auto& [w, c] : xr) uaxpy(out, sign * c, mul_gen(y, w));
        for (const auto& [l, c] : g_->bracket(x, y)) uaxpy(out, c, mul_gen(l, rest));
      }
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  /// Normal form of an arbitrary word, multiplying generators from the right.
  UElem normal_order(const Word& word) {
    UElem cur;
    cur.emplace(Word{}, Rational(1));
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      UElem next;
      for (const auto& [w, c] : cur) uaxpy(next, c, mul_gen(*it, w));
      cur = std::move(next);
    }
    return cur;
  }

  UElem normal_order(const UElem& u) {
    UElem out;
    for (const auto& [w, c] : u) uaxpy(out, c, normal_order(w));
    return out;
  }

  /// Product of two elements, in normal form.
  UElem mul(const UElem& a, const UElem& b) {
    UElem out;
    for (const auto& [wa, ca] : a) {
      UElem cur = normal_order(b);
      for (auto it = wa.rbegin(); it != wa.rend(); ++it) {
        UElem next;
        for (const auto& [w, c] : cur) uaxpy(next, c, mul_gen(*it, w));
        cur = std::move(next);
      }
      uaxpy(out, ca, cur);
    }
    return out;
  }

  /// U(n^-)-component modulo the left ideal generated by n^+ and H + lambda(H):
  /// monomials with a positive factor vanish, each Cartan factor H becomes -lambda(H).
  UElem verma_project(const UElem& u, const Weight& lambda) {
    UElem out;
    for (const auto& [w0, c0] : u) {
      const UElem nf = is_normal(w0) ? UElem{{w0, Rational(1)}} : normal_order(w0);
      for (const auto& [w, c] : nf) {
        Rational s = c0 * c;
        Word neg;
        bool dead = false;
        for (int x : w) {
          if (is_negative(x))
            neg.push_back(x);
          else if (g_->basis[static_cast<std::size_t>(x)].cartan)
            s *= -g_->evaluate(lambda, x);
          else {
            dead = true;
            break;
          }
        }
        if (!dead) uadd(out, neg, s);
      }
    }
    return out;
  }

  /// Action of a generator on the Verma module: project(x * v).
  UElem act(int x, const UElem& v, const Weight& lambda) {
    UElem raw;
    for (const auto& [w, c] : v) uaxpy(raw, c, mul_gen(x, w));
    return verma_project(raw, lambda);
  }

  /// verma_project(normal_order(u * m), lambda) computed generator by generator.
  UElem verma_apply(const UElem& u, const UElem& m, const Weight& lambda) {
    UElem out;
    for (const auto& [w, c] : u) {
      UElem cur = m;
      for (auto it = w.rbegin(); it != w.rend(); ++it) cur = act(*it, cur, lambda);
      uaxpy(out, c, cur);
    }
    return out;
  }

  /// Super antiautomorphism extending X -> -X: x1...xk -> (-1)^k (-1)^{C(#odd, 2)} xk...x1.
  std::pair<Rational, Word> tau(const Word& w) const {
    int nodd = 0;
    for (int x : w) nodd += odd(x) ? 1 : 0;
    const long e = static_cast<long>(w.size()) + static_cast<long>(nodd) * (nodd - 1) / 2;
    return {Rational(e % 2 == 0 ? 1 : -1), Word(w.rbegin(), w.rend())};
  }

  /// Normal monomials in positive (sign = +1) or negative (sign = -1) root vectors of weight sign * d.
  std::vector<Word> monomials(int sign, const Weight& d) const {
    const auto target = simple_coordinates(g_->rs, d);
    if (!target) return {};
    std::vector<int> labels;
    std::vector<std::vector<long>> coords;
    for (int x = 0; x < g_->dim(); ++x) {
      if (sign > 0 ? !is_positive(x) : !is_negative(x)) continue;
      labels.push_back(x);
      coords.push_back(simple_coords_or_throw(g_->rs, Rational(sign) * g_->basis[static_cast<std::size_t>(x)].weight));
    }
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, std::size_t i, std::vector<long>& left) -> void {
      if (std::all_of(left.begin(), left.end(), [](long v) { return v == 0; })) {
        out.push_back(cur);
        return;
      }
      if (i == labels.size()) return;
      const auto& a = coords[i];
      const long cap = odd(labels[i]) ? 1 : 1L << 30;
      long r = 0;
      for (; r < cap; ++r) {
        bool ok = true;
        for (std::size_t q = 0; q < left.size(); ++q) ok &= left[q] >= a[q];
        if (!ok) break;
        for (std::size_t q = 0; q < left.size(); ++q) left[q] -= a[q];
        cur.push_back(labels[i]);
      }
      for (; r >= 0; --r) {
        self(self, i + 1, left);
        if (r == 0) break;
        for (std::size_t q = 0; q < left.size(); ++q) left[q] += a[q];
        cur.pop_back();
      }
    };
    std::vector<long> left = *target;
    rec(rec, 0, left);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Pairing matrix <tau(N+_r) N-_s> at depth d for the Verma module of highest weight lambda:
  /// entries are the constant term of the projection with H acting by lambda(H).
  Matrix<Rational> contravariant_matrix(const Weight& lambda, const Weight& d, std::vector<Word>* rows = nullptr,
                                        std::vector<Word>* cols = nullptr) {
    const auto R = monomials(+1, d);
    const auto C = monomials(-1, d);
    if (rows) *rows = R;
    if (cols) *cols = C;
    const Weight shifted = -lambda;
    Matrix<Rational> m(static_cast<int>(R.size()), static_cast<int>(C.size()), Rational(0));
    for (std::size_t s = 0; s < C.size(); ++s) {
      const UElem col{{C[s], Rational(1)}};
      for (std::size_t r = 0; r < R.size(); ++r) {
        const auto [sg, w] = tau(R[r]);
        const UElem res = verma_apply(UElem{{w, sg}}, col, shifted);
        auto it = res.find(Word{});
        if (it != res.end()) m(static_cast<int>(r), static_cast<int>(s)) = it->second;
      }
    }
    return m;
  }

  /// Rank of the depth-d pairing matrix: the depth-d multiplicity of the irreducible quotient.
  Count irreducible_quotient_mult(const Weight& lambda, const Weight& d) {
    const auto m = contravariant_matrix(lambda, d);
    if (m.rows() == 0) return 0;
    return rank(m);
  }

  std::string label(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + g_->basis[static_cast<std::size_t>(w[i])].label;
    return s;
  }

  /// Weight of a word: sum of the labels' weights.
  Weight weight(const Word& w) const {
    Weight s = g_->rs.zero();
    for (int x : w) s += g_->basis[static_cast<std::size_t>(x)].weight;
    return s;
  }

 private:
  bool index_negative(int x) const {
    const auto& b = g_->basis[static_cast<std::size_t>(x)];
    if (b.cartan) return false;
    return !std::binary_search(g_->rs.positive.begin(), g_->rs.positive.end(), b.weight);
  }

  const LieSuperalgebra* g_;
  std::map<std::pair<int, Word>, UElem> memo_;
};

}  // namespace hcsuper
