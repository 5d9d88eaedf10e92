#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace hcsuper {

/// Element of h^* in the eps/delta coordinates.
struct Weight {
  std::vector<Rational> eps;
  std::vector<Rational> delta;

  Weight() = default;
  Weight(int k, int n) : eps(static_cast<std::size_t>(k)), delta(static_cast<std::size_t>(n)) {}
  Weight(std::vector<Rational> e, std::vector<Rational> d) : eps(std::move(e)), delta(std::move(d)) {}

  static Weight unit_eps(int k, int n, int j) {
    Weight w(k, n);
    w.eps[static_cast<std::size_t>(j)] = 1;
    return w;
  }
  static Weight unit_delta(int k, int n, int i) {
    Weight w(k, n);
    w.delta[static_cast<std::size_t>(i)] = 1;
    return w;
  }

  int k() const { return static_cast<int>(eps.size()); }
  int n() const { return static_cast<int>(delta.size()); }
  int size() const { return k() + n(); }
  const Rational& coord(int i) const { return i < k() ? eps[static_cast<std::size_t>(i)] : delta[static_cast<std::size_t>(i - k())]; }
  Rational& coord(int i) { return i < k() ? eps[static_cast<std::size_t>(i)] : delta[static_cast<std::size_t>(i - k())]; }

  bool is_zero() const {
    for (int i = 0; i < size(); ++i)
      if (coord(i) != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (int i = 0; i < size(); ++i)
      if (coord(i).get_den() != 1) return false;
    return true;
  }

  Weight operator-() const {
    Weight w(*this);
    for (int i = 0; i < size(); ++i) w.coord(i) = -w.coord(i);
    return w;
  }
  Weight& operator+=(const Weight& o) {
    check(o);
    for (int i = 0; i < size(); ++i) coord(i) += o.coord(i);
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    check(o);
    for (int i = 0; i < size(); ++i) coord(i) -= o.coord(i);
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(const Rational& s, Weight w) {
    for (int i = 0; i < w.size(); ++i) w.coord(i) *= s;
    return w;
  }

  friend bool operator==(const Weight& a, const Weight& b) { return a.eps == b.eps && a.delta == b.delta; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.eps != b.eps) return std::lexicographical_compare(a.eps.begin(), a.eps.end(), b.eps.begin(), b.eps.end());
    return std::lexicographical_compare(a.delta.begin(), a.delta.end(), b.delta.begin(), b.delta.end());
  }

  /// "e1,e2;d1,d2" with reduced rationals.
  std::string str() const {
    std::string s;
    for (int i = 0; i < k(); ++i) s += (i ? "," : "") + eps[static_cast<std::size_t>(i)].get_str();
    s += ";";
    for (int i = 0; i < n(); ++i) s += (i ? "," : "") + delta[static_cast<std::size_t>(i)].get_str();
    return s;
  }

 private:
  void check(const Weight& o) const {
    if (eps.size() != o.eps.size() || delta.size() != o.delta.size()) throw std::invalid_argument("weight rank mismatch");
  }
};

/// (eps_i, eps_j) = delta_ij, (delta_i, delta_j) = -delta_ij, (eps, delta) = 0.
inline Rational form(const Weight& a, const Weight& b) {
  Rational s = 0;
  for (int i = 0; i < a.k(); ++i) s += a.eps[static_cast<std::size_t>(i)] * b.eps[static_cast<std::size_t>(i)];
  for (int i = 0; i < a.n(); ++i) s -= a.delta[static_cast<std::size_t>(i)] * b.delta[static_cast<std::size_t>(i)];
  return s;
}

enum class Family { A, B, C, D };

inline char family_letter(Family f) { return "ABCD"[static_cast<int>(f)]; }

inline Family parse_family(const std::string& s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  throw std::invalid_argument("unknown family '" + s + "'");
}

struct Root {
  Weight weight;
  bool odd = false;
  bool isotropic() const { return form(weight, weight) == 0; }
  friend bool operator==(const Root& a, const Root& b) { return a.weight == b.weight && a.odd == b.odd; }
};

/// Compact / noncompact bookkeeping for a positive system P = P_k + P_n0 + P_n1.
struct Split {
  std::vector<Weight> compact;
  std::vector<Weight> noncompact_even;
  std::vector<Weight> noncompact_odd;

  std::vector<Weight> noncompact() const {
    std::vector<Weight> v = noncompact_even;
    v.insert(v.end(), noncompact_odd.begin(), noncompact_odd.end());
    std::sort(v.begin(), v.end());
    return v;
  }
  std::vector<Weight> positive() const {
    std::vector<Weight> v = noncompact();
    v.insert(v.end(), compact.begin(), compact.end());
    std::sort(v.begin(), v.end());
    return v;
  }
};

class RootSystem {
 public:
  Family family = Family::B;
  int k = 0;  // eps rank (block size m for family A)
  int n = 0;  // delta rank
  std::vector<Root> roots;       // sorted by weight
  std::vector<Weight> positive;  // sorted
  std::vector<Weight> simple;    // sorted by height then weight
  Split split;

  /// Matrix block sizes (m | 2n) for osp, (m | n) for sl.
  int m() const {
    switch (family) {
      case Family::A:
        return k;
      case Family::B:
        return 2 * k + 1;
      default:
        return 2 * k;
    }
  }
  std::string name() const {
    if (family == Family::A) return "sl(" + std::to_string(k) + "|" + std::to_string(n) + ")";
    return "osp(" + std::to_string(m()) + "|" + std::to_string(2 * n) + ")";
  }

  const Root* find(const Weight& w) const {
    auto it = std::lower_bound(roots.begin(), roots.end(), w, [](const Root& r, const Weight& x) { return r.weight < x; });
    return (it != roots.end() && it->weight == w) ? &*it : nullptr;
  }
  bool is_root(const Weight& w) const { return find(w) != nullptr; }
  bool is_odd(const Weight& w) const {
    const Root* r = find(w);
    if (!r) throw std::invalid_argument("not a root: " + w.str());
    return r->odd;
  }
  Weight zero() const { return Weight(k, n); }
};

namespace detail {

inline void add_pm(std::vector<Root>& out, const Weight& w, bool odd) {
  out.push_back({w, odd});
  out.push_back({-w, odd});
}

inline bool contains(const std::vector<Weight>& v, const Weight& w) { return std::find(v.begin(), v.end(), w) != v.end(); }

inline std::vector<Weight> sorted(std::vector<Weight> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// All roots of the family, sorted by weight.
inline std::vector<Root> generate_roots(Family family, int k, int n) {
  std::vector<Root> out;
  auto E = [&](int j) { return Weight::unit_eps(k, n, j); };
  auto D = [&](int i) { return Weight::unit_delta(k, n, i); };
  if (family == Family::A) {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) detail::add_pm(out, E(a) - E(b), false);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) detail::add_pm(out, D(a) - D(b), false);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < n; ++b) detail::add_pm(out, E(a) - D(b), true);
  } else {
    const bool with_short = family == Family::B;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        detail::add_pm(out, E(i) - E(j), false);
        detail::add_pm(out, E(i) + E(j), false);
      }
    if (with_short)
      for (int i = 0; i < k; ++i) detail::add_pm(out, E(i), false);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        detail::add_pm(out, D(i) - D(j), false);
        detail::add_pm(out, D(i) + D(j), false);
      }
    for (int i = 0; i < n; ++i) detail::add_pm(out, Rational(2) * D(i), false);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) {
        detail::add_pm(out, D(i) - E(j), true);
        detail::add_pm(out, D(i) + E(j), true);
      }
    if (with_short)
      for (int i = 0; i < n; ++i) detail::add_pm(out, D(i), true);
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.weight < b.weight; });
  return out;
}

/// Roots of P that are not a sum of two (possibly equal) elements of P.
inline std::vector<Weight> indecomposables(const RootSystem& rs, const std::vector<Weight>& P) {
  std::vector<Weight> out;
  for (const auto& a : P) {
    bool dec = false;
    for (std::size_t i = 0; i < P.size() && !dec; ++i)
      for (std::size_t j = i; j < P.size() && !dec; ++j)
        if (P[i] + P[j] == a) {
          // 2b is only reachable through [g_b, g_b], nonzero for odd anisotropic b
          if (i == j && !(rs.is_odd(P[i]) && form(P[i], P[i]) != 0)) continue;
          dec = true;
        }
    if (!dec) out.push_back(a);
  }
  return out;
}

/// Coordinates of w over the given basis vectors, if w lies in their span and they are independent.
inline std::optional<std::vector<Rational>> coordinates(const std::vector<Weight>& basis, const Weight& w) {
  if (basis.empty()) {
    if (w.is_zero()) return std::vector<Rational>{};
    return std::nullopt;
  }
  const int dim = w.size();
  Matrix<Rational> a(dim, static_cast<int>(basis.size()));
  std::vector<Rational> b(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) a(i, static_cast<int>(j)) = basis[j].coord(i);
    b[static_cast<std::size_t>(i)] = w.coord(i);
  }
  if (rank(a) != static_cast<int>(basis.size())) return std::nullopt;
  return solve(a, b);
}

/// Sum of two roots in `P`, counting 2b only when b is odd anisotropic.
inline bool sum_is_bracket(const RootSystem& rs, const Weight& a, const Weight& b) {
  if (a == b) return rs.is_odd(a) && form(a, a) != 0;
  return true;
}

/// P is a positive system: P and -P partition the roots, P is closed, and its
/// indecomposables form a basis with nonnegative integer expansions of P.
inline bool is_positive_system(const RootSystem& rs, const std::vector<Weight>& P) {
  const auto sp = detail::sorted(P);
  if (sp.size() != P.size() || 2 * P.size() != rs.roots.size()) return false;
  for (const auto& a : P) {
    if (!rs.is_root(a) || detail::contains(sp, -a)) return false;
  }
  for (const auto& a : P)
    for (const auto& b : P) {
      const Weight s = a + b;
      if (rs.is_root(s) && sum_is_bracket(rs, a, b) && !std::binary_search(sp.begin(), sp.end(), s)) return false;
    }
  const auto simple = indecomposables(rs, sp);
  for (const auto& a : sp) {
    auto c = coordinates(simple, a);
    if (!c) return false;
    for (const auto& x : *c)
      if (x < 0 || x.get_den() != 1) return false;
  }
  return true;
}

/// Simple roots of a positive system, ordered by weight.
inline std::vector<Weight> simple_roots(const RootSystem& rs, const std::vector<Weight>& P) {
  auto s = indecomposables(rs, detail::sorted(P));
  std::sort(s.begin(), s.end());
  return s;
}

/// Nonnegative integer coefficients of a cone element over the simple roots (nullopt off the lattice cone).
inline std::optional<std::vector<long>> simple_coordinates(const RootSystem& rs, const Weight& d) {
  auto c = coordinates(rs.simple, d);
  if (!c) return std::nullopt;
  std::vector<long> out;
  for (const auto& x : *c) {
    if (x.get_den() != 1 || x < 0) return std::nullopt;
    out.push_back(x.get_num().get_si());
  }
  return out;
}

/// Height of a weight in the root lattice: coefficient sum over simple roots.
inline std::optional<long> depth_of(const RootSystem& rs, const Weight& d) {
  auto c = coordinates(rs.simple, d);
  if (!c) return std::nullopt;
  Rational s = 0;
  for (const auto& x : *c) {
    if (x.get_den() != 1) return std::nullopt;
    s += x;
  }
  return s.get_num().get_si();
}

inline long height(const RootSystem& rs, const Weight& a) {
  auto c = coordinates(rs.simple, a);
  if (!c) throw std::invalid_argument("weight outside the root lattice: " + a.str());
  Rational s = 0;
  for (const auto& x : *c) s += x;
  return s.get_num().get_si();
}

/// Compact/noncompact split used in the Hermitian-structure lemma for osp.
inline Split lemma_split(const RootSystem& rs) {
  Split s;
  if (rs.family == Family::A) {
    for (const auto& w : rs.positive) (rs.is_odd(w) ? s.noncompact_odd : s.compact).push_back(w);
    return s;
  }
  for (const auto& w : rs.positive) {
    const bool odd = rs.is_odd(w);
    bool touches_delta = false;
    for (const auto& x : w.delta) touches_delta |= (x != 0);
    const bool delta_pos = std::any_of(w.delta.begin(), w.delta.end(), [](const Rational& x) { return x > 0; }) &&
                           std::none_of(w.delta.begin(), w.delta.end(), [](const Rational& x) { return x < 0; });
    const bool eps1 = rs.k > 0 && w.eps[0] != 0;
    if (odd)
      s.noncompact_odd.push_back(w);
    else if (touches_delta ? delta_pos : eps1)
      s.noncompact_even.push_back(w);
    else
      s.compact.push_back(w);
  }
  return s;
}

/// Split whose compact part is the block-diagonal subalgebra so(m) + gl(n) of the matrix realization.
inline Split block_split(const RootSystem& rs) {
  if (rs.family == Family::A) return lemma_split(rs);
  Split s;
  for (const auto& w : rs.positive) {
    Rational dsum = 0;
    for (const auto& x : w.delta) dsum += x;
    if (dsum == 0)
      s.compact.push_back(w);
    else
      (rs.is_odd(w) ? s.noncompact_odd : s.noncompact_even).push_back(w);
  }
  return s;
}

inline void validate_ranks(Family family, int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("ranks must be nonnegative");
  switch (family) {
    case Family::A:
      if (k == n) throw std::invalid_argument("sl(m|n) needs m != n");
      if (k + n < 2) throw std::invalid_argument("sl(m|n) needs m + n >= 2");
      break;
    case Family::B:
      if (n < 1) throw std::invalid_argument("family B needs n >= 1");
      break;
    case Family::C:
      if (k != 1 || n < 1) throw std::invalid_argument("family C is osp(2|2n): k = 1, n >= 1");
      break;
    case Family::D:
      if (k < 1 || n < 1) throw std::invalid_argument("family D needs k >= 1, n >= 1");
      break;
  }
}

/// Root system with the default positive system and split.
/// Family A is sl(k|n); B, C, D are osp(2k+1|2n), osp(2|2n), osp(2k|2n).
inline RootSystem build_root_system(Family family, int k, int n) {
  validate_ranks(family, k, n);
  RootSystem rs;
  rs.family = family;
  rs.k = k;
  rs.n = n;
  rs.roots = generate_roots(family, k, n);
  for (const auto& r : rs.roots) {
    const Weight& w = r.weight;
    bool pos;
    if (family == Family::A) {
      // eps_a - eps_b, delta_a - delta_b (a < b) and eps_a - delta_b
      pos = false;
      for (int i = 0; i < w.size(); ++i)
        if (w.coord(i) != 0) {
          pos = w.coord(i) > 0;
          break;
        }
    } else {
      // delta-part leads; otherwise the leading eps coordinate decides
      Rational dsum = 0;
      for (const auto& x : w.delta) dsum += x;
      bool any_delta = std::any_of(w.delta.begin(), w.delta.end(), [](const Rational& x) { return x != 0; });
      if (any_delta && dsum != 0)
        pos = dsum > 0;
      else if (any_delta) {
        pos = false;
        for (const auto& x : w.delta)
          if (x != 0) {
            pos = x > 0;
            break;
          }
      } else {
        pos = false;
        for (const auto& x : w.eps)
          if (x != 0) {
            pos = x > 0;
            break;
          }
      }
    }
    if (pos) rs.positive.push_back(w);
  }
  std::sort(rs.positive.begin(), rs.positive.end());
  rs.simple = simple_roots(rs, rs.positive);
  rs.split = lemma_split(rs);
  return rs;
}

inline RootSystem with_positive(RootSystem rs, const std::vector<Weight>& P) {
  if (!is_positive_system(rs, P)) throw std::invalid_argument("not a positive system");
  rs.positive = detail::sorted(P);
  rs.simple = simple_roots(rs, rs.positive);
  return rs;
}

struct RootClass {
  bool odd;
  bool isotropic;
  bool compact;
};

inline RootClass classify_root(const RootSystem& rs, const Split& split, const Weight& a) {
  const Root* r = rs.find(a);
  if (!r) throw std::invalid_argument("not a root: " + a.str());
  const bool compact = detail::contains(split.compact, a) || detail::contains(split.compact, -a);
  return {r->odd, r->isotropic(), compact};
}

inline RootClass classify_root(const RootSystem& rs, const Weight& a) { return classify_root(rs, rs.split, a); }

/// 2(lambda, g)/(g, g) for anisotropic g, (lambda, g) for isotropic g.
inline Rational coroot_pairing(const Weight& lambda, const Weight& g) {
  const Rational gg = form(g, g);
  if (gg == 0) return form(lambda, g);
  return 2 * form(lambda, g) / gg;
}

/// rho = half sum of even positive roots minus half sum of odd positive roots.
inline Weight rho_vector(const RootSystem& rs, const std::vector<Weight>& P) {
  Weight r = rs.zero();
  for (const auto& a : P) {
    if (rs.is_odd(a))
      r -= Rational(1, 2) * a;
    else
      r += Rational(1, 2) * a;
  }
  return r;
}

inline Weight rho_vector(const RootSystem& rs) { return rho_vector(rs, rs.positive); }

struct Violation {
  std::string rule;  // "compact-closed", "noncompact-closed", "k-stable"
  Weight a, b, sum;
};

/// Checks the Definition-level conditions on a split positive system.
inline std::vector<Violation> admissibility_violations(const RootSystem& rs, const Split& s) {
  std::vector<Violation> out;
  const auto Pk = detail::sorted(s.compact);
  const auto Pn = detail::sorted(s.noncompact());
  auto in = [](const std::vector<Weight>& v, const Weight& w) { return std::binary_search(v.begin(), v.end(), w); };
  for (const auto& a : Pk)
    for (const auto& b : Pk) {
      const Weight c = a + b;
      if (rs.is_root(c) && sum_is_bracket(rs, a, b) && !in(Pk, c)) out.push_back({"compact-closed", a, b, c});
    }
  for (const auto& a : Pn)
    for (const auto& b : Pn) {
      const Weight c = a + b;
      if (rs.is_root(c) && sum_is_bracket(rs, a, b) && !in(Pn, c)) out.push_back({"noncompact-closed", a, b, c});
    }
  for (const auto& a0 : Pk)
    for (int sg = 0; sg < 2; ++sg) {
      const Weight a = sg ? -a0 : a0;
      for (const auto& b : Pn) {
        const Weight c = a + b;
        if (rs.is_root(c) && !in(Pn, c)) out.push_back({"k-stable", a, b, c});
      }
    }
  return out;
}

inline bool is_admissible(const RootSystem& rs, const Split& s) {
  if (!is_positive_system(rs, s.positive())) throw std::invalid_argument("split does not form a positive system");
  return admissibility_violations(rs, s).empty();
}

/// Literal form of the lemma's second bullet: a, b in P_n and a + b a root implies a + b in P_k.
inline std::vector<Violation> lemma_bullet_violations(const RootSystem& rs, const Split& s) {
  std::vector<Violation> out;
  const auto Pk = detail::sorted(s.compact);
  const auto Pn = s.noncompact();
  for (const auto& a : Pn)
    for (const auto& b : Pn) {
      const Weight c = a + b;
      if (rs.is_root(c) && sum_is_bracket(rs, a, b) && !std::binary_search(Pk.begin(), Pk.end(), c))
        out.push_back({"lemma-bullet", a, b, c});
    }
  return out;
}

/// Admissible positive systems containing the given compact positive roots.
/// Each noncompact +/- pair gets a sign; results are ordered by their noncompact sets.
inline std::vector<Split> enumerate_admissible(const RootSystem& rs, const std::vector<Weight>& compact) {
  const auto Pk = detail::sorted(compact);
  std::vector<Weight> reps;
  for (const auto& r : rs.roots) {
    const Weight& w = r.weight;
    if (detail::contains(Pk, w) || detail::contains(Pk, -w)) continue;
    if (-w < w) reps.push_back(w);
  }
  if (reps.size() > 24) throw std::invalid_argument("too many noncompact root pairs for exhaustive search");
  std::vector<Split> out;
  for (std::uint32_t mask = 0; mask < (1u << reps.size()); ++mask) {
    Split s;
    s.compact = Pk;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const Weight w = (mask >> i) & 1u ? -reps[i] : reps[i];
      (rs.is_odd(w) ? s.noncompact_odd : s.noncompact_even).push_back(w);
    }
    std::sort(s.noncompact_even.begin(), s.noncompact_even.end());
    std::sort(s.noncompact_odd.begin(), s.noncompact_odd.end());
    if (!is_positive_system(rs, s.positive())) continue;
    if (admissibility_violations(rs, s).empty()) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Split& a, const Split& b) { return a.noncompact() < b.noncompact(); });
  return out;
}

inline std::vector<Split> enumerate_admissible(const RootSystem& rs) { return enumerate_admissible(rs, rs.split.compact); }

}  // namespace hcsuper
