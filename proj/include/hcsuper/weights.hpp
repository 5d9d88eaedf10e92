#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "liealg.hpp"
#include "roots.hpp"

namespace hcsuper {

using Count = long long;

/// Super Kostant partition function over a list of positive roots given in
/// simple-root coordinates: even roots any multiplicity, odd roots at most once.
class PartitionFunction {
 public:
  PartitionFunction(std::vector<std::vector<long>> roots, std::vector<bool> odd)
      : roots_(std::move(roots)), odd_(std::move(odd)) {
    for (const auto& r : roots_) {
      long s = 0;
      for (long x : r) {
        if (x < 0) throw std::invalid_argument("partition roots must lie in the positive cone");
        s += x;
      }
      if (s == 0) throw std::invalid_argument("partition roots must be nonzero");
    }
  }

  Count operator()(const std::vector<long>& target) {
    for (long x : target)
      if (x < 0) return 0;
    return rec(0, target);
  }

 private:
  Count rec(std::size_t i, const std::vector<long>& t) {
    if (i == roots_.size()) return std::all_of(t.begin(), t.end(), [](long x) { return x == 0; }) ? 1 : 0;
    auto key = std::make_pair(i, t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Count total = 0;
    std::vector<long> cur = t;
    const auto& a = roots_[i];
    for (long r = 0;; ++r) {
      total += rec(i + 1, cur);
      if (odd_[i] && r >= 1) break;
      bool ok = true;
      for (std::size_t c = 0; c < cur.size(); ++c) {
        cur[c] -= a[c];
        ok &= cur[c] >= 0;
      }
      if (!ok) break;
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<std::vector<long>> roots_;
  std::vector<bool> odd_;
  std::map<std::pair<std::size_t, std::vector<long>>, Count> memo_;
};

inline std::vector<long> simple_coords_or_throw(const RootSystem& rs, const Weight& w) {
  auto c = coordinates(rs.simple, w);
  if (!c) throw std::invalid_argument("weight outside the root lattice span: " + w.str());
  std::vector<long> out;
  for (const auto& x : *c) {
    if (x.get_den() != 1) throw std::invalid_argument("weight outside the root lattice: " + w.str());
    out.push_back(x.get_num().get_si());
  }
  return out;
}

inline PartitionFunction make_partition_function(const RootSystem& rs, const std::vector<Weight>& roots) {
  std::vector<std::vector<long>> coords;
  std::vector<bool> odd;
  for (const auto& a : roots) {
    coords.push_back(simple_coords_or_throw(rs, a));
    odd.push_back(rs.is_odd(a));
  }
  return PartitionFunction(std::move(coords), std::move(odd));
}

/// Number of exponent vectors r with sum r_a a = d over `roots` (odd exponents capped at 1).
inline Count super_kostant_partition(const RootSystem& rs, const std::vector<Weight>& roots, const Weight& d) {
  auto c = coordinates(rs.simple, d);
  if (!c) return 0;
  std::vector<long> t;
  for (const auto& x : *c) {
    if (x.get_den() != 1) return 0;
    t.push_back(x.get_num().get_si());
  }
  return make_partition_function(rs, roots)(t);
}

inline Count super_kostant_partition(const RootSystem& rs, const Weight& d) { return super_kostant_partition(rs, rs.positive, d); }

/// All cone elements sum c_i alpha_i (alpha_i simple) with 0 <= sum c_i <= depth, ordered by depth then weight.
inline std::vector<Weight> cone_weights(const RootSystem& rs, int depth) {
  const int r = static_cast<int>(rs.simple.size());
  std::vector<std::pair<int, Weight>> out;
  std::vector<int> c(static_cast<std::size_t>(r), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == r) {
      Weight w = rs.zero();
      int used = 0;
      for (int q = 0; q < r; ++q) {
        w += Rational(c[static_cast<std::size_t>(q)]) * rs.simple[static_cast<std::size_t>(q)];
        used += c[static_cast<std::size_t>(q)];
      }
      out.emplace_back(used, w);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, left - v);
    }
    c[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0, depth);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first != b.first ? a.first < b.first : a.second < b.second; });
  std::vector<Weight> ws;
  for (auto& [dep, w] : out) ws.push_back(std::move(w));
  return ws;
}

/// Weight multiplicity table keyed by d, complete up to `depth`.
struct MultTable {
  int depth = 0;
  std::vector<std::pair<Weight, Count>> rows;  // graded order, zero rows omitted

  Count at(const Weight& d) const {
    for (const auto& [w, c] : rows)
      if (w == d) return c;
    return 0;
  }
};

/// Characters of the torus on the polynomial coordinates t_a (a in P, odd t_a squaring to zero):
/// every monomial prod t_a^{r_a} of depth <= cutoff contributes to the eigenvalue sum r_a a.
inline std::map<Weight, Count> torus_monomial_weights(const RootSystem& rs, const std::vector<Weight>& P, int cutoff) {
  std::vector<std::pair<Weight, long>> roots;
  for (const auto& a : P) roots.emplace_back(a, height(rs, a));
  std::map<Weight, Count> out;
  auto rec = [&](auto&& self, std::size_t i, const Weight& acc, long used) -> void {
    if (i == roots.size()) {
      ++out[acc];
      return;
    }
    const auto& [a, h] = roots[i];
    const long cap = rs.is_odd(a) ? 1 : cutoff;
    Weight cur = acc;
    for (long r = 0; r <= cap && used + r * h <= cutoff; ++r) {
      self(self, i + 1, cur, used + r * h);
      cur += a;
    }
  };
  rec(rec, 0, rs.zero(), 0);
  return out;
}

/// Torus spectrum on functions of the big-cell coordinates: the multiplicity of
/// the character labelled d - lambda. Independent of lambda.
inline Count torus_spectrum_mult(const RootSystem& rs, const Weight& /*lambda*/, const Weight& d) {
  auto dep = depth_of(rs, d);
  if (!dep || *dep < 0 || !simple_coordinates(rs, d)) return 0;
  const auto table = torus_monomial_weights(rs, rs.positive, static_cast<int>(*dep));
  auto it = table.find(d);
  return it == table.end() ? 0 : it->second;
}

/// Depth-d multiplicity of the Verma module: super_kostant_partition(d).
inline Count verma_weight_mult(const RootSystem& rs, const Weight& /*lambda*/, const Weight& d) {
  return super_kostant_partition(rs, d);
}

inline MultTable partition_table(const RootSystem& rs, const std::vector<Weight>& roots, int depth) {
  MultTable t;
  t.depth = depth;
  auto pf = make_partition_function(rs, roots);
  for (const auto& w : cone_weights(rs, depth)) {
    const Count c = pf(simple_coords_or_throw(rs, w));
    if (c != 0) t.rows.emplace_back(w, c);
  }
  return t;
}

inline MultTable torus_spectrum_table(const RootSystem& rs, int depth) {
  MultTable t;
  t.depth = depth;
  const auto table = torus_monomial_weights(rs, rs.positive, depth);
  for (const auto& w : cone_weights(rs, depth)) {
    auto it = table.find(w);
    if (it != table.end() && it->second != 0) t.rows.emplace_back(w, it->second);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Finite-dimensional k-modules via Freudenthal's recursion.

/// Positive-definite form on h^*: (eps_i, eps_j) = (delta_i, delta_j) = delta_ij.
inline Rational euclid(const Weight& a, const Weight& b) {
  Rational s = 0;
  for (int i = 0; i < a.size(); ++i) s += a.coord(i) * b.coord(i);
  return s;
}

struct KCharacter {
  Weight highest;
  std::map<Weight, Count> mult;  // nonzero multiplicities
  bool finite = false;           // support closed under the computed window
  bool consistent = true;        // no zero-coefficient step with nonzero right side
  Count dimension() const {
    Count s = 0;
    for (const auto& [w, c] : mult) s += c;
    return s;
  }
  Count at(const Weight& w) const {
    auto it = mult.find(w);
    return it == mult.end() ? 0 : it->second;
  }
};

inline Rational k_coroot(const Weight& mu, const Weight& a) { return 2 * euclid(mu, a) / euclid(a, a); }

/// Freudenthal recursion for the irreducible module of the even reductive algebra
/// with positive roots Pk (even roots) and highest weight lambda.
inline KCharacter freudenthal(const RootSystem& rs, const std::vector<Weight>& Pk, const Weight& lambda, int extra_layers = -1) {
  KCharacter ch;
  ch.highest = lambda;
  std::vector<Weight> simple;
  for (const auto& a : Pk) {
    bool dec = false;
    for (const auto& b : Pk)
      for (const auto& c : Pk)
        if (b != c && b + c == a) dec = true;
    if (!dec) simple.push_back(a);
  }
  std::sort(simple.begin(), simple.end());
  Weight rho = rs.zero();
  for (const auto& a : Pk) rho += Rational(1, 2) * a;
  long maxh = 1;
  std::vector<long> heights;
  for (const auto& a : Pk) {
    auto c = coordinates(simple, a);
    Rational h = 0;
    for (const auto& x : *c) h += x;
    heights.push_back(h.get_num().get_si());
    maxh = std::max(maxh, heights.back());
  }
  // lowest weight candidate: lower by simple reflections while the pairing is a positive integer
  Weight low = lambda;
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& a : simple) {
      const Rational p = k_coroot(low, a);
      if (p > 0 && p.get_den() == 1) {
        low -= p * a;
        moved = true;
      }
    }
  }
  long span = 0;
  if (!simple.empty()) {
    auto c = coordinates(simple, lambda - low);
    Rational s = 0;
    for (const auto& x : *c) s += x;
    span = s.get_num().get_si();
  }
  const long window = extra_layers >= 0 ? extra_layers : maxh + 1;
  const long limit = span + window;
  const Rational top = euclid(lambda + rho, lambda + rho);
  // weights lambda - sum c_i s_i by layer
  std::map<Weight, Rational> m;
  m[lambda] = 1;
  std::vector<std::vector<Weight>> layers(static_cast<std::size_t>(limit + 1));
  layers[0].push_back(lambda);
  for (long L = 1; L <= limit; ++L) {
    std::set<Weight> seen;
    for (const auto& prev : layers[static_cast<std::size_t>(L - 1)])
      for (const auto& a : simple) seen.insert(prev - a);
    for (const auto& mu : seen) {
      Rational rhs = 0;
      for (const auto& a : Pk)
        for (Weight up = mu + a;; up += a) {
          auto it = m.find(up);
          // every weight strictly between mu and lambda is already tabulated
          if (it == m.end()) break;
          rhs += 2 * it->second * euclid(up, a);
        }
      const Rational coef = top - euclid(mu + rho, mu + rho);
      Rational val = 0;
      if (coef == 0) {
        if (rhs != 0) ch.consistent = false;
      } else {
        val = rhs / coef;
      }
      m[mu] = val;
      layers[static_cast<std::size_t>(L)].push_back(mu);
    }
  }
  bool tail_zero = true;
  for (long L = span + 1; L <= limit; ++L)
    for (const auto& mu : layers[static_cast<std::size_t>(L)])
      if (m[mu] != 0) tail_zero = false;
  ch.finite = tail_zero && ch.consistent;
  for (const auto& [w, v] : m)
    if (v != 0) {
      if (v.get_den() != 1 || v < 0) ch.consistent = false;
      ch.mult[w] = v.get_num().get_si();
    }
  if (!ch.consistent) ch.finite = false;
  return ch;
}

struct DominanceReport {
  bool integral = false;
  bool k_dominant = false;
  bool center_nonzero = false;
  int center_dim = 0;
  const char* k_type_lifting = "not checked";
};

/// Dimension of the centre of k = h + sum over compact roots, from the structure constants.
inline int k_center_dimension(const LieSuperalgebra& g, const std::vector<Weight>& Pk) {
  std::vector<int> kbasis;
  for (int i = 0; i < g.dim(); ++i) {
    const auto& b = g.basis[static_cast<std::size_t>(i)];
    if (b.cartan || detail::contains(Pk, b.weight) || detail::contains(Pk, -b.weight)) kbasis.push_back(i);
  }
  // x = sum x_i k_i central iff [x, k_j] = 0 for all j
  const int nk = static_cast<int>(kbasis.size());
  Matrix<Rational> cond(g.dim() * nk, nk, Rational(0));
  for (int j = 0; j < nk; ++j)
    for (int i = 0; i < nk; ++i)
      for (const auto& [l, c] : g.bracket(kbasis[static_cast<std::size_t>(i)], kbasis[static_cast<std::size_t>(j)])) cond(j * g.dim() + l, i) += c;
  return nk - rank(cond);
}

inline DominanceReport dominance_check(const LieSuperalgebra& g, const Split& split, const Weight& lambda) {
  DominanceReport r;
  r.integral = true;
  for (const auto& root : g.rs.roots)
    if (!root.odd && coroot_pairing(lambda, root.weight).get_den() != 1) r.integral = false;
  r.k_dominant = true;
  for (const auto& a : split.compact) {
    const Rational p = coroot_pairing(lambda, a);
    if (p < 0 || p.get_den() != 1) r.k_dominant = false;
  }
  r.center_dim = k_center_dimension(g, split.compact);
  r.center_nonzero = r.center_dim >= 1;
  return r;
}

/// (lambda + rho)(H_g) <= 0 for all g in P_n, strictly for isotropic g.
inline bool irreducibility_criterion(const RootSystem& rs, const Split& split, const Weight& lambda) {
  const Weight lr = lambda + rho_vector(rs, split.positive());
  for (const auto& g : split.noncompact()) {
    const Rational v = coroot_pairing(lr, g);
    if (v > 0) return false;
    if (form(g, g) == 0 && v == 0) return false;
  }
  return true;
}

/// Multiplicity of lambda - d in U(g) (x)_{U(k + p+)} F_lambda: sum over weights nu of F of
/// m_F(nu) times the number of p^- monomials of weight (lambda - d) - nu.
inline Count hc_universal_mult(const RootSystem& rs, const Split& split, const Weight& lambda, const Weight& d) {
  for (const auto& a : split.compact) {
    const Rational p = k_coroot(lambda, a);
    if (p < 0 || p.get_den() != 1) throw std::invalid_argument("highest weight is not dominant integral for the compact roots");
  }
  const auto F = freudenthal(rs, split.compact, lambda);
  if (!F.finite) throw std::invalid_argument("compact module is not finite-dimensional");
  auto pf = make_partition_function(rs, split.noncompact());
  Count total = 0;
  for (const auto& [nu, mF] : F.mult) {
    auto c = coordinates(rs.simple, nu - lambda + d);
    if (!c) continue;
    std::vector<long> t;
    bool ok = true;
    for (const auto& x : *c) {
      if (x.get_den() != 1) ok = false;
      t.push_back(x.get_num().get_si());
    }
    if (ok) total += mF * pf(t);
  }
  return total;
}

}  // namespace hcsuper
