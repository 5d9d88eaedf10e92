#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "roots.hpp"
#include "supermatrix.hpp"

namespace hcsuper {

/// Sparse vector over the basis of a Lie superalgebra: (index, coefficient) sorted by index.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sparse_axpy(SparseVec& acc, const Rational& s, const SparseVec& v) {
  if (s == 0) return;
  std::map<int, Rational> m(acc.begin(), acc.end());
  for (const auto& [i, c] : v) {
    auto& x = m[i];
    x += s * c;
  }
  acc.clear();
  for (auto& [i, c] : m)
    if (c != 0) acc.emplace_back(i, c);
}

struct BasisElement {
  std::string label;
  bool odd = false;
  bool cartan = false;
  Weight weight;  // root for root vectors, zero for Cartan elements
  /// Cartan elements: vector v with lambda(H) = sum_i lambda_i v_i over eps then delta coordinates.
  Weight eval;
};

/// Matrix realization data: a split basis where the Cartan subalgebra is diagonal,
/// plus the change of basis T to the presentation used by the orthosymplectic form.
struct Realization {
  Family family = Family::B;
  int k = 0, n = 0;
  BlockShape shape;
  std::vector<Weight> coord_weight;      // weight of each split basis vector
  std::optional<Matrix<Rational>> form;  // invariant form in the split basis (osp only)
  Matrix<Cyclo> T, Tinv;                 // x = T y

  Weight zero() const { return Weight(k, n); }

  /// X^t J' + J' X for the split form (zero matrix means membership); empty for sl.
  SuperMatrix<Rational> lie_residual(const SuperMatrix<Rational>& x) const {
    if (!form) return SuperMatrix<Rational>(shape, Rational(0));
    const SuperMatrix<Rational> J(shape, shape, *form);
    return x.supertranspose() * J + J * x;
  }

  CMatrix to_standard(const SuperMatrix<Rational>& y) const {
    Matrix<Cyclo> yc(y.rows(), y.cols());
    for (int i = 0; i < y.rows(); ++i)
      for (int j = 0; j < y.cols(); ++j) yc(i, j) = Cyclo(y(i, j));
    return CMatrix(shape, shape, T * yc * Tinv);
  }
};

inline Realization make_realization(const RootSystem& rs) {
  Realization r;
  r.family = rs.family;
  r.k = rs.k;
  r.n = rs.n;
  const int k = rs.k, n = rs.n;
  if (rs.family == Family::A) {
    r.shape = {k, n};
    for (int a = 0; a < k; ++a) r.coord_weight.push_back(Weight::unit_eps(k, n, a));
    for (int b = 0; b < n; ++b) r.coord_weight.push_back(Weight::unit_delta(k, n, b));
    r.T = Matrix<Cyclo>::identity(k + n, Cyclo(0));
    r.Tinv = r.T;
    return r;
  }
  const int m = rs.m();
  const int N = m + 2 * n;
  r.shape = {m, 2 * n};
  r.coord_weight.assign(static_cast<std::size_t>(N), rs.zero());
  Matrix<Rational> J(N, N, Rational(0));
  Matrix<Cyclo> T(N, N);
  const Cyclo i = Cyclo::i();
  for (int j = 0; j < k; ++j) {
    const int a = 2 * j, b = 2 * j + 1;
    r.coord_weight[static_cast<std::size_t>(a)] = Weight::unit_eps(k, n, j);
    r.coord_weight[static_cast<std::size_t>(b)] = -Weight::unit_eps(k, n, j);
    J(a, b) = 1;
    J(b, a) = 1;
    // columns (1, i) and (1/2, -i/2) are isotropic for x^t x with pairing 1
    T(a, a) = 1;
    T(b, a) = i;
    T(a, b) = Cyclo(Rational(1, 2));
    T(b, b) = -i.scaled(Rational(1, 2));
  }
  if (m % 2 == 1) {
    J(m - 1, m - 1) = 1;
    T(m - 1, m - 1) = 1;
  }
  for (int q = 0; q < n; ++q) {
    const int a = m + q, b = m + n + q;
    r.coord_weight[static_cast<std::size_t>(a)] = Weight::unit_delta(k, n, q);
    r.coord_weight[static_cast<std::size_t>(b)] = -Weight::unit_delta(k, n, q);
    J(a, b) = -1;
    J(b, a) = 1;
    T(a, a) = 1;
    T(b, b) = 1;
  }
  r.form = J;
  r.T = T;
  auto Ti = inverse(T);
  if (!Ti) throw std::logic_error("change of basis is singular");
  r.Tinv = *Ti;
  return r;
}

/// Lie superalgebra with an explicit basis (root vectors and Cartan elements),
/// split-basis matrices and exact rational structure constants.
class LieSuperalgebra {
 public:
  RootSystem rs;
  Realization real;
  std::vector<BasisElement> basis;
  std::vector<SuperMatrix<Rational>> mats;  // split basis
  std::vector<std::vector<SparseVec>> table;

  int dim() const { return static_cast<int>(basis.size()); }
  int even_dim() const {
    int c = 0;
    for (const auto& b : basis) c += b.odd ? 0 : 1;
    return c;
  }
  int odd_dim() const { return dim() - even_dim(); }
  int rank() const {
    int c = 0;
    for (const auto& b : basis) c += b.cartan ? 1 : 0;
    return c;
  }

  const SparseVec& bracket(int i, int j) const { return table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  int index_of(const Weight& root) const {
    auto it = root_index_.find(root);
    if (it == root_index_.end()) throw std::invalid_argument("no root vector for " + root.str());
    return it->second;
  }
  bool has_root(const Weight& root) const { return root_index_.count(root) != 0; }

  /// lambda evaluated on Cartan basis element i.
  Rational evaluate(const Weight& lambda, int i) const {
    const auto& e = basis[static_cast<std::size_t>(i)].eval;
    Rational s = 0;
    for (int c = 0; c < e.size(); ++c) s += lambda.coord(c) * e.coord(c);
    return s;
  }

  /// lambda on an element of h given in basis coordinates.
  Rational evaluate(const Weight& lambda, const SparseVec& h) const {
    Rational s = 0;
    for (const auto& [i, c] : h) {
      if (!basis[static_cast<std::size_t>(i)].cartan) throw std::invalid_argument("element is not in the Cartan subalgebra");
      s += c * evaluate(lambda, i);
    }
    return s;
  }

  SuperMatrix<Rational> matrix_of(const SparseVec& v) const {
    SuperMatrix<Rational> m(real.shape, Rational(0));
    for (const auto& [i, c] : v) m += mats[static_cast<std::size_t>(i)].scaled(c);
    return m;
  }

  CMatrix standard_matrix(int i) const { return real.to_standard(mats[static_cast<std::size_t>(i)]); }

  /// Coordinates of a homogeneous-weight matrix in the basis; throws if outside the span.
  SparseVec decompose(const SuperMatrix<Rational>& z, const Weight& w) const {
    SparseVec out;
    if (z.is_zero()) return out;
    if (w.is_zero()) {
      for (int c = 0; c < z.rows(); ++c)
        for (int d = 0; d < z.cols(); ++d)
          if (c != d && z(c, d) != 0) throw std::logic_error("zero-weight element is not diagonal");
      std::vector<Rational> diag(static_cast<std::size_t>(z.rows()));
      for (int c = 0; c < z.rows(); ++c) diag[static_cast<std::size_t>(c)] = z(c, c);
      auto x = solve(cartan_diag_, diag);
      if (!x) throw std::logic_error("diagonal element outside the Cartan subalgebra");
      for (std::size_t q = 0; q < x->size(); ++q)
        if ((*x)[q] != 0) out.emplace_back(cartan_first_ + static_cast<int>(q), (*x)[q]);
      return out;
    }
    auto it = root_index_.find(w);
    if (it == root_index_.end()) throw std::logic_error("nonzero bracket with non-root weight " + w.str());
    const auto& x = mats[static_cast<std::size_t>(it->second)];
    for (int c = 0; c < x.rows(); ++c)
      for (int d = 0; d < x.cols(); ++d)
        if (x(c, d) != 0) {
          const Rational s = z(c, d) / x(c, d);
          if (x.scaled(s) != z) throw std::logic_error("root space is not one-dimensional");
          out.emplace_back(it->second, s);
          return out;
        }
    throw std::logic_error("zero root vector");
  }

  SuperMatrix<Rational> matrix_bracket(int i, int j) const {
    const auto& bi = basis[static_cast<std::size_t>(i)];
    const auto& bj = basis[static_cast<std::size_t>(j)];
    const auto& x = mats[static_cast<std::size_t>(i)];
    const auto& y = mats[static_cast<std::size_t>(j)];
    return (bi.odd && bj.odd) ? x * y + y * x : x * y - y * x;
  }

  void compute_table() {
    const int d = dim();
    table.assign(static_cast<std::size_t>(d), std::vector<SparseVec>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const Weight w = basis[static_cast<std::size_t>(i)].weight + basis[static_cast<std::size_t>(j)].weight;
        table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = decompose(matrix_bracket(i, j), w);
      }
  }

  void index_roots() {
    root_index_.clear();
    for (int i = 0; i < dim(); ++i)
      if (!basis[static_cast<std::size_t>(i)].cartan) root_index_.emplace(basis[static_cast<std::size_t>(i)].weight, i);
  }

  void set_cartan(int first, Matrix<Rational> diag) {
    cartan_first_ = first;
    cartan_diag_ = std::move(diag);
  }

 private:
  std::map<Weight, int> root_index_;
  int cartan_first_ = 0;
  Matrix<Rational> cartan_diag_;
};

namespace detail {

inline void make_primitive(SuperMatrix<Rational>& x) {
  mpz_class l = 1, g = 0;
  for (const auto& v : x.matrix().data()) {
    if (v == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
  }
  for (const auto& v : x.matrix().data()) {
    if (v == 0) continue;
    const mpz_class num = v.get_num() * (l / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return;
  const Rational s(l, g);
  x = x.scaled(s);
}

/// Nonzero element of the alpha root space in the split basis (unique up to scale).
inline SuperMatrix<Rational> root_space_vector(const Realization& r, const Weight& alpha) {
  const int N = r.shape.size();
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      if (r.coord_weight[static_cast<std::size_t>(a)] - r.coord_weight[static_cast<std::size_t>(b)] == alpha) cells.emplace_back(a, b);
  if (cells.empty()) throw std::logic_error("no matrix cells of weight " + alpha.str());
  std::vector<SuperMatrix<Rational>> units;
  for (auto [a, b] : cells) {
    SuperMatrix<Rational> e(r.shape, Rational(0));
    e(a, b) = 1;
    units.push_back(e);
  }
  const int M = N * N;
  Matrix<Rational> cond(M, static_cast<int>(cells.size()), Rational(0));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto res = r.lie_residual(units[c]);
    for (int p = 0; p < M; ++p) cond(p, static_cast<int>(c)) = res.matrix().data()[static_cast<std::size_t>(p)];
  }
  const auto ns = nullspace(cond);
  if (ns.size() != 1) throw std::logic_error("root space of " + alpha.str() + " has dimension " + std::to_string(ns.size()));
  SuperMatrix<Rational> x(r.shape, Rational(0));
  for (std::size_t c = 0; c < cells.size(); ++c) x += units[c].scaled(ns[0][c]);
  make_primitive(x);
  return x;
}

/// Required evaluation vector of H_g: lambda(H_g) = 2(lambda,g)/(g,g) or (lambda,g).
inline Weight coroot_eval(const Weight& g) {
  const Rational gg = form(g, g);
  Weight t = g;
  for (auto& x : t.delta) x = -x;
  if (gg != 0) t = Rational(2) / gg * t;
  return t;
}

}  // namespace detail

/// Builds the algebra for rs (its positive system fixes the labels X+ / X-) with
/// Chevalley-normalized pairs: [X_a, X_-a] = H_a for the coroot convention of coroot_pairing.
inline LieSuperalgebra build_lie_algebra(const RootSystem& rs) {
  LieSuperalgebra g;
  g.rs = rs;
  g.real = make_realization(rs);
  const auto& r = g.real;
  const int N = r.shape.size();

  // Cartan elements
  std::vector<SuperMatrix<Rational>> cartan;
  std::vector<Weight> evals;
  if (rs.family == Family::A) {
    const int total = rs.k + rs.n;
    for (int a = 0; a + 1 < total; ++a) {
      SuperMatrix<Rational> h(r.shape, Rational(0));
      h(a, a) = 1;
      h(a + 1, a + 1) = (a + 1 == rs.k) ? 1 : -1;
      Weight e = rs.zero();
      e.coord(a) = 1;
      e.coord(a + 1) = h(a + 1, a + 1);
      cartan.push_back(h);
      evals.push_back(e);
    }
  } else {
    for (int j = 0; j < rs.k; ++j) {
      SuperMatrix<Rational> h(r.shape, Rational(0));
      h(2 * j, 2 * j) = 1;
      h(2 * j + 1, 2 * j + 1) = -1;
      cartan.push_back(h);
      evals.push_back(Weight::unit_eps(rs.k, rs.n, j));
    }
    const int m = rs.m();
    for (int q = 0; q < rs.n; ++q) {
      SuperMatrix<Rational> h(r.shape, Rational(0));
      h(m + q, m + q) = 1;
      h(m + rs.n + q, m + rs.n + q) = -1;
      cartan.push_back(h);
      evals.push_back(Weight::unit_delta(rs.k, rs.n, q));
    }
  }

  Matrix<Rational> cdiag(N, static_cast<int>(cartan.size()), Rational(0));
  for (std::size_t q = 0; q < cartan.size(); ++q)
    for (int c = 0; c < N; ++c) cdiag(c, static_cast<int>(q)) = cartan[q](c, c);

  // roots: positive ones by height then weight; negatives mirror them
  std::vector<Weight> pos = rs.positive;
  std::stable_sort(pos.begin(), pos.end(), [&](const Weight& a, const Weight& b) {
    const long ha = height(rs, a), hb = height(rs, b);
    return ha != hb ? ha < hb : a < b;
  });
  std::vector<SuperMatrix<Rational>> xp, xm;
  for (const auto& a : pos) {
    auto x = detail::root_space_vector(r, a);
    auto y = detail::root_space_vector(r, -a);
    const bool odd = rs.is_odd(a);
    const auto h = odd ? x * y + y * x : x * y - y * x;
    // evaluation vector of h through its Cartan coordinates
    std::vector<Rational> hd(static_cast<std::size_t>(N));
    for (int c = 0; c < N; ++c) hd[static_cast<std::size_t>(c)] = h(c, c);
    const auto hx = solve(cdiag, hd);
    if (!hx) throw std::logic_error("bracket of opposite root vectors leaves the Cartan subalgebra");
    Weight v = rs.zero();
    for (std::size_t q = 0; q < hx->size(); ++q) v += (*hx)[q] * evals[q];
    // v must be proportional to the required coroot evaluation vector
    const Weight t = detail::coroot_eval(a);
    Rational s = 0;
    for (int c = 0; c < t.size(); ++c)
      if (t.coord(c) != 0) {
        s = v.coord(c) / t.coord(c);
        break;
      }
    if (s == 0 || s * t != v) throw std::logic_error("bracket of root vectors is not along the coroot of " + a.str());
    xp.push_back(x);
    xm.push_back(y.scaled(Rational(1) / s));
  }

  // order: negatives (reverse height), Cartan, positives
  for (int p = static_cast<int>(pos.size()) - 1; p >= 0; --p) {
    const auto& a = pos[static_cast<std::size_t>(p)];
    g.basis.push_back({"X-(" + a.str() + ")", rs.is_odd(a), false, -a, rs.zero()});
    g.mats.push_back(xm[static_cast<std::size_t>(p)]);
  }
  const int first_cartan = g.dim();
  for (std::size_t q = 0; q < cartan.size(); ++q) {
    g.basis.push_back({"H" + std::to_string(q + 1), false, true, rs.zero(), evals[q]});
    g.mats.push_back(cartan[q]);
  }
  for (std::size_t p = 0; p < pos.size(); ++p) {
    g.basis.push_back({"X+(" + pos[p].str() + ")", rs.is_odd(pos[p]), false, pos[p], rs.zero()});
    g.mats.push_back(xp[p]);
  }
  g.set_cartan(first_cartan, cdiag);
  g.index_roots();
  g.compute_table();
  return g;
}

/// Super Jacobi residual on basis triple (i, j, k) from the structure constants:
/// (-1)^{|i||k|}[i,[j,k]] + (-1)^{|j||i|}[j,[k,i]] + (-1)^{|k||j|}[k,[i,j]].
inline SparseVec jacobi_residual(const LieSuperalgebra& g, int i, int j, int k) {
  auto par = [&](int x) { return g.basis[static_cast<std::size_t>(x)].odd ? 1 : 0; };
  auto nested = [&](int a, int b, int c) {
    SparseVec out;
    for (const auto& [l, coef] : g.bracket(b, c)) sparse_axpy(out, coef, g.bracket(a, l));
    return out;
  };
  SparseVec acc;
  sparse_axpy(acc, (par(i) & par(k)) ? -1 : 1, nested(i, j, k));
  sparse_axpy(acc, (par(j) & par(i)) ? -1 : 1, nested(j, k, i));
  sparse_axpy(acc, (par(k) & par(j)) ? -1 : 1, nested(k, i, j));
  return acc;
}

/// Number of basis triples with a nonzero Jacobi residual.
inline long jacobi_failures(const LieSuperalgebra& g) {
  long bad = 0;
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j)
      for (int k = 0; k < g.dim(); ++k)
        if (!jacobi_residual(g, i, j, k).empty()) ++bad;
  return bad;
}

/// Root vector of alpha in the orthosymplectic (or sl) standard presentation.
inline CMatrix root_vector(const LieSuperalgebra& g, const Weight& alpha) { return g.standard_matrix(g.index_of(alpha)); }

}  // namespace hcsuper
