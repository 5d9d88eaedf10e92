#pragma once

#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "random.hpp"
#include "supermatrix.hpp"

namespace hcsuper {

/// Fixed data of Osp(m|2n): the form J, the Cayley matrix L, the conjugation matrix F and the centre element c.
struct OspContext {
  int m = 0, n = 0;
  CMatrix J, L, Linv, F, Finv, c;

  BlockShape shape() const { return {m, 2 * n}; }
  int size() const { return m + 2 * n; }
};

namespace detail {

inline CMatrix osp_block_matrix(int m, int n, const Cyclo& a, const Cyclo& b11, const Cyclo& b12, const Cyclo& b21,
                                const Cyclo& b22) {
  CMatrix x(BlockShape{m, 2 * n});
  for (int i = 0; i < m; ++i) x(i, i) = a;
  for (int i = 0; i < n; ++i) {
    x(m + i, m + i) = b11;
    x(m + i, m + n + i) = b12;
    x(m + n + i, m + i) = b21;
    x(m + n + i, m + n + i) = b22;
  }
  return x;
}

}  // namespace detail

/// sqrt(2i) is taken as 1 + i, the value for which L lies in Osp(m|2n).
inline OspContext make_osp_context(int m, int n) {
  if (m < 0 || n < 1) throw std::invalid_argument("Osp(m|2n) needs m >= 0 and n >= 1");
  OspContext ctx;
  ctx.m = m;
  ctx.n = n;
  const Cyclo i = Cyclo::i();
  const Cyclo h(Rational(1, 2));
  ctx.J = detail::osp_block_matrix(m, n, 1, 0, -1, 1, 0);
  const Cyclo ai = (Cyclo(1) + i) * h;  // i / sqrt(2i)
  const Cyclo bi = (Cyclo(1) - i) * h;  // 1 / sqrt(2i)
  ctx.L = detail::osp_block_matrix(m, n, 1, ai, ai, -bi, bi);
  ctx.Linv = detail::osp_block_matrix(m, n, 1, bi, -ai, bi, ai);
  // F = J^{-1} L^t J conj(L) = L^{-1} conj(L)
  ctx.F = detail::osp_block_matrix(m, n, 1, 0, -i, -i, 0);
  ctx.Finv = detail::osp_block_matrix(m, n, 1, 0, i, i, 0);
  ctx.c = detail::osp_block_matrix(m, n, 0, i * h, 0, 0, -(i * h));
  return ctx;
}

// ---------------------------------------------------------------------------
// Ring-generic helpers.

inline Grassmann like_zero(const Grassmann& like) { return Grassmann(like.gens()); }
inline Cyclo like_zero(const Cyclo&) { return Cyclo(); }
inline Rational like_zero(const Rational&) { return Rational(0); }

inline GMatrix embed(const CMatrix& a, const Grassmann& like) { return lift(a, like.gens()); }
inline CMatrix embed(const CMatrix& a, const Cyclo&) { return a; }

/// Matrix product that keeps the ring of `like` when the inner dimension is zero.
template <class R>
Matrix<R> mul(const Matrix<R>& a, const Matrix<R>& b, const R& like) {
  if (a.cols() == 0) return Matrix<R>(a.rows(), b.cols(), like_zero(like));
  return a * b;
}

template <class R>
R ring_like(const SuperMatrix<R>& a) {
  for (const auto& x : a.matrix().data()) return like_zero(x);
  return R();
}

/// Nine blocks of an (m|2n) matrix in the a / b1 / b2 grading.
template <class R>
struct OspBlocks {
  Matrix<R> a, al1, al2, be1, b11, b12, be2, b21, b22;
};

template <class R>
OspBlocks<R> osp_blocks(const SuperMatrix<R>& A, const OspContext& ctx) {
  const int m = ctx.m, n = ctx.n;
  const auto& M = A.matrix();
  return {M.block(0, 0, m, m),         M.block(0, m, m, n),         M.block(0, m + n, m, n),
          M.block(m, 0, n, m),         M.block(m, m, n, n),         M.block(m, m + n, n, n),
          M.block(m + n, 0, n, m),     M.block(m + n, m, n, n),     M.block(m + n, m + n, n, n)};
}

template <class R>
void check_osp_shape(const SuperMatrix<R>& A, const OspContext& ctx) {
  if (!(A.row_shape() == ctx.shape()) || !(A.col_shape() == ctx.shape()))
    throw ShapeError("expected an (" + std::to_string(ctx.m) + "|" + std::to_string(2 * ctx.n) + ") supermatrix");
}

// ---------------------------------------------------------------------------
// Group membership.

template <class R>
struct MembershipReport {
  bool member = false;         // A^t J A = J
  bool blocks_member = false;  // the six block relations
  SuperMatrix<R> residual;     // A^t J A - J
  std::vector<std::pair<std::string, Matrix<R>>> block_residuals;
};

/// A^t J A - J with the supertranspose, and the six block relations written with plain block transposes.
template <class R>
MembershipReport<R> osp_membership(const SuperMatrix<R>& A, const OspContext& ctx) {
  check_osp_shape(A, ctx);
  if (A.parity() != Parity::even) throw ShapeError("group membership needs an even supermatrix");
  const R like = ring_like(A);
  const auto J = embed(ctx.J, like);
  MembershipReport<R> rep;
  rep.residual = A.supertranspose() * J * A - J;
  rep.member = rep.residual.is_zero();
  const auto B = osp_blocks(A, ctx);
  auto mm = [&](const Matrix<R>& x, const Matrix<R>& y) { return mul(x, y, like); };
  auto T = [](const Matrix<R>& x) { return x.transpose(); };
  const auto Im = Matrix<R>::identity(ctx.m, ring_one(like));
  const auto In = Matrix<R>::identity(ctx.n, ring_one(like));
  rep.block_residuals = {
      {"a^t a + be2^t be1 - be1^t be2 - 1", mm(T(B.a), B.a) + mm(T(B.be2), B.be1) - mm(T(B.be1), B.be2) - Im},
      {"al2^t al2 + b12^t b22 - b22^t b12", mm(T(B.al2), B.al2) + mm(T(B.b12), B.b22) - mm(T(B.b22), B.b12)},
      {"a^t al1 + be2^t b11 - be1^t b21", mm(T(B.a), B.al1) + mm(T(B.be2), B.b11) - mm(T(B.be1), B.b21)},
      {"a^t al2 + be2^t b12 - be1^t b22", mm(T(B.a), B.al2) + mm(T(B.be2), B.b12) - mm(T(B.be1), B.b22)},
      {"al1^t al1 + b11^t b21 - b21^t b11", mm(T(B.al1), B.al1) + mm(T(B.b11), B.b21) - mm(T(B.b21), B.b11)},
      {"al1^t al2 + b11^t b22 - b21^t b12 - 1", mm(T(B.al1), B.al2) + mm(T(B.b11), B.b22) - mm(T(B.b21), B.b12) - In},
  };
  rep.blocks_member = true;
  for (const auto& [name, r] : rep.block_residuals)
    if (!r.is_zero()) rep.blocks_member = false;
  return rep;
}

template <class R>
bool is_osp_member(const SuperMatrix<R>& A, const OspContext& ctx) {
  return osp_membership(A, ctx).member;
}

enum class RealForm { real, D };

/// real: fixed by entrywise conjugation; D: A = F conj(A) F^{-1}. Conjugation acts on coefficients only.
template <class R>
bool real_form_membership(const SuperMatrix<R>& A, RealForm which, const OspContext& ctx) {
  if (!is_osp_member(A, ctx)) throw std::invalid_argument("matrix is not in Osp(m|2n)");
  const R like = ring_like(A);
  if (which == RealForm::real) return A == A.conj();
  return A == embed(ctx.F, like) * A.conj() * embed(ctx.Finv, like);
}

// ---------------------------------------------------------------------------
// Lie superalgebra osp(m|2n) in the J presentation.

/// X^t J + J X for a homogeneous X (each parity part checked separately when mixed).
inline CMatrix lie_residual(const CMatrix& X, const OspContext& ctx) {
  return X.supertranspose() * ctx.J + ctx.J * X;
}

inline CMatrix even_part(const CMatrix& X) {
  CMatrix r = X;
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      if (X.row_shape().is_odd(i) != X.col_shape().is_odd(j)) r(i, j) = Cyclo();
  return r;
}

inline CMatrix odd_part(const CMatrix& X) { return X - even_part(X); }

inline bool lie_membership(const CMatrix& X, const OspContext& ctx) {
  check_osp_shape(X, ctx);
  return lie_residual(even_part(X), ctx).is_zero() && lie_residual(odd_part(X), ctx).is_zero();
}

/// Nullspace of X -> X^t J + J X over the entries; rational basis, homogeneous vectors.
inline std::vector<SuperMatrix<Rational>> osp_lie_basis_rational(const OspContext& ctx) {
  const int N = ctx.size();
  const BlockShape sh = ctx.shape();
  Matrix<Rational> Jr(N, N, Rational(0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) Jr(i, j) = ctx.J(i, j).to_rational();
  // (X^t)_{ij} = s_{ij} X_{ji}, s = -1 for odd row index i and even column index j
  auto sgn = [&](int i, int j) { return (sh.is_odd(i) && !sh.is_odd(j)) ? -1 : 1; };
  Matrix<Rational> eq(N * N, N * N, Rational(0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int row = i * N + j;
      for (int k = 0; k < N; ++k) {
        // (X^t J)_{ij} = sum_k s_{ik} X_{ki} J_{kj}
        if (Jr(k, j) != 0) eq(row, k * N + i) += sgn(i, k) * Jr(k, j);
        // (J X)_{ij} = sum_k J_{ik} X_{kj}
        if (Jr(i, k) != 0) eq(row, k * N + j) += Jr(i, k);
      }
    }
  std::vector<SuperMatrix<Rational>> basis;
  for (const auto& v : nullspace(eq)) {
    SuperMatrix<Rational> X(sh, Rational(0));
    for (int q = 0; q < N * N; ++q) X(q / N, q % N) = v[static_cast<std::size_t>(q)];
    basis.push_back(std::move(X));
  }
  return basis;
}

inline CMatrix to_cyclo(const SuperMatrix<Rational>& X) {
  CMatrix c(X.row_shape(), X.col_shape());
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j) c(i, j) = Cyclo(X(i, j));
  return c;
}

inline std::vector<CMatrix> osp_lie_basis(const OspContext& ctx) {
  std::vector<CMatrix> out;
  for (const auto& X : osp_lie_basis_rational(ctx)) out.push_back(to_cyclo(X));
  return out;
}

/// (even, odd) dimension of a list of homogeneous matrices.
template <class R>
std::pair<int, int> parity_counts(const std::vector<SuperMatrix<R>>& basis) {
  int e = 0, o = 0;
  for (const auto& X : basis) (X.parity() == Parity::odd ? o : e)++;
  return {e, o};
}

inline std::pair<int, int> osp_dimension_formula(int m, int n) { return {m * (m - 1) / 2 + 2 * n * n + n, 2 * m * n}; }

// ---------------------------------------------------------------------------
// Real-linear algebra on complex matrices (coefficients in Q(zeta_8)).

namespace detail {

inline std::vector<Rational> flatten(const CMatrix& X) {
  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(4 * X.rows() * X.cols()));
  for (const auto& x : X.matrix().data())
    for (int k = 0; k < 4; ++k) v.push_back(x[k]);
  return v;
}

}  // namespace detail

/// Greedy Q-linearly independent subset (real independence for the entries used here).
inline std::vector<CMatrix> independent_subset(const std::vector<CMatrix>& cands) {
  std::vector<CMatrix> out;
  std::vector<std::vector<Rational>> rows;
  for (const auto& X : cands) {
    if (X.is_zero()) continue;
    auto v = detail::flatten(X);
    rows.push_back(v);
    Matrix<Rational> M(static_cast<int>(rows.size()), static_cast<int>(v.size()), Rational(0));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t q = 0; q < v.size(); ++q) M(static_cast<int>(r), static_cast<int>(q)) = rows[r][q];
    if (rank(M) == static_cast<int>(rows.size()))
      out.push_back(X);
    else
      rows.pop_back();
  }
  return out;
}

/// Conjugation defining the D real form on the Lie algebra: X -> F conj(X) F^{-1}.
inline CMatrix sigma_D(const CMatrix& X, const OspContext& ctx) { return ctx.F * X.conj() * ctx.Finv; }

inline bool in_osp_D(const CMatrix& X, const OspContext& ctx) { return lie_membership(X, ctx) && sigma_D(X, ctx) == X; }

/// Real basis of osp_D from X + sigma(X) and i (X - sigma(X)) over a complex basis.
inline std::vector<CMatrix> osp_D_basis(const OspContext& ctx) {
  std::vector<CMatrix> cands;
  for (const auto& B : osp_lie_basis(ctx)) {
    const CMatrix s = sigma_D(B, ctx);
    cands.push_back(B + s);
    cands.push_back((B - s).scaled(Cyclo::i()));
  }
  return independent_subset(cands);
}

/// Cartan involution: -conj(X)^t on even parts, -i conj(X)^t on odd parts.
inline CMatrix theta(const CMatrix& X) {
  const CMatrix e = even_part(X), o = odd_part(X);
  return -(e.conj().supertranspose()) - o.conj().supertranspose().scaled(Cyclo::i());
}

/// (k, p): even part split by the theta-eigenvalue, odd part wholly in p.
inline std::pair<CMatrix, CMatrix> cartan_split(const CMatrix& X, const OspContext& ctx) {
  if (!in_osp_D(X, ctx)) throw std::invalid_argument("matrix is not in osp_D");
  const CMatrix e = even_part(X), o = odd_part(X);
  const CMatrix te = -(e.conj().supertranspose());
  const Cyclo half(Rational(1, 2));
  const CMatrix k = (e + te).scaled(half);
  const CMatrix p = (e - te).scaled(half) + o;
  return {k, p};
}

inline std::pair<std::vector<CMatrix>, std::vector<CMatrix>> cartan_bases(const OspContext& ctx) {
  std::vector<CMatrix> ks, ps;
  for (const auto& X : osp_D_basis(ctx)) {
    auto [k, p] = cartan_split(X, ctx);
    ks.push_back(k);
    ps.push_back(p);
  }
  return {independent_subset(ks), independent_subset(ps)};
}

/// ad(c) on even matrices, ad(2c) on odd ones.
inline CMatrix complex_structure_J(const CMatrix& X, const OspContext& ctx) {
  switch (X.parity()) {
    case Parity::even:
      return ctx.c * X - X * ctx.c;
    case Parity::odd:
      return (ctx.c * X - X * ctx.c).scaled(Cyclo(2));
    default:
      throw ShapeError("complex structure needs a homogeneous matrix");
  }
}

// ---------------------------------------------------------------------------
// Harish-Chandra decomposition by block pattern.

enum class HCPart { k, p_plus, p_minus };

/// Block index 0 = a, 1 = b1, 2 = b2.
inline int osp_block_index(int i, const OspContext& ctx) { return i < ctx.m ? 0 : (i < ctx.m + ctx.n ? 1 : 2); }

inline HCPart hc_part_of(int bi, int bj) {
  if (bi == bj) return HCPart::k;
  if ((bi == 0 && bj == 2) || (bi == 1 && bj == 0) || (bi == 1 && bj == 2)) return HCPart::p_plus;
  return HCPart::p_minus;
}

struct HCParts {
  CMatrix k, p_plus, p_minus;
};

inline HCParts hc_split(const CMatrix& X, const OspContext& ctx) {
  check_osp_shape(X, ctx);
  HCParts h{CMatrix(ctx.shape()), CMatrix(ctx.shape()), CMatrix(ctx.shape())};
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j) {
      if (X(i, j).is_zero()) continue;
      switch (hc_part_of(osp_block_index(i, ctx), osp_block_index(j, ctx))) {
        case HCPart::k:
          h.k(i, j) = X(i, j);
          break;
        case HCPart::p_plus:
          h.p_plus(i, j) = X(i, j);
          break;
        case HCPart::p_minus:
          h.p_minus(i, j) = X(i, j);
          break;
      }
    }
  return h;
}

inline bool lies_in(const CMatrix& X, HCPart part, const OspContext& ctx) {
  const auto h = hc_split(X, ctx);
  switch (part) {
    case HCPart::k:
      return h.p_plus.is_zero() && h.p_minus.is_zero();
    case HCPart::p_plus:
      return h.k.is_zero() && h.p_minus.is_zero();
    default:
      return h.k.is_zero() && h.p_plus.is_zero();
  }
}

// ---------------------------------------------------------------------------
// Chart points of the Lagrangian: the column [zeta; z; 1].

enum class ChartTag { siegel, disc };

inline const char* chart_name(ChartTag t) { return t == ChartTag::siegel ? "siegel" : "disc"; }

struct ChartPoint {
  Matrix<Grassmann> z;     // n x n, even entries
  Matrix<Grassmann> zeta;  // m x n, odd entries
  ChartTag tag = ChartTag::siegel;

  int gens() const { return z.rows() > 0 ? z(0, 0).gens() : 0; }
  friend bool operator==(const ChartPoint& a, const ChartPoint& b) { return a.z == b.z && a.zeta == b.zeta; }
};

/// zeta^t zeta + z^t - z.
inline Matrix<Grassmann> chart_constraint_residual(const ChartPoint& p) {
  const Grassmann like(p.gens());
  return mul(p.zeta.transpose(), p.zeta, like) + p.z.transpose() - p.z;
}

/// Hermitian positivity by leading principal minors.
inline bool hermitian_positive(const Matrix<Cyclo>& h) {
  for (int k = 1; k <= h.rows(); ++k) {
    const Cyclo d = determinant(h.block(0, 0, k, k));
    if (!d.is_real() || d.real_sign() <= 0) return false;
  }
  return true;
}

/// body(Im z) positive definite.
inline bool siegel_body_positive(const ChartPoint& p) {
  const auto Z = body_matrix(p.z);
  Matrix<Cyclo> Y(Z.rows(), Z.cols());
  const Cyclo inv2i = Cyclo(Rational(-1, 2)) * Cyclo::i();  // 1 / (2i)
  for (int i = 0; i < Z.rows(); ++i)
    for (int j = 0; j < Z.cols(); ++j) Y(i, j) = (Z(i, j) - Z(i, j).conj()) * inv2i;
  return hermitian_positive(Y);
}

/// 1 - conj(body z) body z positive definite.
inline bool disc_body_inside(const ChartPoint& p) {
  const auto Z = body_matrix(p.z);
  Matrix<Cyclo> Zb = Z.map([](const Cyclo& x) { return x.conj(); });
  return hermitian_positive(Matrix<Cyclo>::identity(Z.rows(), Cyclo(1)) - Zb * Z);
}

inline bool is_chart_point(const ChartPoint& p) {
  for (const auto& x : p.z.data())
    if (!x.is_even()) return false;
  for (const auto& x : p.zeta.data())
    if (!x.is_odd()) return false;
  return chart_constraint_residual(p).is_zero();
}

inline bool is_siegel_point(const ChartPoint& p) { return is_chart_point(p) && siegel_body_positive(p); }
inline bool is_disc_point(const ChartPoint& p) { return is_chart_point(p) && disc_body_inside(p); }

/// [[1, zeta, 0], [zeta^t, z, -1], [0, 1, 0]].
inline GMatrix chart_matrix(const ChartPoint& p, const OspContext& ctx) {
  const Grassmann like(p.gens());
  const int m = ctx.m, n = ctx.n;
  GMatrix g(ctx.shape(), like);
  auto& M = g.matrix();
  M.set_block(0, 0, Matrix<Grassmann>::identity(m, Grassmann(like.gens(), 1)));
  M.set_block(0, m, p.zeta);
  M.set_block(m, 0, p.zeta.transpose());
  M.set_block(m, m, p.z);
  M.set_block(m, m + n, -Matrix<Grassmann>::identity(n, Grassmann(like.gens(), 1)));
  M.set_block(m + n, m, Matrix<Grassmann>::identity(n, Grassmann(like.gens(), 1)));
  return g;
}

/// The topological point (i I, 0) of the Siegel chart.
inline ChartPoint siegel_base_point(const OspContext& ctx, int gens) {
  ChartPoint p{Matrix<Grassmann>(ctx.n, ctx.n, Grassmann(gens)), Matrix<Grassmann>(ctx.m, ctx.n, Grassmann(gens)), ChartTag::siegel};
  for (int i = 0; i < ctx.n; ++i) p.z(i, i) = Grassmann(gens, Cyclo::i());
  return p;
}

inline ChartPoint disc_origin(const OspContext& ctx, int gens) {
  return {Matrix<Grassmann>(ctx.n, ctx.n, Grassmann(gens)), Matrix<Grassmann>(ctx.m, ctx.n, Grassmann(gens)), ChartTag::disc};
}

/// g . (z, zeta) = ((be1 zeta + b11 z + b12) D^{-1}, (a zeta + al1 z + al2) D^{-1}), D = be2 zeta + b21 z + b22.
inline ChartPoint fractional_action(const GMatrix& g, const ChartPoint& p, const OspContext& ctx) {
  check_osp_shape(g, ctx);
  const Grassmann like(p.gens());
  const auto B = osp_blocks(g, ctx);
  auto mm = [&](const Matrix<Grassmann>& x, const Matrix<Grassmann>& y) { return mul(x, y, like); };
  const auto den = mm(B.be2, p.zeta) + mm(B.b21, p.z) + B.b22;
  if (is_zero(determinant(body_matrix(den)))) throw NotInvertible("fractional action: denominator body is singular");
  const auto dinv = grassmann_inverse(den);
  ChartPoint out;
  out.tag = p.tag;
  out.z = mm(mm(B.be1, p.zeta) + mm(B.b11, p.z) + B.b12, dinv);
  out.zeta = mm(mm(B.a, p.zeta) + mm(B.al1, p.z) + B.al2, dinv);
  return out;
}

/// Disc chart to Siegel chart: the fractional action of L.
inline ChartPoint cayley_transform(const ChartPoint& p, const OspContext& ctx) {
  if (is_zero(determinant(body_matrix(Matrix<Grassmann>::identity(ctx.n, Grassmann(p.gens(), 1)) - p.z))))
    throw NotInvertible("Cayley transform: 1 - z has singular body");
  ChartPoint q = fractional_action(lift(ctx.L, p.gens()), p, ctx);
  q.tag = ChartTag::siegel;
  return q;
}

inline ChartPoint inverse_cayley_transform(const ChartPoint& p, const OspContext& ctx) {
  ChartPoint q = fractional_action(lift(ctx.Linv, p.gens()), p, ctx);
  q.tag = ChartTag::disc;
  return q;
}

/// Closed form (sqrt(2i) eta (1 - z)^{-1}, i (z + 1)(1 - z)^{-1}).
inline ChartPoint cayley_closed_form(const ChartPoint& p) {
  const int g = p.gens();
  const Grassmann like(g);
  const auto I = Matrix<Grassmann>::identity(p.z.rows(), Grassmann(g, 1));
  const auto inv = grassmann_inverse(I - p.z);
  ChartPoint q;
  q.tag = ChartTag::siegel;
  q.z = mul(p.z + I, inv, like).scaled(Grassmann(g, Cyclo::i()));
  q.zeta = mul(p.zeta, inv, like).scaled(Grassmann(g, Cyclo(1) + Cyclo::i()));
  return q;
}

struct LagrangianRep {
  ChartPoint point;
  GMatrix normalized;  // g p0 with b21 = 1
  GMatrix parabolic;   // chart_matrix(point)^{-1} g p0, an element of P
};

/// Representative of g P in the chart: right-normalize b21 to 1, then z = b11, zeta = al1.
inline LagrangianRep lagrangian_normalize(const GMatrix& g, const OspContext& ctx) {
  check_osp_shape(g, ctx);
  if (!is_osp_member(g, ctx)) throw std::invalid_argument("matrix is not in Osp(m|2n)");
  const int m = ctx.m, n = ctx.n;
  const Grassmann like = ring_like(g);
  const auto B = osp_blocks(g, ctx);
  if (is_zero(determinant(body_matrix(B.b21)))) throw NotInvertible("b21 has singular body: outside the chart");
  const auto b21inv = grassmann_inverse(B.b21);
  GMatrix p0 = GMatrix::identity(ctx.shape(), Grassmann(like.gens(), 1));
  p0.matrix().set_block(m, m, b21inv);
  p0.matrix().set_block(m + n, m + n, B.b21.transpose());
  LagrangianRep rep;
  rep.normalized = g * p0;
  const auto N = osp_blocks(rep.normalized, ctx);
  rep.point = {N.b11, N.al1, ChartTag::siegel};
  rep.parabolic = supermatrix_inverse(chart_matrix(rep.point, ctx)) * rep.normalized;
  return rep;
}

/// The closed-form inverse [[1, 0, -zeta], [0, 0, 1], [zeta^t, -1, z - zeta^t zeta]].
inline GMatrix chart_matrix_inverse(const ChartPoint& p, const OspContext& ctx) {
  const Grassmann like(p.gens());
  const int m = ctx.m, n = ctx.n;
  const auto one = Grassmann(like.gens(), 1);
  GMatrix g(ctx.shape(), like);
  auto& M = g.matrix();
  M.set_block(0, 0, Matrix<Grassmann>::identity(m, one));
  M.set_block(0, m + n, -p.zeta);
  M.set_block(m, m + n, Matrix<Grassmann>::identity(n, one));
  M.set_block(m + n, 0, p.zeta.transpose());
  M.set_block(m + n, m, -Matrix<Grassmann>::identity(n, one));
  M.set_block(m + n, m + n, p.z - mul(p.zeta.transpose(), p.zeta, like));
  return g;
}

// ---------------------------------------------------------------------------
// The subgroup P^- = {[[1, -eta, 0], [0, 1, 0], [eta^t, v, 1]]}, membership iff v^t - v = eta^t eta.

struct PMinus {
  Matrix<Grassmann> eta;  // m x n, odd
  Matrix<Grassmann> v;    // n x n, even
};

inline Matrix<Grassmann> p_minus_residual(const PMinus& x) {
  const Grassmann like(x.v.rows() > 0 ? x.v(0, 0).gens() : 0);
  return x.v.transpose() - x.v - mul(x.eta.transpose(), x.eta, like);
}

inline void check_p_minus(const PMinus& x) {
  if (!p_minus_residual(x).is_zero()) throw std::invalid_argument("P^- constraint v^t - v = eta^t eta violated");
}

inline GMatrix p_minus_matrix(const PMinus& x, const OspContext& ctx) {
  check_p_minus(x);
  const int m = ctx.m, n = ctx.n;
  const int gens = x.v.rows() > 0 ? x.v(0, 0).gens() : 0;
  GMatrix g = GMatrix::identity(ctx.shape(), Grassmann(gens, 1));
  g.matrix().set_block(0, m, -x.eta);
  g.matrix().set_block(m + n, 0, x.eta.transpose());
  g.matrix().set_block(m + n, m, x.v);
  return g;
}

/// (eta, v)(eta', v') = (eta + eta', v + v' - eta^t eta').
inline PMinus p_minus_mul(const PMinus& x, const PMinus& y) {
  check_p_minus(x);
  check_p_minus(y);
  const Grassmann like(x.v.rows() > 0 ? x.v(0, 0).gens() : 0);
  return {x.eta + y.eta, x.v + y.v - mul(x.eta.transpose(), y.eta, like)};
}

// ---------------------------------------------------------------------------
// Random samples.

/// Rational orthogonal matrix (I - A)(I + A)^{-1} for antisymmetric A, times an optional reflection.
inline Matrix<Cyclo> random_orthogonal(Sampler& s, int m) {
  Matrix<Cyclo> A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      A(i, j) = Cyclo(s.rational(2, 2));
      A(j, i) = -A(i, j);
    }
  const auto I = Matrix<Cyclo>::identity(m, Cyclo(1));
  Matrix<Cyclo> Q = (I - A) * *inverse(I + A);
  if (m > 0 && s.coin())
    for (int j = 0; j < m; ++j) Q(0, j) = -Q(0, j);
  return Q;
}

/// Gaussian-rational unitary matrix (I - A)(I + A)^{-1} for anti-Hermitian A.
inline Matrix<Cyclo> random_unitary(Sampler& s, int n) {
  Matrix<Cyclo> A(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = Cyclo(s.rational(2, 2)) * Cyclo::i();
    for (int j = i + 1; j < n; ++j) {
      A(i, j) = Cyclo(s.rational(2, 2)) + Cyclo(s.rational(2, 2)) * Cyclo::i();
      A(j, i) = -A(i, j).conj();
    }
  }
  const auto I = Matrix<Cyclo>::identity(n, Cyclo(1));
  return (I - A) * *inverse(I + A);
}

/// Body element of the K_r display [[a, 0, 0], [0, X, Y], [0, -Y, X]] with X + iY unitary.
inline CMatrix random_kr_body(Sampler& s, const OspContext& ctx) {
  const int m = ctx.m, n = ctx.n;
  const auto a = random_orthogonal(s, m);
  const auto U = random_unitary(s, n);
  CMatrix k(ctx.shape());
  k.matrix().set_block(0, 0, a);
  const Cyclo h(Rational(1, 2));
  const Cyclo mhi = Cyclo(Rational(-1, 2)) * Cyclo::i();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Cyclo X = (U(i, j) + U(i, j).conj()) * h;
      const Cyclo Y = (U(i, j) - U(i, j).conj()) * mhi;
      k(m + i, m + j) = X;
      k(m + i, m + n + j) = Y;
      k(m + n + i, m + j) = -Y;
      k(m + n + i, m + n + j) = X;
    }
  return k;
}

/// Body element of the K_D display diag(a, U, conj(U)) with U unitary.
inline CMatrix random_kd_body(Sampler& s, const OspContext& ctx) {
  const int m = ctx.m, n = ctx.n;
  const auto U = random_unitary(s, n);
  CMatrix k(ctx.shape());
  k.matrix().set_block(0, 0, random_orthogonal(s, m));
  k.matrix().set_block(m, m, U);
  k.matrix().set_block(m + n, m + n, U.map([](const Cyclo& x) { return x.conj(); }));
  return k;
}

/// Lie(Osp)(T) element: even basis vectors with even coefficients, odd ones with odd coefficients.
inline GMatrix random_lie_tpoint(Sampler& s, const OspContext& ctx, int gens, bool with_body = true) {
  GMatrix X(ctx.shape(), Grassmann(gens));
  for (const auto& B : osp_lie_basis_rational(ctx)) {
    const int par = B.parity() == Parity::odd ? 1 : 0;
    if (par == 1 && gens == 0) continue;
    Grassmann c = s.grassmann(gens, par, false);
    if (par == 0 && with_body && s.coin()) c.add_term(0, Cyclo(s.rational(1, 3)));
    for (int i = 0; i < X.rows(); ++i)
      for (int j = 0; j < X.cols(); ++j)
        if (B(i, j) != 0) X(i, j) += c.scaled(Cyclo(B(i, j)));
  }
  return X;
}

/// Cayley parametrization (1 + X)(1 - X)^{-1}: a real Osp(m|2n, R) T-point for real X.
inline GMatrix random_osp_real(Sampler& s, const OspContext& ctx, int gens) {
  for (;;) {
    const GMatrix X = random_lie_tpoint(s, ctx, gens);
    const GMatrix I = GMatrix::identity(ctx.shape(), Grassmann(gens, 1));
    try {
      return (I + X) * supermatrix_inverse(I - X);
    } catch (const NotInvertible&) {
    }
  }
}

/// Element of Osp_D(m|2n)(T) = L^{-1} Osp(m|2n, R)(T) L.
inline GMatrix random_osp_D(Sampler& s, const OspContext& ctx, int gens) {
  return lift(ctx.Linv, gens) * random_osp_real(s, ctx, gens) * lift(ctx.L, gens);
}

/// Disc T-point z = s + (1/2) eta^t eta with symmetric s and 1 - conj(s0) s0 > 0 on the body.
inline ChartPoint random_disc_point(Sampler& s, const OspContext& ctx, int gens) {
  const int m = ctx.m, n = ctx.n;
  const Grassmann like(gens);
  for (;;) {
    ChartPoint p = disc_origin(ctx, gens);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) p.zeta(i, j) = gens > 0 ? s.grassmann(gens, 1, false) : like;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Grassmann e = gens > 1 ? s.grassmann(gens, 0, false) : like;
        e.add_term(0, Cyclo(s.rational(1, 3 * n)) + Cyclo(s.rational(1, 3 * n)) * Cyclo::i());
        p.z(i, j) = e;
        p.z(j, i) = e;
      }
    p.z += mul(p.zeta.transpose(), p.zeta, like).scaled(Grassmann(gens, Cyclo(Rational(1, 2))));
    if (disc_body_inside(p)) return p;
  }
}

// ---------------------------------------------------------------------------
// Super Jacobi identity on a basis, with sparse rational matrices.

using SparseMat = std::map<std::pair<int, int>, Rational>;

inline SparseMat to_sparse(const SuperMatrix<Rational>& X) {
  SparseMat s;
  for (int i = 0; i < X.rows(); ++i)
    for (int j = 0; j < X.cols(); ++j)
      if (X(i, j) != 0) s.emplace(std::make_pair(i, j), X(i, j));
  return s;
}

inline void sparse_axpy(SparseMat& acc, const Rational& c, const SparseMat& x) {
  for (const auto& [ij, v] : x) {
    auto [it, fresh] = acc.emplace(ij, c * v);
    if (!fresh) {
      it->second += c * v;
      if (it->second == 0) acc.erase(it);
    }
  }
}

inline SparseMat sparse_mul(const SparseMat& a, const SparseMat& b) {
  SparseMat out;
  for (const auto& [ik, x] : a) {
    auto it = b.lower_bound({ik.second, std::numeric_limits<int>::min()});
    for (; it != b.end() && it->first.first == ik.second; ++it) sparse_axpy(out, x, SparseMat{{{ik.first, it->first.second}, it->second}});
  }
  return out;
}

/// Supercommutator of homogeneous sparse matrices of parities pa, pb.
inline SparseMat sparse_bracket(const SparseMat& a, int pa, const SparseMat& b, int pb) {
  SparseMat out = sparse_mul(a, b);
  sparse_axpy(out, (pa & pb) ? Rational(1) : Rational(-1), sparse_mul(b, a));
  return out;
}

struct JacobiReport {
  long triples = 0;
  long nonzero = 0;  // triples with a nonzero residual
};

/// (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] over all basis triples.
inline JacobiReport jacobi_scan(const std::vector<SuperMatrix<Rational>>& basis) {
  const std::size_t d = basis.size();
  std::vector<SparseMat> sp;
  std::vector<int> par;
  for (const auto& X : basis) {
    sp.push_back(to_sparse(X));
    par.push_back(parity_sign(X.parity()));
  }
  std::vector<SparseMat> br(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) br[i * d + j] = sparse_bracket(sp[i], par[i], sp[j], par[j]);
  auto sign = [](int p, int q) { return (p & q) ? Rational(-1) : Rational(1); };
  JacobiReport rep;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        SparseMat r;
        sparse_axpy(r, sign(par[x], par[z]), sparse_bracket(sp[x], par[x], br[y * d + z], par[y] ^ par[z]));
        sparse_axpy(r, sign(par[y], par[x]), sparse_bracket(sp[y], par[y], br[z * d + x], par[z] ^ par[x]));
        sparse_axpy(r, sign(par[z], par[y]), sparse_bracket(sp[z], par[z], br[x * d + y], par[x] ^ par[y]));
        ++rep.triples;
        if (!r.empty()) ++rep.nonzero;
      }
  return rep;
}

}  // namespace hcsuper
