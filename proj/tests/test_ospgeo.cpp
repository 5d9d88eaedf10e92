#include <gtest/gtest.h>

#include "hcsuper/osp.hpp"

using namespace hcsuper;

namespace {

const std::vector<std::pair<int, int>> kShapes = {{0, 1}, {1, 1}, {2, 1}, {3, 1}, {1, 2}};

CMatrix cid(const OspContext& ctx) { return CMatrix::identity(ctx.shape(), Cyclo(1)); }
GMatrix gid(const OspContext& ctx, int gens) { return GMatrix::identity(ctx.shape(), Grassmann(gens, 1)); }


// Real span membership: rank does not grow.
bool in_span(const std::vector<CMatrix>& basis, const CMatrix& x) {
  auto with = basis;
  with.push_back(x);
  return independent_subset(with).size() == independent_subset(basis).size();
}

// Reference complex structure, written out by hand from c.
CMatrix ad_c(const CMatrix& X, const OspContext& ctx, long k) {
  const CMatrix c = ctx.c.scaled(Cyclo(k));
  return c * X - X * c;
}

// Random Osp(m|2n) T-point built as a product of the elementary subgroups, independent of the Cayley sampler.
GMatrix product_member(Sampler& s, const OspContext& ctx, int gens) {
  const int m = ctx.m, n = ctx.n;
  const Grassmann like(gens);
  GMatrix g = lift(random_kr_body(s, ctx), gens);
  for (int step = 0; step < 2; ++step) {
    // P^- element
    PMinus x{Matrix<Grassmann>(m, n, like), Matrix<Grassmann>(n, n, like)};
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x.eta(i, j) = s.grassmann(gens, 1, false);
    Matrix<Grassmann> sym(n, n, like);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) sym(i, j) = sym(j, i) = s.grassmann(gens, 0, s.coin());
    // v = sym - (1/2) eta^t eta solves v^t - v = eta^t eta
    x.v = sym - mul(x.eta.transpose(), x.eta, like).scaled(Grassmann(gens, Cyclo(Rational(1, 2))));
    g = g * p_minus_matrix(x, ctx);
    // translation [[1,0,0],[0,1,b],[0,0,1]] with symmetric b
    GMatrix t = gid(ctx, gens);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) t(m + i, m + n + j) = t(m + j, m + n + i) = s.grassmann(gens, 0, s.coin());
    g = g * t;
  }
  return g;
}

}  // namespace

TEST(OspContext, FixedMatrices) {
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    EXPECT_TRUE(is_osp_member(cid(ctx), ctx));
    EXPECT_TRUE(is_osp_member(ctx.L, ctx)) << m << "|" << n;
    EXPECT_EQ(ctx.L * ctx.Linv, cid(ctx));
    EXPECT_EQ(ctx.F * ctx.Finv, cid(ctx));
    // N = L^t J conj(L) = diag(1, iI, -iI) and F = J^{-1} N
    const CMatrix N = ctx.L.transpose() * ctx.J * ctx.L.conj();
    const CMatrix Ne = detail::osp_block_matrix(m, n, 1, Cyclo::i(), 0, 0, -Cyclo::i());
    EXPECT_EQ(N, Ne);
    EXPECT_EQ(ctx.F, ctx.Linv * ctx.L.conj());
    EXPECT_TRUE(lie_membership(ctx.c, ctx));
  }
  EXPECT_THROW(make_osp_context(1, 0), std::invalid_argument);
}

TEST(OspMembership, Examples) {
  const auto ctx = make_osp_context(2, 1);
  Sampler s(3);
  // block-diagonal body: orthogonal a, symplectic 2x2 block of determinant 1
  CMatrix A = cid(ctx);
  A.matrix().set_block(0, 0, random_orthogonal(s, 2));
  A(2, 2) = 2;
  A(2, 3) = 3;
  A(3, 2) = 1;
  A(3, 3) = 2;
  EXPECT_TRUE(is_osp_member(A, ctx));
  A(3, 3) = 3;
  EXPECT_FALSE(is_osp_member(A, ctx));
  EXPECT_THROW(osp_membership(CMatrix(BlockShape{1, 2}), ctx), ShapeError);
}

TEST(OspMembership, BlockRelationsAgreeOn200Candidates) {
  Sampler s(11);
  int members = 0, total = 0;
  for (int t = 0; t < 200; ++t) {
    const auto [m, n] = kShapes[static_cast<std::size_t>(t) % kShapes.size()];
    const auto ctx = make_osp_context(m, n);
    GMatrix g;
    switch (t % 4) {
      case 0:
        g = random_osp_real(s, ctx, 2);
        break;
      case 1:
        g = product_member(s, ctx, 3);
        break;
      case 2: {
        g = random_osp_real(s, ctx, 2);
        const int i = static_cast<int>(s.integer(0, g.rows() - 1)), j = static_cast<int>(s.integer(0, g.cols() - 1));
        const int par = ctx.shape().is_odd(i) != ctx.shape().is_odd(j) ? 1 : 0;
        Grassmann d = s.grassmann(2, par, par == 0);
        if (d.is_zero()) d = par ? Grassmann::generator(2, 1) : Grassmann(2, 1);
        g(i, j) += d;
        break;
      }
      default:
        g = s.even_supermatrix(ctx.shape(), 2);
    }
    const auto rep = osp_membership(g, ctx);
    EXPECT_EQ(rep.member, rep.blocks_member) << "candidate " << t;
    members += rep.member ? 1 : 0;
    ++total;
  }
  EXPECT_GE(members, 100);
  EXPECT_LT(members, total);
}

TEST(OspGroup, ClosureInverseBerezinian) {
  Sampler s(5);
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    for (int t = 0; t < 4; ++t) {
      const GMatrix a = random_osp_real(s, ctx, 3), b = product_member(s, ctx, 3);
      EXPECT_TRUE(is_osp_member(b, ctx));
      EXPECT_TRUE(is_osp_member(a * b, ctx));
      EXPECT_TRUE(is_osp_member(supermatrix_inverse(a), ctx));
      const Grassmann ber = berezinian(a);
      EXPECT_EQ(ber * ber, Grassmann(3, 1)) << m << "|" << n;
      EXPECT_EQ(berezinian(b) * berezinian(b), Grassmann(3, 1));
    }
  }
}

TEST(OspLie, DimensionsMatchFormula) {
  const std::vector<std::pair<int, int>> shapes = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {3, 2}, {5, 2}};
  for (auto [m, n] : shapes) {
    const auto ctx = make_osp_context(m, n);
    EXPECT_EQ(parity_counts(osp_lie_basis_rational(ctx)), osp_dimension_formula(m, n)) << m << "|" << n;
  }
  EXPECT_EQ(osp_dimension_formula(3, 1), std::make_pair(6, 6));
  EXPECT_EQ(osp_dimension_formula(1, 1), std::make_pair(3, 2));
  EXPECT_EQ(osp_dimension_formula(2, 1), std::make_pair(4, 4));
}

TEST(OspLie, MembershipAndShape) {
  const auto ctx = make_osp_context(3, 1);
  EXPECT_TRUE(lie_membership(CMatrix(ctx.shape()), ctx));
  for (const auto& B : osp_lie_basis(ctx)) {
    EXPECT_TRUE(lie_membership(B, ctx));
    // a^t = -a, b12 and b21 symmetric, b22 = -b11^t
    const auto bl = osp_blocks(B, ctx);
    EXPECT_EQ(bl.a.transpose(), -bl.a);
    EXPECT_EQ(bl.b12.transpose(), bl.b12);
    EXPECT_EQ(bl.b21.transpose(), bl.b21);
    EXPECT_EQ(bl.b22, -bl.b11.transpose());
  }
  CMatrix sym(ctx.shape());
  sym(0, 1) = sym(1, 0) = 1;
  EXPECT_FALSE(lie_membership(sym, ctx));
  // brackets stay inside
  const auto basis = osp_lie_basis(ctx);
  for (std::size_t i = 0; i < basis.size(); i += 2)
    for (std::size_t j = 0; j < basis.size(); j += 3) EXPECT_TRUE(lie_membership(bracket(basis[i], basis[j]), ctx));
}

TEST(OspLie, JacobiScanSmall) {
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}}) {
    const auto rep = jacobi_scan(osp_lie_basis_rational(make_osp_context(m, n)));
    EXPECT_EQ(rep.nonzero, 0);
    EXPECT_GT(rep.triples, 0);
  }
}

TEST(RealForms, Membership) {
  Sampler s(9);
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    const auto I = gid(ctx, 2);
    EXPECT_TRUE(real_form_membership(I, RealForm::real, ctx));
    EXPECT_TRUE(real_form_membership(I, RealForm::D, ctx));
    const GMatrix h = random_osp_real(s, ctx, 2);
    EXPECT_TRUE(real_form_membership(h, RealForm::real, ctx));
    const GMatrix hd = lift(ctx.Linv, 2) * h * lift(ctx.L, 2);
    EXPECT_TRUE(real_form_membership(hd, RealForm::D, ctx));
    EXPECT_TRUE(real_form_membership(lift(random_kd_body(s, ctx), 2), RealForm::D, ctx));
  }
  const auto ctx = make_osp_context(1, 1);
  CMatrix bad = cid(ctx);
  bad(1, 1) = 2;
  EXPECT_THROW(real_form_membership(bad, RealForm::real, ctx), std::invalid_argument);
  // L itself is complex, not real
  EXPECT_FALSE(real_form_membership(ctx.L, RealForm::real, ctx));
}

TEST(Cartan, SplitExamplesAndTheta) {
  const auto ctx = make_osp_context(2, 1);
  Sampler s(2);
  // k_D display: antisymmetric real x, anti-Hermitian y, conj(y)
  CMatrix k(ctx.shape());
  k(0, 1) = 1;
  k(1, 0) = -1;
  k(2, 2) = Cyclo::i().scaled(Rational(3));
  k(3, 3) = -Cyclo::i().scaled(Rational(3));
  ASSERT_TRUE(in_osp_D(k, ctx));
  auto [k1, p1] = cartan_split(k, ctx);
  EXPECT_EQ(k1, k);
  EXPECT_TRUE(p1.is_zero());
  for (const auto& X : osp_D_basis(ctx)) {
    auto [kx, px] = cartan_split(X, ctx);
    EXPECT_EQ(kx + px, X);
    EXPECT_EQ(theta(theta(even_part(X))), even_part(X));
    EXPECT_EQ(theta(theta(odd_part(X))), -odd_part(X));
    EXPECT_EQ(theta(kx), kx);
    EXPECT_EQ(theta(even_part(px)), -even_part(px));
  }
  CMatrix notD = cid(ctx);
  EXPECT_THROW(cartan_split(notD, ctx), std::invalid_argument);
}

TEST(Cartan, BracketRelationsAndDimensions) {
  for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {1, 2}}) {
    const auto ctx = make_osp_context(m, n);
    const auto [ks, ps] = cartan_bases(ctx);
    const auto full = osp_D_basis(ctx);
    const auto dims = osp_dimension_formula(m, n);
    EXPECT_EQ(static_cast<int>(full.size()), dims.first + dims.second);
    EXPECT_EQ(static_cast<int>(ks.size()), m * (m - 1) / 2 + n * n);
    EXPECT_EQ(ks.size() + ps.size(), full.size());
    for (const auto& a : ks) EXPECT_EQ(a.parity(), Parity::even);
    for (const auto& a : ks)
      for (const auto& b : ks) EXPECT_TRUE(in_span(ks, bracket(a, b)));
    for (const auto& a : ks)
      for (const auto& b : ps) EXPECT_TRUE(in_span(ps, bracket(a, b)));
    // [p, p] in k holds on the even part only; odd vectors sit wholly in p
    std::vector<CMatrix> p0;
    for (const auto& a : ps)
      if (a.parity() == Parity::even) p0.push_back(a);
    long odd_escapes = 0;
    for (const auto& a : ps)
      for (const auto& b : ps) {
        const CMatrix c = bracket(a, b);
        const bool ea = a.parity() == Parity::even, eb = b.parity() == Parity::even;
        if (ea && eb)
          EXPECT_TRUE(in_span(ks, c)) << m << "|" << n;
        else if (ea != eb)
          EXPECT_TRUE(in_span(ps, c));
        else
          odd_escapes += in_span(ks, c) ? 0 : 1;
        EXPECT_TRUE(in_osp_D(c, ctx));
      }
    EXPECT_GT(odd_escapes, 0);
  }
}

TEST(ComplexStructure, SquareAndEquivariance) {
  for (auto [m, n] : {std::pair{3, 1}, {2, 1}}) {
    const auto ctx = make_osp_context(m, n);
    const auto [ks, ps] = cartan_bases(ctx);
    for (const auto& Y : ps) {
      const CMatrix JY = complex_structure_J(Y, ctx);
      EXPECT_EQ(JY, ad_c(Y, ctx, Y.parity() == Parity::odd ? 2 : 1));
      EXPECT_TRUE(in_span(ps, JY));
      EXPECT_EQ(complex_structure_J(JY, ctx), -Y);
      for (const auto& X : ks) EXPECT_EQ(complex_structure_J(bracket(X, Y), ctx), bracket(X, JY));
    }
    EXPECT_TRUE(complex_structure_J(CMatrix(ctx.shape()), ctx).is_zero());
  }
  const auto ctx = make_osp_context(1, 1);
  const auto basis = osp_lie_basis(ctx);
  CMatrix mixed = basis.front();
  for (const auto& B : basis)
    if (B.parity() != mixed.parity()) {
      mixed += B;
      break;
    }
  EXPECT_THROW(complex_structure_J(mixed, ctx), ShapeError);
}

TEST(HarishChandra, DisplaysAndClosure) {
  for (auto [m, n] : {std::pair{3, 1}, {3, 2}, {1, 1}}) {
    const auto ctx = make_osp_context(m, n);
    std::vector<CMatrix> k, pp, pm;
    for (const auto& B : osp_lie_basis(ctx)) {
      const auto h = hc_split(B, ctx);
      EXPECT_EQ(h.k + h.p_plus + h.p_minus, B);
      for (const auto* part : {&h.k, &h.p_plus, &h.p_minus}) EXPECT_TRUE(lie_membership(*part, ctx));
      if (!h.k.is_zero()) k.push_back(h.k);
      if (!h.p_plus.is_zero()) pp.push_back(h.p_plus);
      if (!h.p_minus.is_zero()) pm.push_back(h.p_minus);
    }
    const auto dims = osp_dimension_formula(m, n);
    EXPECT_EQ(k.size() + pp.size() + pm.size(), static_cast<std::size_t>(dims.first + dims.second));
    EXPECT_EQ(static_cast<int>(k.size()), m * (m - 1) / 2 + n * n);
    EXPECT_EQ(static_cast<int>(pp.size()), n * (n + 1) / 2 + m * n);
    for (const auto& a : pp)
      for (const auto& b : pp) EXPECT_TRUE(lies_in(bracket(a, b), HCPart::p_plus, ctx));
    for (const auto& a : pm)
      for (const auto& b : pm) EXPECT_TRUE(lies_in(bracket(a, b), HCPart::p_minus, ctx));
    for (const auto& a : k) {
      for (const auto& b : pp) EXPECT_TRUE(lies_in(bracket(a, b), HCPart::p_plus, ctx));
      for (const auto& b : pm) EXPECT_TRUE(lies_in(bracket(a, b), HCPart::p_minus, ctx));
    }
  }
  // the displays [[0,0,xi],[xi^t,0,u],[0,0,0]] and [[0,-eta,0],[0,0,0],[eta^t,v,0]]
  const auto ctx = make_osp_context(1, 1);
  CMatrix xp(ctx.shape()), xm(ctx.shape());
  xp(0, 2) = 1;
  xp(1, 0) = 1;
  xp(1, 2) = 5;
  xm(0, 1) = -1;
  xm(2, 0) = 1;
  xm(2, 1) = 7;
  EXPECT_TRUE(lies_in(xp, HCPart::p_plus, ctx));
  EXPECT_TRUE(lies_in(xm, HCPart::p_minus, ctx));
}

TEST(Chart, MatrixAndClosedFormInverse) {
  Sampler s(4);
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    const ChartPoint p = cayley_transform(random_disc_point(s, ctx, 2), ctx);
    ASSERT_TRUE(is_chart_point(p));
    const GMatrix c = chart_matrix(p, ctx);
    EXPECT_TRUE(is_osp_member(c, ctx));
    EXPECT_EQ(chart_matrix_inverse(p, ctx) * c, gid(ctx, 2));
  }
}

TEST(Lagrangian, NormalizeRecoversChartAndLemmaValues) {
  Sampler s(8);
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    // already normalized
    const ChartPoint p0 = cayley_transform(random_disc_point(s, ctx, 2), ctx);
    EXPECT_EQ(lagrangian_normalize(chart_matrix(p0, ctx), ctx).point, p0);
    for (int t = 0; t < 4; ++t) {
      const GMatrix g = random_osp_real(s, ctx, 2);
      LagrangianRep rep;
      try {
        rep = lagrangian_normalize(g, ctx);
      } catch (const NotInvertible&) {
        continue;
      }
      EXPECT_TRUE(chart_constraint_residual(rep.point).is_zero());
      EXPECT_TRUE(is_osp_member(rep.normalized, ctx));
      const auto N = osp_blocks(rep.normalized, ctx);
      EXPECT_EQ(N.b21, Matrix<Grassmann>::identity(n, Grassmann(2, 1)));
      const auto P = osp_blocks(rep.parabolic, ctx);
      const Grassmann like(2);
      EXPECT_EQ(P.a, N.a - mul(N.al1, N.be2, like));     // u
      EXPECT_EQ(P.al2, N.al2 - mul(N.al1, N.b22, like)); // xi
      EXPECT_EQ(P.b11, Matrix<Grassmann>::identity(n, Grassmann(2, 1)));  // v
      EXPECT_EQ(P.b12, N.b22);                                            // w
      EXPECT_EQ(P.be1, mul(P.al2.transpose(), P.a, like));                // v xi^t u
      EXPECT_TRUE(P.al1.is_zero());
      EXPECT_TRUE(P.be2.is_zero() && P.b21.is_zero());
      EXPECT_EQ(P.b22, Matrix<Grassmann>::identity(n, Grassmann(2, 1)));
      EXPECT_EQ(chart_matrix(rep.point, ctx) * rep.parabolic, rep.normalized);
    }
  }
  const auto ctx = make_osp_context(1, 1);
  EXPECT_THROW(lagrangian_normalize(gid(ctx, 2), ctx), NotInvertible);
}

TEST(FractionalAction, ExamplesAndComposition) {
  Sampler s(12);
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    const ChartPoint p = cayley_transform(random_disc_point(s, ctx, 2), ctx);
    EXPECT_EQ(fractional_action(gid(ctx, 2), p, ctx), p);
    // translation by a symmetric b12
    GMatrix t = gid(ctx, 2);
    Matrix<Grassmann> b(n, n, Grassmann(2));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) b(i, j) = b(j, i) = s.grassmann(2, 0, true);
    t.matrix().set_block(m, m + n, b);
    const ChartPoint q = fractional_action(t, p, ctx);
    EXPECT_EQ(q.z, p.z + b);
    EXPECT_EQ(q.zeta, p.zeta);
    for (int k = 0; k < 3; ++k) {
      const GMatrix g1 = random_osp_real(s, ctx, 2), g2 = random_osp_real(s, ctx, 2);
      try {
        const ChartPoint a = fractional_action(g1, fractional_action(g2, p, ctx), ctx);
        EXPECT_EQ(fractional_action(g1 * g2, p, ctx), a);
        EXPECT_TRUE(is_siegel_point(a)) << m << "|" << n;
      } catch (const NotInvertible&) {
        ADD_FAILURE() << "real-form action hit a singular denominator on a Siegel point";
      }
    }
  }
}

TEST(Stabilizers, KrFixesBasePointAndKdFixesOrigin) {
  Sampler s(6);
  for (auto [m, n] : kShapes) {
    const auto ctx = make_osp_context(m, n);
    const auto base = siegel_base_point(ctx, 2);
    EXPECT_TRUE(is_siegel_point(base));
    for (int t = 0; t < 4; ++t) {
      const CMatrix k = random_kr_body(s, ctx);
      EXPECT_TRUE(real_form_membership(k, RealForm::real, ctx));
      EXPECT_EQ(fractional_action(lift(k, 2), base, ctx), base);
      const CMatrix kd = random_kd_body(s, ctx);
      EXPECT_EQ(fractional_action(lift(kd, 2), disc_origin(ctx, 2), ctx), disc_origin(ctx, 2));
      // L K_D L^{-1} lands in the K_r display
      EXPECT_EQ(fractional_action(lift(ctx.L * kd * ctx.Linv, 2), base, ctx), base);
    }
  }
}

TEST(Cayley, RoundTripAndClosedForm) {
  Sampler s(10);
  for (int t = 0; t < 20; ++t) {
    const auto [m, n] = kShapes[static_cast<std::size_t>(t) % kShapes.size()];
    const auto ctx = make_osp_context(m, n);
    const ChartPoint x = random_disc_point(s, ctx, 2);
    ASSERT_TRUE(is_disc_point(x));
    const ChartPoint y = cayley_transform(x, ctx);
    EXPECT_EQ(y, cayley_closed_form(x));
    EXPECT_TRUE(is_siegel_point(y));
    EXPECT_EQ(inverse_cayley_transform(y, ctx), x);
  }
  const auto ctx = make_osp_context(1, 1);
  EXPECT_EQ(cayley_transform(disc_origin(ctx, 2), ctx), siegel_base_point(ctx, 2));
  // body z = r I
  for (const Rational& r : {Rational(1, 2), Rational(-2, 3), Rational(0)}) {
    ChartPoint x = disc_origin(ctx, 0);
    x.z(0, 0) = Grassmann(0, Cyclo(r));
    const auto y = cayley_transform(x, ctx);
    EXPECT_EQ(y.z(0, 0).body(), Cyclo::i() * Cyclo((1 + r) / (1 - r)));
    EXPECT_TRUE(siegel_body_positive(y));
  }
  ChartPoint one = disc_origin(ctx, 0);
  one.z(0, 0) = Grassmann(0, Cyclo(1));
  EXPECT_THROW(cayley_transform(one, ctx), NotInvertible);
}

TEST(Cayley, IntertwinesRealForms) {
  Sampler s(13);
  const auto ctx = make_osp_context(2, 1);
  for (int t = 0; t < 3; ++t) {
    const GMatrix gd = random_osp_D(s, ctx, 2);
    const ChartPoint x = random_disc_point(s, ctx, 2);
    ChartPoint lhs;
    try {
      lhs = cayley_transform(fractional_action(gd, x, ctx), ctx);
    } catch (const NotInvertible&) {
      continue;
    }
    const GMatrix g = lift(ctx.L, 2) * gd * lift(ctx.Linv, 2);
    EXPECT_TRUE(real_form_membership(g, RealForm::real, ctx));
    EXPECT_EQ(fractional_action(g, cayley_transform(x, ctx), ctx), lhs);
  }
}

TEST(PMinus, ProductLaw) {
  Sampler s(14);
  const auto ctx = make_osp_context(2, 2);
  const int m = 2, n = 2, gens = 3;
  const Grassmann like(gens);
  auto rnd = [&]() {
    PMinus x{Matrix<Grassmann>(m, n, like), Matrix<Grassmann>(n, n, like)};
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x.eta(i, j) = s.grassmann(gens, 1, false);
    Matrix<Grassmann> sym(n, n, like);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) sym(i, j) = sym(j, i) = s.grassmann(gens, 0, true);
    x.v = sym - mul(x.eta.transpose(), x.eta, like).scaled(Grassmann(gens, Cyclo(Rational(1, 2))));
    return x;
  };
  const PMinus zero{Matrix<Grassmann>(m, n, like), Matrix<Grassmann>(n, n, like)};
  for (int t = 0; t < 5; ++t) {
    const PMinus a = rnd(), b = rnd(), c = rnd();
    EXPECT_TRUE(is_osp_member(p_minus_matrix(a, ctx), ctx));
    const PMinus ab = p_minus_mul(a, b);
    EXPECT_TRUE(p_minus_residual(ab).is_zero());
    EXPECT_EQ(p_minus_matrix(ab, ctx), p_minus_matrix(a, ctx) * p_minus_matrix(b, ctx));
    const PMinus l = p_minus_mul(p_minus_mul(a, b), c), r = p_minus_mul(a, p_minus_mul(b, c));
    EXPECT_EQ(l.eta, r.eta);
    EXPECT_EQ(l.v, r.v);
    const PMinus az = p_minus_mul(a, zero);
    EXPECT_EQ(az.eta, a.eta);
    EXPECT_EQ(az.v, a.v);
  }
  // (eta, 0)(eta', 0) needs eta^t eta = 0: take single-generator columns
  PMinus e1 = zero, e2 = zero;
  e1.eta(0, 0) = Grassmann::generator(gens, 1);
  e2.eta(1, 1) = Grassmann::generator(gens, 2);
  const PMinus prod = p_minus_mul(e1, e2);
  EXPECT_EQ(prod.eta, e1.eta + e2.eta);
  EXPECT_EQ(prod.v, -mul(e1.eta.transpose(), e2.eta, like));
  PMinus broken = zero;
  broken.v(0, 1) = Grassmann(gens, 1);
  EXPECT_THROW(p_minus_mul(broken, zero), std::invalid_argument);
}
