// Acceptance run: one PASS/FAIL line per criterion, tolerances and time limits fixed below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hcsuper/hcsuper.hpp"

using namespace hcsuper;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

template <class... T>
std::string cat(const T&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

Weight W(std::vector<long> e, std::vector<long> d) {
  Weight w(static_cast<int>(e.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < e.size(); ++i) w.eps[i] = e[i];
  for (std::size_t i = 0; i < d.size(); ++i) w.delta[i] = d[i];
  return w;
}

const std::vector<std::pair<int, int>> kDimShapes = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {3, 2}, {5, 2}};
const std::vector<std::pair<int, int>> kGeoShapes = {{1, 1}, {2, 1}, {3, 1}, {3, 2}};

Outcome c1_dimensions() {
  Outcome o;
  for (auto [m, n] : kDimShapes) {
    const auto got = parity_counts(osp_lie_basis_rational(make_osp_context(m, n)));
    const auto want = osp_dimension_formula(m, n);
    o.ok &= got == want;
    o.detail += cat(m, "|", n, "=(", got.first, ",", got.second, ") ");
  }
  return o;
}

Outcome c2_jacobi() {
  Outcome o;
  long triples = 0, bad = 0;
  for (auto [m, n] : kDimShapes) {
    const auto rep = jacobi_scan(osp_lie_basis_rational(make_osp_context(m, n)));
    triples += rep.triples;
    bad += rep.nonzero;
  }
  o.ok = bad == 0 && triples > 0;
  o.detail = cat(triples, " triples, ", bad, " nonzero super-Jacobi residuals (exact)");
  return o;
}

Outcome c3_supermatrix() {
  Outcome o;
  Sampler s(2024);
  const BlockShape sh{2, 2};
  int ber_bad = 0, st_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const GMatrix a = s.even_supermatrix(sh, 4), b = s.even_supermatrix(sh, 4);
    const GMatrix ab = a * b;
    if (berezinian(ab) != berezinian(a) * berezinian(b)) ++ber_bad;
    if (ab.supertranspose() != b.supertranspose() * a.supertranspose()) ++st_bad;
  }
  o.ok = ber_bad == 0 && st_bad == 0;
  o.detail = cat("100 pairs (2|2, 4 generators): Ber failures ", ber_bad, ", supertranspose failures ", st_bad);
  return o;
}

Outcome c4_enumeration() {
  Outcome o;
  struct Case {
    Family f;
    int k, n;
    std::size_t expect;
  };
  for (const Case& c : {Case{Family::B, 0, 1, 2}, Case{Family::A, 2, 1, 2}, Case{Family::B, 1, 1, 4}}) {
    const auto rs = build_root_system(c.f, c.k, c.n);
    const auto lemma = enumerate_admissible(rs, lemma_split(rs).compact);
    const auto block = enumerate_admissible(rs, block_split(rs).compact);
    const bool hit = lemma.size() == c.expect || block.size() == c.expect;
    o.ok &= hit;
    o.detail += cat(rs.name(), ": lemma ", lemma.size(), ", block ", block.size(), " (expected ", c.expect, "); ");
    if (c.f == Family::B && c.k == 1) {
      std::vector<std::vector<Weight>> pn0;
      for (const auto& sp : lemma) {
        const auto v = detail::sorted(sp.noncompact_even);
        if (std::find(pn0.begin(), pn0.end(), v) == pn0.end()) pn0.push_back(v);
      }
      o.detail += cat("distinct P_n0 among lemma systems ", pn0.size(), "; ");
    }
  }
  if (!o.ok)
    o.detail +=
        "exhaustive enumeration: with P_k empty every Borel containing h is admissible (8); with k = so(3)+gl(1) "
        "k-stability pins the delta-side (2); no compact subsystem yields 4";
  return o;
}

Outcome c5_admissible() {
  Outcome o;
  for (const auto& [f, k, n] : {std::tuple{Family::B, 1, 1}, {Family::B, 2, 1}, {Family::D, 2, 1}, {Family::B, 1, 2}}) {
    const auto rs = build_root_system(f, k, n);
    for (const auto& [label, sp] : {std::pair{"lemma", lemma_split(rs)}, {"block", block_split(rs)}}) {
      const auto v = admissibility_violations(rs, sp);
      const auto lb = lemma_bullet_violations(rs, sp);
      o.ok &= v.empty();
      o.detail += cat(rs.name(), "/", label, ": violations ", v.size(), ", literal bullet ", lb.empty() ? "true" : "false", "; ");
    }
  }
  return o;
}

Outcome c6_pbw() {
  Outcome o;
  long checked = 0, bad = 0;
  for (const auto& [k, n] : {std::pair{0, 1}, {1, 1}}) {
    const auto rs = build_root_system(Family::B, k, n);
    const auto g = build_lie_algebra(rs);
    Enveloping U(g);
    for (const auto& d : cone_weights(rs, 6)) {
      ++checked;
      if (static_cast<Count>(U.monomials(-1, d).size()) != super_kostant_partition(rs, d)) ++bad;
    }
  }
  o.ok = bad == 0;
  o.detail = cat(checked, " weights to depth 6 on osp(1|2), osp(3|2); mismatches ", bad);
  return o;
}

Outcome c7_sl2() {
  Outcome o;
  const auto rs = build_root_system(Family::A, 2, 0);
  const auto g = build_lie_algebra(rs);
  Enveloping U(g);
  const Weight a = rs.simple[0];
  int bad_det = 0, bad_drop = 0;
  for (int c = 0; c < 10; ++c) {
    const Weight lam = (Rational(c) / 2) * a;
    int first = -1;
    for (int k = 0; k <= 5; ++k) {
      const Rational det = U.contravariant_matrix(lam, Rational(k) * a)(0, 0);
      Rational want = 1;
      for (int j = 1; j <= k; ++j) want *= j;
      for (int j = 0; j < k; ++j) want *= Rational(c) - j;
      if (det != want && det != -want) ++bad_det;
    }
    for (int k = 1; k <= 12 && first < 0; ++k)
      if (U.irreducible_quotient_mult(lam, Rational(k) * a) == 0) first = k;
    if (first != c + 1) ++bad_drop;
  }
  o.ok = bad_det == 0 && bad_drop == 0;
  o.detail = cat("c = 0..9, k <= 5: det mismatches ", bad_det, ", first-drop mismatches ", bad_drop, " (expected k = c+1)");
  return o;
}

// First depth (<= max_depth) at which the contravariant form loses rank, or -1.
int first_drop(Enveloping& U, const RootSystem& rs, const Weight& lam, int max_depth) {
  for (int dep = 1; dep <= max_depth; ++dep)
    for (const auto& d : cone_weights(rs, dep)) {
      if (depth_of(rs, d) != dep) continue;
      if (U.irreducible_quotient_mult(lam, d) != verma_weight_mult(rs, lam, d)) return dep;
    }
  return -1;
}

// lambda with (lambda + rho)(H_g) < 0 on every noncompact positive g, by rejection sampling.
std::optional<Weight> strict_lambda(Sampler& s, const RootSystem& rs, const Split& split, const Weight& rho) {
  for (int tries = 0; tries < 400; ++tries) {
    Weight lam = rs.zero();
    for (int i = 0; i < lam.size(); ++i) lam.coord(i) = s.rational(6, 2);
    bool strict = true;
    for (const auto& gm : split.noncompact()) strict &= coroot_pairing(lam + rho, gm) < 0;
    if (strict) return lam;
  }
  return std::nullopt;
}

// Runs over every admissible positive system of osp(1|2) and osp(3|2) (both compact choices for osp(3|2)).
Outcome c8_criterion() {
  Outcome o;
  Sampler s(88);
  const int depth = 4;
  int strict_ok = 0, strict_total = 0, drop_ok = 0, drop_total = 0, empty_regions = 0, systems = 0;
  std::string depths;
  for (const auto& [k, n] : {std::pair{0, 1}, {1, 1}}) {
    const auto base = build_root_system(Family::B, k, n);
    std::vector<Split> splits = enumerate_admissible(base, lemma_split(base).compact);
    if (k > 0)
      for (const auto& sp : enumerate_admissible(base, block_split(base).compact)) splits.push_back(sp);
    for (const auto& split : splits) {
      ++systems;
      RootSystem rs = with_positive(base, split.positive());
      rs.split = split;
      const auto g = build_lie_algebra(rs);
      Enveloping U(g);
      const Weight rho = rho_vector(rs, split.positive());
      int found = 0;
      for (int t = 0; t < 3; ++t) {
        const auto lam = strict_lambda(s, rs, split, rho);
        if (!lam) break;
        ++found;
        ++strict_total;
        if (irreducibility_criterion(rs, split, *lam) && first_drop(U, rs, *lam, depth) < 0) ++strict_ok;
      }
      if (found == 0) ++empty_regions;
      for (const auto& gm : split.noncompact()) {
        if (form(gm, gm) != 0) continue;
        Weight mu = rs.zero();
        for (int i = 0; i < mu.size() && form(mu, gm) == 0; ++i) {
          mu = rs.zero();
          mu.coord(i) = 1;
        }
        Weight lam = rs.zero();
        for (int i = 0; i < lam.size(); ++i) lam.coord(i) = s.rational(6, 2);
        lam -= (form(lam + rho, gm) / form(mu, gm)) * mu;
        const int dep = first_drop(U, rs, lam, depth);
        ++drop_total;
        if (dep > 0) ++drop_ok;
        depths += cat(rs.name(), " gamma=", gm.str(), " depth ", dep, "; ");
      }
    }
  }
  o.ok = strict_total > 0 && strict_ok == strict_total && drop_ok == drop_total && drop_total > 0;
  o.detail = cat(systems, " admissible systems, ", empty_regions, " with empty strict region; strict lambdas full rank to depth ",
                 depth, ": ", strict_ok, "/", strict_total, "; isotropic zeros with a rank drop: ", drop_ok, "/",
                 drop_total, "; osp(1|2) has no isotropic roots; first drops: ", depths);
  return o;
}

Outcome c9_cayley() {
  Outcome o;
  Sampler s(909);
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    const auto [m, n] = kGeoShapes[static_cast<std::size_t>(t) % kGeoShapes.size()];
    const auto ctx = make_osp_context(m, n);
    const ChartPoint x = random_disc_point(s, ctx, 2);
    const ChartPoint y = cayley_transform(x, ctx);
    const bool good = is_disc_point(x) && is_siegel_point(y) && y == cayley_closed_form(x) &&
                      inverse_cayley_transform(y, ctx) == x;
    if (!good) ++bad;
  }
  o.ok = bad == 0;
  o.detail = cat("50 disc points (2 generators): failures ", bad, " (exact equality)");
  return o;
}

Outcome c10_stabilizer() {
  Outcome o;
  Sampler s(1010);
  int bad = 0;
  for (int t = 0; t < 20; ++t) {
    const auto [m, n] = kGeoShapes[static_cast<std::size_t>(t) % kGeoShapes.size()];
    const auto ctx = make_osp_context(m, n);
    const CMatrix k = random_kr_body(s, ctx);
    const auto base = siegel_base_point(ctx, 2);
    if (!real_form_membership(k, RealForm::real, ctx) || !(fractional_action(lift(k, 2), base, ctx) == base)) ++bad;
  }
  o.ok = bad == 0;
  o.detail = cat("20 K_r bodies acting on (iI, 0): failures ", bad);
  return o;
}

Outcome c11_complex_structure() {
  Outcome o;
  int checks = 0, bad = 0;
  for (auto [m, n] : {std::pair{3, 1}, {2, 1}}) {
    const auto ctx = make_osp_context(m, n);
    const auto [ks, ps] = cartan_bases(ctx);
    for (const auto& Y : ps) {
      const CMatrix JY = complex_structure_J(Y, ctx);
      ++checks;
      if (!(complex_structure_J(JY, ctx) == -Y)) ++bad;
      for (const auto& X : ks) {
        ++checks;
        if (!(complex_structure_J(bracket(X, Y), ctx) == bracket(X, JY))) ++bad;
      }
    }
  }
  o.ok = bad == 0;
  o.detail = cat(checks, " checks of J^2 = -1 and J[X,Y] = [X,JY] on osp(3|2), osp(2|2); failures ", bad);
  return o;
}

Outcome c12_hc() {
  Outcome o;
  for (auto [m, n] : {std::pair{3, 1}, {3, 2}}) {
    const auto ctx = make_osp_context(m, n);
    std::vector<CMatrix> k, pp, pm;
    bool ok = true;
    for (const auto& B : osp_lie_basis(ctx)) {
      const auto h = hc_split(B, ctx);
      ok &= h.k + h.p_plus + h.p_minus == B;
      if (!h.k.is_zero()) k.push_back(h.k);
      if (!h.p_plus.is_zero()) pp.push_back(h.p_plus);
      if (!h.p_minus.is_zero()) pm.push_back(h.p_minus);
    }
    for (const auto& a : pp)
      for (const auto& b : pp) ok &= lies_in(bracket(a, b), HCPart::p_plus, ctx);
    for (const auto& a : pm)
      for (const auto& b : pm) ok &= lies_in(bracket(a, b), HCPart::p_minus, ctx);
    for (const auto& a : k) {
      for (const auto& b : pp) ok &= lies_in(bracket(a, b), HCPart::p_plus, ctx);
      for (const auto& b : pm) ok &= lies_in(bracket(a, b), HCPart::p_minus, ctx);
    }
    const int kd = m * (m - 1) / 2 + n * n, pd = n * (n + 1) / 2 + m * n;
    ok &= static_cast<int>(k.size()) == kd && static_cast<int>(pp.size()) == pd && static_cast<int>(pm.size()) == pd;
    o.ok &= ok;
    o.detail += cat(m, "|", n, ": dim k ", k.size(), ", p+ ", pp.size(), ", p- ", pm.size(), "; ");
  }
  return o;
}

Outcome c13_torus() {
  Outcome o;
  const auto rs = build_root_system(Family::B, 1, 1);
  const int depth = 5;
  const auto spec = torus_spectrum_table(rs, depth);
  const auto part = partition_table(rs, rs.positive, depth);
  o.ok = spec.rows == part.rows && !spec.rows.empty();
  int off = 0, off_bad = 0;
  for (long a = -2; a <= 3; ++a)
    for (long b = -2; b <= 3; ++b) {
      const Weight d = W({a}, {b});
      const auto sc = simple_coordinates(rs, d);
      bool in_cone = sc.has_value();
      if (sc)
        for (long x : *sc) in_cone &= x >= 0;
      if (in_cone) continue;
      ++off;
      if (torus_spectrum_mult(rs, rs.zero(), d) != 0) ++off_bad;
    }
  o.ok &= off_bad == 0;
  o.detail = cat("osp(3|2) to depth ", depth, ": ", spec.rows.size(), " nonzero rows, tables ",
                 spec.rows == part.rows ? "equal" : "differ", "; off-cone weights ", off, ", nonzero ", off_bad);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "osp(m|2n) dimensions", 30.0, c1_dimensions},
      {2, "super-Jacobi scan", 60.0, c2_jacobi},
      {3, "Berezinian multiplicative, supertranspose anti-multiplicative", 30.0, c3_supermatrix},
      {4, "admissible positive system counts 2, 2, 4", 30.0, c4_enumeration},
      {5, "standard osp splits admissible", 10.0, c5_admissible},
      {6, "PBW monomial counts match super Kostant partition", 60.0, c6_pbw},
      {7, "sl(2) contravariant determinant and first rank drop", 10.0, c7_sl2},
      {8, "irreducibility criterion versus contravariant rank", 120.0, c8_criterion},
      {9, "Cayley transform disc to Siegel", 60.0, c9_cayley},
      {10, "K_r stabilizes the base point", 30.0, c10_stabilizer},
      {11, "invariant complex structure", 30.0, c11_complex_structure},
      {12, "Harish-Chandra decomposition", 30.0, c12_hc},
      {13, "torus spectrum equals partition table", 30.0, c13_torus},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, cat("exception: ", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.ok = false;
      o.detail += cat(" [time limit exceeded]");
    }
    if (!o.ok) ++failed;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, c.limit_s);
    std::cout << (o.ok ? "PASS" : "FAIL") << " C" << (c.id < 10 ? "0" : "") << c.id << " " << c.title << " (" << timing
              << "): " << o.detail << std::endl;
  }
  std::cout << (all.size() - static_cast<std::size_t>(failed)) << "/" << all.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
