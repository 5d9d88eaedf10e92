#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "enveloping.hpp"
#include "json_io.hpp"

namespace hcsuper {

/// "eps coords ; delta coords", comma separated rationals; ASCII or Unicode minus.
inline Weight parse_weight_spec(const std::string& text, int k, int n) {
  const std::string s = detail::normalize_minus(text);
  const auto semi = s.find(';');
  if (semi == std::string::npos || s.find(';', semi + 1) != std::string::npos)
    throw ParseError("weight needs exactly one ';': '" + text + "'");
  auto part = [&](const std::string& p, int want, const char* what) {
    std::vector<Rational> out;
    if (p.empty()) {
      if (want != 0) throw ParseError(std::string("missing ") + what + " coordinates in '" + text + "'");
      return out;
    }
    std::stringstream ss(p);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_rational(cell));
    if (p.back() == ',') throw ParseError("trailing comma in '" + text + "'");
    if (static_cast<int>(out.size()) != want)
      throw ParseError(std::string("expected ") + std::to_string(want) + " " + what + " coordinates in '" + text + "'");
    return out;
  };
  return Weight(part(s.substr(0, semi), k, "eps"), part(s.substr(semi + 1), n, "delta"));
}

inline std::string format_weight_spec(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.eps.size(); ++i) s += (i ? "," : "") + w.eps[i].get_str();
  s += ";";
  for (std::size_t i = 0; i < w.delta.size(); ++i) s += (i ? "," : "") + w.delta[i].get_str();
  return s;
}

/// Default Grassmann generator count for sampled T-points.
inline int default_generators() {
  const char* v = std::getenv("HCSUPER_GENERATORS");
  if (!v || !*v) return 4;
  const std::string s(v);
  if (!detail::is_integer_literal(s)) throw ParseError("HCSUPER_GENERATORS must be an integer");
  const long g = std::stol(s);
  if (g < 0 || g > Grassmann::kMaxGenerators) throw ParseError("HCSUPER_GENERATORS out of range");
  return static_cast<int>(g);
}

/// Signals a validation failure (exit code 1) after the report has been written.
struct ValidationFailure {};

namespace cli_detail {

struct Options {
  std::string family = "B";
  int k = 1, n = 1, m = 1;
  int depth = 4;
  std::string lambda;
  std::string split = "default";
  std::string kind = "partition";
  std::string form;
  std::string input, matrix, point;
  bool json = false, enumerate = false, matrices = false, random = false, inverse = false, base = false;
  std::uint64_t seed = 1;
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

inline RootSystem algebra(const Options& o) {
  Family f;
  try {
    f = parse_family(o.family);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return build_root_system(f, o.k, o.n);
}

inline Split choose_split(const RootSystem& rs, const std::string& which) {
  if (which == "default") return rs.split;
  if (which == "lemma") return lemma_split(rs);
  if (which == "block") return block_split(rs);
  throw ParseError("split must be default, lemma or block");
}

inline Weight lambda_of(const Options& o, const RootSystem& rs) {
  return o.lambda.empty() ? rs.zero() : parse_weight_spec(o.lambda, rs.k, rs.n);
}

inline void print_weights(std::ostream& out, const char* label, const std::vector<Weight>& v) {
  out << label << ":";
  for (const auto& w : detail::sorted(v)) out << " " << format_weight_spec(w);
  out << "\n";
}

inline void run_roots(const Options& o, std::ostream& out) {
  const auto rs = algebra(o);
  const auto split = choose_split(rs, o.split);
  if (o.json) {
    out << to_json(rs, split).dump(2) << "\n";
    return;
  }
  out << rs.name() << "\n";
  for (const auto& r : rs.roots) out << format_weight_spec(r.weight) << "\t" << (r.odd ? "odd" : "even") << "\n";
  print_weights(out, "P_k", split.compact);
  print_weights(out, "P_n0", split.noncompact_even);
  print_weights(out, "P_n1", split.noncompact_odd);
}

inline Json split_json(const Split& s) {
  return Json{{"P_k", weights_json(detail::sorted(s.compact))},
              {"P_n0", weights_json(detail::sorted(s.noncompact_even))},
              {"P_n1", weights_json(detail::sorted(s.noncompact_odd))}};
}

inline void run_admissible(const Options& o, std::ostream& out) {
  const auto rs = algebra(o);
  if (o.enumerate) {
    const auto all = enumerate_admissible(rs);
    if (o.json) {
      Json a = Json::array();
      for (const auto& s : all) a.push_back(split_json(s));
      out << Json{{"algebra", rs.name()}, {"count", all.size()}, {"systems", a}}.dump(2) << "\n";
      return;
    }
    out << rs.name() << ": " << all.size() << " admissible positive systems\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
      out << "#" << i + 1 << "\n";
      print_weights(out, "  P_n0", all[i].noncompact_even);
      print_weights(out, "  P_n1", all[i].noncompact_odd);
    }
    return;
  }
  const auto split = choose_split(rs, o.split);
  const auto viol = admissibility_violations(rs, split);
  const auto bullet = lemma_bullet_violations(rs, split);
  if (o.json) {
    Json v = Json::array(), b = Json::array();
    for (const auto& x : viol) v.push_back(Json{{"rule", x.rule}, {"a", to_json(x.a)}, {"b", to_json(x.b)}, {"sum", to_json(x.sum)}});
    for (const auto& x : bullet) b.push_back(Json{{"rule", x.rule}, {"a", to_json(x.a)}, {"b", to_json(x.b)}, {"sum", to_json(x.sum)}});
    out << Json{{"algebra", rs.name()}, {"admissible", viol.empty()}, {"violations", v}, {"lemma_bullet_holds", bullet.empty()},
                {"lemma_bullet_violations", b}}
               .dump(2)
        << "\n";
  } else {
    out << rs.name() << ": " << (viol.empty() ? "admissible" : "not admissible") << "\n";
    for (const auto& x : viol)
      out << "  " << x.rule << ": " << format_weight_spec(x.a) << " + " << format_weight_spec(x.b) << " = " << format_weight_spec(x.sum) << "\n";
    out << "lemma bullet: " << (bullet.empty() ? "holds" : "fails") << " (" << bullet.size() << " violations)\n";
  }
  if (!viol.empty()) throw ValidationFailure{};
}

inline void print_table(const Options& o, std::ostream& out, const RootSystem& rs, const MultTable& t, const Weight& lam) {
  if (o.json) {
    Json rows = Json::array();
    for (const auto& [w, c] : t.rows) rows.push_back(Json{{"d", to_json(w)}, {"mult", c}});
    out << Json{{"algebra", rs.name()}, {"kind", o.kind}, {"lambda", to_json(lam)}, {"depth", t.depth}, {"rows", rows}}.dump(2) << "\n";
  } else {
    out << table_tsv(rs, t);
  }
}

inline void run_mult(const Options& o, std::ostream& out) {
  const auto rs = algebra(o);
  const Weight lam = lambda_of(o, rs);
  const auto split = choose_split(rs, o.split);
  MultTable t;
  t.depth = o.depth;
  std::unique_ptr<LieSuperalgebra> g;
  std::unique_ptr<Enveloping> U;
  if (o.kind == "quotient") {
    g = std::make_unique<LieSuperalgebra>(build_lie_algebra(rs));
    U = std::make_unique<Enveloping>(*g);
  } else if (o.kind != "partition" && o.kind != "torus" && o.kind != "verma" && o.kind != "hc") {
    throw ParseError("kind must be partition, torus, verma, hc or quotient");
  }
  for (const auto& d : cone_weights(rs, o.depth)) {
    Count c = 0;
    if (o.kind == "partition")
      c = super_kostant_partition(rs, d);
    else if (o.kind == "torus")
      c = torus_spectrum_mult(rs, lam, d);
    else if (o.kind == "verma")
      c = verma_weight_mult(rs, lam, d);
    else if (o.kind == "hc")
      c = hc_universal_mult(rs, split, lam, d);
    else
      c = U->irreducible_quotient_mult(lam, d);
    if (c != 0) t.rows.emplace_back(d, c);
  }
  print_table(o, out, rs, t, lam);
}

/// PBW monomial counts of U(n^-) by weight.
inline void run_verma(const Options& o, std::ostream& out) {
  const auto rs = algebra(o);
  const Weight lam = lambda_of(o, rs);
  const auto g = build_lie_algebra(rs);
  Enveloping U(g);
  MultTable t;
  t.depth = o.depth;
  for (const auto& d : cone_weights(rs, o.depth)) {
    const Count c = static_cast<Count>(U.monomials(-1, d).size());
    if (c != 0) t.rows.emplace_back(d, c);
  }
  Options copy = o;
  copy.kind = "verma";
  print_table(copy, out, rs, t, lam);
}

inline void run_shapovalov(const Options& o, std::ostream& out) {
  const auto rs = algebra(o);
  if (o.lambda.empty()) throw ParseError("shapovalov needs --lambda");
  const Weight lam = lambda_of(o, rs);
  const auto g = build_lie_algebra(rs);
  Enveloping U(g);
  Json summary = Json::array();
  std::ostringstream text;
  text << weight_header(rs.k, rs.n) << "size\trank\tfull\n";
  for (const auto& d : cone_weights(rs, o.depth)) {
    std::vector<Word> rows, cols;
    const auto M = U.contravariant_matrix(lam, d, &rows, &cols);
    if (M.rows() == 0) continue;
    const int r = rank(M);
    summary.push_back(Json{{"d", to_json(d)}, {"size", M.rows()}, {"rank", r}});
    text << weight_cells(d) << M.rows() << "\t" << r << "\t" << (r == M.rows() ? "yes" : "no") << "\n";
    if (o.matrices && !o.json) {
      std::ostringstream mt;
      mt << "# d = " << format_weight_spec(d) << "\n";
      for (const auto& c : cols) mt << "\t" << U.label(c);
      mt << "\n";
      for (int i = 0; i < M.rows(); ++i) {
        mt << U.label(rows[static_cast<std::size_t>(i)]);
        for (int j = 0; j < M.cols(); ++j) mt << "\t" << M(i, j).get_str();
        mt << "\n";
      }
      text << mt.str();
    }
  }
  if (o.json)
    out << Json{{"algebra", rs.name()}, {"lambda", to_json(lam)}, {"ranks", summary}}.dump(2) << "\n";
  else
    out << text.str();
}

inline OspContext osp_ctx(const Options& o) {
  if (o.m < 0 || o.n < 1) throw std::invalid_argument("Osp(m|2n) needs m >= 0 and n >= 1");
  return make_osp_context(o.m, o.n);
}

inline Json residual_json(const Matrix<Grassmann>& r) {
  Json a = Json::array();
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (!r(i, j).is_zero()) a.push_back(Json{{"row", i}, {"col", j}, {"value", to_json(r(i, j))}});
  return a;
}

// Random samples are real-form members (D-form members with --form D); `accept` filters them.
inline GMatrix load_or_sample(const Options& o, const OspContext& ctx, const std::string& path,
                              const std::function<bool(const GMatrix&)>& accept = {}) {
  if (o.random) {
    Sampler s(o.seed);
    for (int t = 0; t < 64; ++t) {
      GMatrix g = o.form == "D" ? random_osp_D(s, ctx, default_generators()) : random_osp_real(s, ctx, default_generators());
      if (!accept || accept(g)) return g;
    }
    throw std::invalid_argument("no acceptable random sample found");
  }
  if (path.empty()) throw ParseError("a matrix file or --random is required");
  const GMatrix g = gmatrix_from_json(read_json_file(path));
  check_osp_shape(g, ctx);
  return g;
}

inline void run_osp_check(const Options& o, std::ostream& out) {
  const auto ctx = osp_ctx(o);
  const GMatrix g = load_or_sample(o, ctx, o.input);
  const auto rep = osp_membership(g, ctx);
  std::optional<bool> real;
  if (!o.form.empty() && rep.member) {
    if (o.form != "real" && o.form != "D") throw ParseError("form must be real or D");
    real = real_form_membership(g, o.form == "real" ? RealForm::real : RealForm::D, ctx);
  }
  if (o.json) {
    Json blocks = Json::object();
    for (const auto& [name, r] : rep.block_residuals) blocks[name] = residual_json(r);
    Json j{{"member", rep.member}, {"blocks_member", rep.blocks_member}, {"residual", residual_json(rep.residual.matrix())},
           {"block_residuals", blocks}};
    if (real) j["real_form"] = Json{{"form", o.form}, {"member", *real}};
    if (o.random) j["matrix"] = to_json(g);
    out << j.dump(2) << "\n";
  } else {
    out << "A^t J A = J: " << (rep.member ? "yes" : "no") << "\n";
    out << "block relations: " << (rep.blocks_member ? "yes" : "no") << "\n";
    for (const auto& [name, r] : rep.block_residuals)
      if (!r.is_zero()) out << "  nonzero: " << name << "\n";
    if (real) out << o.form << " form: " << (*real ? "yes" : "no") << "\n";
  }
  if (!rep.member || rep.member != rep.blocks_member || (real && !*real)) throw ValidationFailure{};
}

inline void run_osp_basis(const Options& o, std::ostream& out) {
  const auto ctx = osp_ctx(o);
  const auto basis = osp_lie_basis(ctx);
  const auto [e, d] = parity_counts(basis);
  if (o.json) {
    Json a = Json::array();
    for (const auto& B : basis) a.push_back(to_json(B));
    out << Json{{"m", ctx.m}, {"n", ctx.n}, {"dim", Json::array({e, d})}, {"basis", a}}.dump(2) << "\n";
    return;
  }
  out << "osp(" << ctx.m << "|" << 2 * ctx.n << "): dim " << e << "|" << d << "\n";
}

inline ChartPoint load_point(const Options& o, const OspContext& ctx, bool disc) {
  if (o.base) return disc ? disc_origin(ctx, default_generators()) : siegel_base_point(ctx, default_generators());
  if (o.random && disc) {
    Sampler s(o.seed + 7);
    return random_disc_point(s, ctx, default_generators());
  }
  if (o.point.empty()) throw ParseError("a point file, --base or --random is required");
  return chart_point_from_json(read_json_file(o.point), ctx);
}

inline void print_point(const Options& o, std::ostream& out, const ChartPoint& p) {
  if (o.json) {
    out << to_json(p).dump(2) << "\n";
    return;
  }
  out << chart_name(p.tag) << "\n";
  for (int i = 0; i < p.z.rows(); ++i)
    for (int j = 0; j < p.z.cols(); ++j) out << "z[" << i << "," << j << "] = " << p.z(i, j).str() << "\n";
  for (int i = 0; i < p.zeta.rows(); ++i)
    for (int j = 0; j < p.zeta.cols(); ++j) out << "zeta[" << i << "," << j << "] = " << p.zeta(i, j).str() << "\n";
}

inline void require_chart_point(const ChartPoint& p) {
  if (!is_chart_point(p)) throw std::invalid_argument("point violates zeta^t zeta + z^t - z = 0");
}

inline void run_siegel_act(const Options& o, std::ostream& out) {
  const auto ctx = osp_ctx(o);
  const GMatrix g = load_or_sample(o, ctx, o.matrix);
  if (!is_osp_member(g, ctx)) throw std::invalid_argument("matrix is not in Osp(m|2n)");
  ChartPoint p = load_point(o, ctx, false);
  require_chart_point(p);
  if (g(0, 0).gens() != p.gens()) throw std::invalid_argument("matrix and point use different generator counts");
  print_point(o, out, fractional_action(g, p, ctx));
}

inline void run_siegel_normalize(const Options& o, std::ostream& out) {
  const auto ctx = osp_ctx(o);
  const GMatrix g = load_or_sample(o, ctx, o.matrix, [&](const GMatrix& x) {
    try {
      lagrangian_normalize(x, ctx);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  });
  const auto rep = lagrangian_normalize(g, ctx);
  if (o.json) {
    const auto P = osp_blocks(rep.parabolic, ctx);
    const int n = ctx.n, m = ctx.m;
    Json j = to_json(rep.point);
    j["u"] = to_json(GMatrix(BlockShape{m, 0}, BlockShape{m, 0}, P.a));
    j["xi"] = to_json(GMatrix(BlockShape{m, 0}, BlockShape{0, n}, P.al2));
    j["w"] = to_json(GMatrix(BlockShape{0, n}, BlockShape{0, n}, P.b12));
    out << j.dump(2) << "\n";
  } else {
    print_point(o, out, rep.point);
  }
}

inline void run_cayley(const Options& o, std::ostream& out) {
  const auto ctx = osp_ctx(o);
  ChartPoint p = load_point(o, ctx, !o.inverse);
  require_chart_point(p);
  print_point(o, out, o.inverse ? inverse_cayley_transform(p, ctx) : cayley_transform(p, ctx));
}

}  // namespace cli_detail

/// Runs one command line; 0 success, 1 validation failure, 2 parse error.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  Options o;
  CLI::App app{"Exact computations for Harish-Chandra supermodules and Osp(m|2n) geometry", "hcsuper"};
  app.require_subcommand(1);

  auto algebra_opts = [&](CLI::App* c) {
    c->add_option("--family", o.family, "A, B, C or D")->capture_default_str();
    c->add_option("--k", o.k, "eps rank")->capture_default_str();
    c->add_option("--n", o.n, "delta rank")->capture_default_str();
    c->add_flag("--json", o.json, "JSON output");
  };
  auto graded_opts = [&](CLI::App* c) {
    algebra_opts(c);
    c->add_option("--lambda", o.lambda, "weight 'eps;delta', e.g. '1,0;-1/2'");
    c->add_option("--depth", o.depth, "depth cutoff")->capture_default_str()->check(CLI::Range(0, 64));
    c->add_option("--split", o.split, "default, lemma or block")->capture_default_str();
  };
  auto osp_opts = [&](CLI::App* c) {
    c->add_option("--m", o.m, "orthogonal size m")->capture_default_str();
    c->add_option("--n", o.n, "symplectic half size n")->capture_default_str();
    c->add_flag("--json", o.json, "JSON output");
    c->add_flag("--random", o.random, "sample instead of reading a file");
    c->add_option("--seed", o.seed, "sampler seed")->capture_default_str();
  };

  auto* roots = app.add_subcommand("roots", "root system and its compact/noncompact split");
  algebra_opts(roots);
  roots->add_option("--split", o.split, "default, lemma or block")->capture_default_str();

  auto* adm = app.add_subcommand("admissible", "admissibility check or enumeration");
  algebra_opts(adm);
  adm->add_option("--split", o.split, "default, lemma or block")->capture_default_str();
  adm->add_flag("--enumerate", o.enumerate, "list all admissible positive systems");

  auto* mult = app.add_subcommand("mult", "weight multiplicity table");
  graded_opts(mult);
  mult->add_option("--kind", o.kind, "partition, torus, verma, hc or quotient")->capture_default_str();

  auto* verma = app.add_subcommand("verma", "PBW monomial counts of the Verma module");
  graded_opts(verma);

  auto* shap = app.add_subcommand("shapovalov", "ranks of the contravariant pairing matrices");
  graded_opts(shap);
  shap->add_flag("--matrices", o.matrices, "also print each pairing matrix");

  auto* osp = app.add_subcommand("osp", "Osp(m|2n) membership and Lie algebra basis");
  osp->require_subcommand(1);
  auto* check = osp->add_subcommand("check", "group membership of a supermatrix");
  osp_opts(check);
  check->add_option("--input", o.input, "SuperMatrix JSON file");
  check->add_option("--form", o.form, "also test the real or D real form");
  auto* basis = osp->add_subcommand("basis", "basis of osp(m|2n)");
  osp_opts(basis);

  auto* siegel = app.add_subcommand("siegel", "Lagrangian chart computations");
  siegel->require_subcommand(1);
  auto* act = siegel->add_subcommand("act", "fractional action on a chart point");
  osp_opts(act);
  act->add_option("--matrix", o.matrix, "SuperMatrix JSON file");
  act->add_option("--point", o.point, "ChartPoint JSON file");
  act->add_flag("--base", o.base, "act on the point (iI, 0)");
  auto* norm = siegel->add_subcommand("normalize", "chart representative of g P");
  osp_opts(norm);
  norm->add_option("--matrix", o.matrix, "SuperMatrix JSON file");

  auto* cay = app.add_subcommand("cayley", "Cayley transform between the disc and Siegel charts");
  osp_opts(cay);
  cay->add_option("--point", o.point, "ChartPoint JSON file");
  cay->add_flag("--base", o.base, "use the chart origin");
  cay->add_flag("--inverse", o.inverse, "Siegel to disc");

  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "hcsuper");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (roots->parsed()) run_roots(o, out);
    else if (adm->parsed()) run_admissible(o, out);
    else if (mult->parsed()) run_mult(o, out);
    else if (verma->parsed()) run_verma(o, out);
    else if (shap->parsed()) run_shapovalov(o, out);
    else if (check->parsed()) run_osp_check(o, out);
    else if (basis->parsed()) run_osp_basis(o, out);
    else if (act->parsed()) run_siegel_act(o, out);
    else if (norm->parsed()) run_siegel_normalize(o, out);
    else if (cay->parsed()) run_cayley(o, out);
  } catch (const ValidationFailure&) {
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hcsuper
