#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "osp.hpp"
#include "roots.hpp"
#include "weights.hpp"

namespace hcsuper {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars.

inline Json to_json(const Rational& r) { return r.get_str(); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a rational string");
  return parse_rational(j.get<std::string>());
}

/// Four coefficients in the basis 1, zeta, zeta^2, zeta^3.
inline Json to_json(const Cyclo& c) {
  Json a = Json::array();
  for (int k = 0; k < 4; ++k) a.push_back(to_json(c[k]));
  return a;
}

inline Cyclo cyclo_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("expected 4 cyclotomic coefficients");
  return Cyclo(rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2]), rational_from_json(j[3]));
}

/// [[indices (1-based), coefficient], ...] in canonical term order.
inline Json to_json(const Grassmann& g) {
  Json a = Json::array();
  for (const auto& [mask, c] : g.terms()) {
    Json idx = Json::array();
    for (int i : mask_indices(mask)) idx.push_back(i);
    a.push_back(Json::array({idx, to_json(c)}));
  }
  return a;
}

inline Grassmann grassmann_from_json(const Json& j, int gens) {
  if (!j.is_array()) throw ParseError("expected a Grassmann term list");
  Grassmann g(gens);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_array()) throw ParseError("malformed Grassmann term");
    std::vector<int> idx;
    for (const auto& i : term[0]) {
      if (!i.is_number_integer()) throw ParseError("generator index must be an integer");
      const int v = i.get<int>();
      if (v < 1 || v > gens) throw ParseError("generator index out of range");
      idx.push_back(v);
    }
    g += Grassmann::monomial(gens, idx, cyclo_from_json(term[1]));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Supermatrices. Scalar matrices are written with "gens": 0.

inline Json shape_json(const BlockShape& s) { return Json::array({s.even, s.odd}); }

inline BlockShape shape_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ParseError("shape must be [p, q]");
  const int p = j[0].get<int>(), q = j[1].get<int>();
  if (p < 0 || q < 0) throw ParseError("negative block size");
  return {p, q};
}

inline Json to_json(const GMatrix& a) {
  Json o;
  o["shape"] = shape_json(a.row_shape());
  if (!(a.col_shape() == a.row_shape())) o["cols"] = shape_json(a.col_shape());
  o["gens"] = a.rows() * a.cols() > 0 ? a(0, 0).gens() : 0;
  Json rows = Json::array();
  for (int i = 0; i < a.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < a.cols(); ++j) r.push_back(to_json(a(i, j)));
    rows.push_back(r);
  }
  o["entries"] = rows;
  return o;
}

inline Json to_json(const CMatrix& a) { return to_json(lift(a, 0)); }

inline GMatrix gmatrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("entries")) throw ParseError("supermatrix needs shape and entries");
  const BlockShape rs = shape_from_json(j["shape"]);
  const BlockShape cs = j.contains("cols") ? shape_from_json(j["cols"]) : rs;
  const int gens = j.value("gens", 0);
  if (gens < 0 || gens > Grassmann::kMaxGenerators) throw ParseError("generator count out of range");
  const Json& e = j["entries"];
  if (!e.is_array() || static_cast<int>(e.size()) != rs.size()) throw ParseError("entries do not match the row shape");
  GMatrix a(rs, cs, Grassmann(gens));
  for (int i = 0; i < rs.size(); ++i) {
    if (!e[static_cast<std::size_t>(i)].is_array() || static_cast<int>(e[static_cast<std::size_t>(i)].size()) != cs.size())
      throw ParseError("entries do not match the column shape");
    for (int c = 0; c < cs.size(); ++c) a(i, c) = grassmann_from_json(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], gens);
  }
  return a;
}

/// Scalar matrix; rejects entries with a soul.
inline CMatrix cmatrix_from_json(const Json& j) {
  const GMatrix g = gmatrix_from_json(j);
  for (const auto& x : g.matrix().data())
    if (!x.soul().is_zero()) throw ParseError("expected a scalar matrix");
  return body_matrix(g);
}

// ---------------------------------------------------------------------------
// Chart points: z as an (0|n) block, zeta as an (m|0) x (0|n) block.

inline Json to_json(const ChartPoint& p) {
  const int n = p.z.rows(), m = p.zeta.rows();
  Json o;
  o["chart"] = chart_name(p.tag);
  o["z"] = to_json(GMatrix(BlockShape{0, n}, BlockShape{0, n}, p.z));
  o["zeta"] = to_json(GMatrix(BlockShape{m, 0}, BlockShape{0, n}, p.zeta));
  return o;
}

inline ChartPoint chart_point_from_json(const Json& j, const OspContext& ctx) {
  if (!j.is_object() || !j.contains("z") || !j.contains("zeta")) throw ParseError("chart point needs z and zeta");
  ChartPoint p;
  const std::string chart = j.value("chart", "siegel");
  if (chart == "siegel")
    p.tag = ChartTag::siegel;
  else if (chart == "disc")
    p.tag = ChartTag::disc;
  else
    throw ParseError("unknown chart '" + chart + "'");
  const GMatrix z = gmatrix_from_json(j["z"]), zeta = gmatrix_from_json(j["zeta"]);
  if (z.rows() != ctx.n || z.cols() != ctx.n) throw ParseError("z must be n x n");
  if (zeta.rows() != ctx.m || zeta.cols() != ctx.n) throw ParseError("zeta must be m x n");
  const int gens = z(0, 0).gens();
  if (zeta.rows() > 0 && zeta(0, 0).gens() != gens) throw ParseError("z and zeta use different generator counts");
  p.z = z.matrix();
  p.zeta = zeta.rows() > 0 ? zeta.matrix() : Matrix<Grassmann>(0, ctx.n, Grassmann(gens));
  return p;
}

// ---------------------------------------------------------------------------
// Weights and root systems.

inline Json to_json(const Weight& w) {
  Json e = Json::array(), d = Json::array();
  for (const auto& x : w.eps) e.push_back(to_json(x));
  for (const auto& x : w.delta) d.push_back(to_json(x));
  return Json{{"eps", e}, {"delta", d}};
}

inline Weight weight_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("eps") || !j.contains("delta")) throw ParseError("weight needs eps and delta");
  Weight w;
  for (const auto& x : j["eps"]) w.eps.push_back(rational_from_json(x));
  for (const auto& x : j["delta"]) w.delta.push_back(rational_from_json(x));
  return w;
}

inline Json weights_json(const std::vector<Weight>& v) {
  Json a = Json::array();
  for (const auto& w : v) a.push_back(to_json(w));
  return a;
}

inline Json to_json(const RootSystem& rs, const Split& split) {
  Json o;
  o["family"] = std::string(1, family_letter(rs.family));
  o["k"] = rs.k;
  o["n"] = rs.n;
  Json roots = Json::array();
  for (const auto& r : rs.roots) {
    Json x = to_json(r.weight);
    x["parity"] = r.odd ? "odd" : "even";
    roots.push_back(x);
  }
  o["roots"] = roots;
  o["P_k"] = weights_json(detail::sorted(split.compact));
  o["P_n0"] = weights_json(detail::sorted(split.noncompact_even));
  o["P_n1"] = weights_json(detail::sorted(split.noncompact_odd));
  return o;
}

inline Json to_json(const RootSystem& rs) { return to_json(rs, rs.split); }

struct RootSystemRecord {
  Family family;
  int k = 0, n = 0;
  std::vector<Root> roots;
  Split split;
};

inline RootSystemRecord root_system_from_json(const Json& j) {
  RootSystemRecord r;
  try {
    r.family = parse_family(j.at("family").get<std::string>());
    r.k = j.at("k").get<int>();
    r.n = j.at("n").get<int>();
    for (const auto& x : j.at("roots")) {
      const std::string par = x.at("parity").get<std::string>();
      if (par != "odd" && par != "even") throw ParseError("parity must be odd or even");
      r.roots.push_back({weight_from_json(x), par == "odd"});
    }
    for (const auto& x : j.at("P_k")) r.split.compact.push_back(weight_from_json(x));
    for (const auto& x : j.at("P_n0")) r.split.noncompact_even.push_back(weight_from_json(x));
    for (const auto& x : j.at("P_n1")) r.split.noncompact_odd.push_back(weight_from_json(x));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("root system JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// TSV tables.

inline std::string weight_header(int k, int n) {
  std::string s;
  for (int j = 1; j <= k; ++j) s += "eps" + std::to_string(j) + "\t";
  for (int i = 1; i <= n; ++i) s += "delta" + std::to_string(i) + "\t";
  return s;
}

inline std::string weight_cells(const Weight& w) {
  std::string s;
  for (int i = 0; i < w.size(); ++i) s += w.coord(i).get_str() + "\t";
  return s;
}

/// Weight coordinates then the multiplicity, rows in the table's graded order.
inline std::string table_tsv(const RootSystem& rs, const MultTable& t) {
  std::ostringstream os;
  os << weight_header(rs.k, rs.n) << "mult\n";
  for (const auto& [w, c] : t.rows) os << weight_cells(w) << c << "\n";
  return os.str();
}

inline MultTable table_from_tsv(const std::string& text, int k, int n) {
  std::istringstream is(text);
  std::string line;
  MultTable t;
  if (!std::getline(is, line) || line != weight_header(k, n) + "mult") throw ParseError("unexpected TSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, '\t')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != k + n + 1) throw ParseError("TSV row has the wrong number of cells");
    Weight w(k, n);
    for (int i = 0; i < k + n; ++i) w.coord(i) = parse_rational(cells[static_cast<std::size_t>(i)]);
    t.rows.emplace_back(w, std::stoll(cells.back()));
  }
  return t;
}

}  // namespace hcsuper
