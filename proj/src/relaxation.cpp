#include "tame/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>
#include <stdexcept>

#include "tame/constants.hpp"
#include "tame/sexpr.hpp"
#include "tame/weightlp.hpp"

namespace tame {

// ---- names ------------------------------------------------------------------

std::string y_name(int v) { return "y[" + std::to_string(v) + "]"; }

std::string e_name(int v, int w) {
  if (w < v) std::swap(v, w);
  return "e[" + std::to_string(v) + "," + std::to_string(w) + "]";
}

std::string alpha_name(int v, int f) {
  return "alpha[" + std::to_string(v) + "," + std::to_string(f) + "]";
}

std::string sigma_name(int f) { return "sigma[" + std::to_string(f) + "]"; }
std::string tau_name(int f) { return "tau[" + std::to_string(f) + "]"; }
std::string sol_name(int f) { return "sol[" + std::to_string(f) + "]"; }

namespace {

std::string piece_key(int r, int p) {
  return "r" + std::to_string(r) + "," + std::to_string(p);
}

}  // namespace

std::string piece_sc_name(int r, int p) { return "sc[" + piece_key(r, p) + "]"; }
std::string piece_tausc_name(int r, int p) {
  return "tausc[" + piece_key(r, p) + "]";
}
std::string piece_sol_name(int r, int p) {
  return "sol[" + piece_key(r, p) + "]";
}
std::string piece_alpha_name(int r, int p, int v) {
  return "alpha[" + piece_key(r, p) + "," + std::to_string(v) + "]";
}
std::string penalty_name(int r) { return "pen[r" + std::to_string(r) + "]"; }
std::string piece_phisol_name(int r, int p) {
  return "phisol[" + piece_key(r, p) + "]";
}
std::string piece_adih_name(int r, int p, int corner) {
  return "adih[" + piece_key(r, p) + "," + std::to_string(corner) + "]";
}
std::string piece_quo_name(int r, int p, int slot) {
  return "quo[" + piece_key(r, p) + "," + std::to_string(slot) + "]";
}

std::string to_string(PieceRole role) {
  switch (role) {
    case PieceRole::kFlatQuarter: return "flat-quarter";
    case PieceRole::kUprightQuarter: return "upright-quarter";
    case PieceRole::kAnchoredSimplex: return "anchored-simplex";
    case PieceRole::kSubregion: return "subregion";
  }
  return "?";
}

std::string to_string(BranchRule::Kind kind) {
  switch (kind) {
    case BranchRule::Kind::kTriangleYsum: return "triangle-ysum";
    case BranchRule::Kind::kQuadStructure: return "quad-structure";
    case BranchRule::Kind::kUprightHeight: return "upright-height";
    case BranchRule::Kind::kUprightAnchor: return "upright-anchor";
    case BranchRule::Kind::kFlatQuarter: return "flat-quarter";
    case BranchRule::Kind::kTypeA: return "type-a";
    case BranchRule::Kind::kQuadDiagonal: return "quad-diagonal";
  }
  return "?";
}

// ---- schema -------------------------------------------------------------------

RelaxationSchema make_schema(const PlaneGraph& g) {
  RelaxationSchema s;
  s.nv = g.nv;
  s.faces = g.faces;
  for (std::size_t f = 0; f < g.faces.size(); ++f) {
    const Face& c = g.faces[f];
    if (c.size() == 3) s.triangles.push_back(static_cast<int>(f));
    for (std::size_t i = 0; i < c.size(); ++i) {
      s.angles.emplace_back(c[i], static_cast<int>(f));
      s.directed.emplace_back(c[i], c[(i + 1) % c.size()]);
    }
  }
  for (auto [v, w] : s.directed)
    s.undirected.emplace_back(std::min(v, w), std::max(v, w));
  std::sort(s.undirected.begin(), s.undirected.end());
  s.undirected.erase(std::unique(s.undirected.begin(), s.undirected.end()),
                     s.undirected.end());
  return s;
}

// ---- database -------------------------------------------------------------------

namespace {

// Shortest decimal that parses back to the same double.
std::string fmt_num(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

struct ParsedRole {
  std::string base;
  int index = -1;  // -1: scalar role, or bare `alpha`
};

ParsedRole split_role(const std::string& role, int line, int col) {
  std::size_t colon = role.find(':');
  if (colon == std::string::npos) return {role, -1};
  ParsedRole r;
  r.base = role.substr(0, colon);
  const std::string idx = role.substr(colon + 1);
  char* end = nullptr;
  long v = std::strtol(idx.c_str(), &end, 10);
  if (idx.empty() || *end != '\0' || v < 0)
    throw SexprError("bad role index in '" + role + "'", line, col);
  r.index = static_cast<int>(v);
  return r;
}

bool role_fits_ctx(const ParsedRole& r, const std::string& ctx_kind) {
  const bool face = ctx_kind == "face" || ctx_kind == "face-ge";
  const bool piece = ctx_kind == "role" || ctx_kind == "subregion";
  if (ctx_kind == "penalty") return r.base == "penalty" && r.index < 0;
  if (r.base == "alpha") return face || piece;
  if (r.base == "y" || r.base == "e") return (face || piece) && r.index >= 0;
  if (r.index >= 0) return false;
  if (face) return r.base == "sigma" || r.base == "tau" || r.base == "sol";
  if (piece)
    return r.base == "sc" || r.base == "tausc" || r.base == "sol" ||
           r.base == "phisol";
  return false;
}

long ctx_int(const Sexpr& s) {
  long v = s.as_int();
  if (v < 0) throw SexprError("negative context parameter", s.line, s.col);
  return v;
}

void validate_ctx(const std::vector<std::string>& ctx, const Sexpr& form) {
  auto fail = [&](const std::string& msg) {
    throw SexprError("row context: " + msg, form.line, form.col);
  };
  if (ctx.empty()) fail("empty");
  const std::string& kind = ctx[0];
  if (kind == "face" || kind == "face-ge") {
    if (ctx.size() != 2) fail(kind + " takes one length");
  } else if (kind == "role") {
    if (ctx.size() != 2) fail("role takes one tag");
    if (ctx[1] != "flat-quarter" && ctx[1] != "upright-quarter" &&
        ctx[1] != "anchored-simplex" && ctx[1] != "subregion")
      fail("unknown role tag '" + ctx[1] + "'");
  } else if (kind == "subregion") {
    if (ctx.size() != 3) fail("subregion takes (n, k)");
  } else if (kind == "penalty") {
    if (ctx.size() != 3) fail("penalty takes (length, flat count)");
  } else {
    fail("unknown selector '" + kind + "'");
  }
}

}  // namespace

IneqDB parse_ineq_db(const std::string& text, const std::string& source) {
  IneqDB db;
  std::set<std::string> ids;
  for (const Sexpr& form : parse_sexprs(text, source)) {
    if (form.head() != "row")
      throw SexprError("expected (row ...)", form.line, form.col);
    if (form.size() < 2 || !form.at(1).is_atom)
      throw SexprError("row needs an id atom", form.line, form.col);
    DBRow row;
    row.id = form.at(1).atom;
    if (!ids.insert(row.id).second)
      throw SexprError("duplicate row id '" + row.id + "'", form.line,
                       form.col);
    bool saw_ctx = false, saw_lhs = false, saw_rel = false, saw_rhs = false,
         saw_cite = false;
    for (std::size_t i = 2; i < form.size(); ++i) {
      const Sexpr& part = form.at(i);
      const std::string h = part.head();
      if (h == "ctx") {
        for (std::size_t j = 1; j < part.size(); ++j)
          row.ctx.push_back(part.at(j).as_atom());
        validate_ctx(row.ctx, part);
        if (row.ctx[0] == "face" || row.ctx[0] == "face-ge") ctx_int(part.at(2));
        if (row.ctx[0] == "subregion" || row.ctx[0] == "penalty") {
          ctx_int(part.at(2));
          ctx_int(part.at(3));
        }
        saw_ctx = true;
      } else if (h == "lhs") {
        for (std::size_t j = 1; j < part.size(); ++j) {
          const Sexpr& c = part.at(j);
          if (c.head() != "coef" || c.size() != 3)
            throw SexprError("expected (coef <role> <decimal>)", c.line, c.col);
          row.lhs.push_back({c.at(1).as_atom(), c.at(2).as_number()});
        }
        saw_lhs = true;
      } else if (h == "rel") {
        const std::string& r = part.at(1).as_atom();
        if (r == "<=")
          row.rel = Relation::kLe;
        else if (r == ">=")
          row.rel = Relation::kGe;
        else if (r == "=")
          row.rel = Relation::kEq;
        else
          throw SexprError("relation must be <=, >= or =", part.line, part.col);
        saw_rel = true;
      } else if (h == "rhs") {
        row.rhs = part.at(1).as_number();
        saw_rhs = true;
      } else if (h == "cite") {
        row.cite = part.at(1).as_atom();
        if (row.cite.find('"') != std::string::npos)
          throw SexprError("citation may not contain '\"'", part.line,
                           part.col);
        saw_cite = true;
      } else {
        throw SexprError("unknown row part '" + h + "'", part.line, part.col);
      }
    }
    if (!saw_ctx || !saw_lhs || !saw_rel || !saw_rhs || !saw_cite)
      throw SexprError(
          "row '" + row.id + "' needs ctx, lhs, rel, rhs and cite", form.line,
          form.col);
    if (row.lhs.empty())
      throw SexprError("row '" + row.id + "' has an empty lhs", form.line,
                       form.col);
    for (const DBCoef& c : row.lhs) {
      ParsedRole pr = split_role(c.role, form.line, form.col);
      if (!role_fits_ctx(pr, row.ctx[0]))
        throw SexprError("role '" + c.role + "' does not fit context '" +
                             row.ctx[0] + "' in row '" + row.id + "'",
                         form.line, form.col);
    }
    db.rows.push_back(std::move(row));
  }
  return db;
}

IneqDB read_ineq_db_file(const std::string& path) {
  return parse_ineq_db(read_text_file(path), path);
}

std::string write_ineq_db(const IneqDB& db) {
  std::string out;
  for (const DBRow& row : db.rows) {
    out += "(row " + row.id + "\n  (ctx";
    for (const std::string& c : row.ctx) out += " " + c;
    out += ")\n  (lhs";
    for (const DBCoef& c : row.lhs)
      out += " (coef " + c.role + " " + fmt_num(c.value) + ")";
    out += ")\n  (rel ";
    out += row.rel == Relation::kLe ? "<=" : row.rel == Relation::kGe ? ">=" : "=";
    out += ")\n  (rhs " + fmt_num(row.rhs) + ")\n  (cite \"" + row.cite +
           "\"))\n\n";
  }
  return out;
}

// ---- row instantiation -------------------------------------------------------

namespace {

// Variable indices around one cycle (a face or a refinement piece).  A value
// of -1 marks a family the context does not carry; rows touching it are
// skipped rather than half-applied.
struct CycleVars {
  int len = 0;
  std::map<std::string, int> scalars;
  std::vector<int> alpha, y, e;  // per corner; e: corner i to corner i+1
};

void instantiate_row(LPModel& lp, const DBRow& row, const CycleVars& cv) {
  bool indexed = false;
  for (const DBCoef& c : row.lhs) {
    ParsedRole pr = split_role(c.role, 0, 0);
    if (pr.base == "alpha" || pr.base == "y" || pr.base == "e") indexed = true;
    if (pr.index >= cv.len && cv.len > 0) return;  // row does not fit the cycle
  }
  const int rotations = indexed ? cv.len : 1;
  for (int s = 0; s < rotations; ++s) {
    std::map<int, double> coeffs;
    for (const DBCoef& c : row.lhs) {
      ParsedRole pr = split_role(c.role, 0, 0);
      int var = -1;
      if (pr.base == "alpha" || pr.base == "y" || pr.base == "e") {
        const int corner = (s + std::max(pr.index, 0)) % cv.len;
        const std::vector<int>& fam = pr.base == "alpha" ? cv.alpha
                                      : pr.base == "y"   ? cv.y
                                                         : cv.e;
        var = fam[corner];
      } else {
        auto it = cv.scalars.find(pr.base);
        var = it == cv.scalars.end() ? -1 : it->second;
      }
      if (var < 0) return;  // family absent here (e.g. phisol without the
                            // truncated-score expansion)
      coeffs[var] += c.value;
    }
    lp.add_row("db:" + row.id,
               std::vector<std::pair<int, double>>(coeffs.begin(), coeffs.end()),
               row.rel, row.rhs);
  }
}

CycleVars face_cycle_vars(const RelaxationModel& m, int f) {
  const Face& c = m.schema.faces[f];
  CycleVars cv;
  cv.len = static_cast<int>(c.size());
  cv.scalars = {{"sigma", m.sigma_var[f]},
                {"tau", m.tau_var[f]},
                {"sol", m.sol_var[f]}};
  for (int i = 0; i < cv.len; ++i) {
    cv.alpha.push_back(m.alpha_var.at({c[i], f}));
    cv.y.push_back(m.y_var[c[i]]);
    int v = c[i], w = c[(i + 1) % cv.len];
    cv.e.push_back(m.e_var.at({std::min(v, w), std::max(v, w)}));
  }
  return cv;
}

int count_flat_quarters(const Refinement& r) {
  int f = 0;
  for (const RefinementPiece& p : r.pieces)
    f += p.role == PieceRole::kFlatQuarter;
  return f;
}

}  // namespace

// ---- build ---------------------------------------------------------------------

RelaxationModel build_relaxation(const PlaneGraph& g, const IneqDB& db,
                                 const BuildOptions& opts) {
  validate_plane_graph(g);
  const ConstantTable& ct = constants();
  const double pi = std::numbers::pi;
  const double fourpi = 4.0 * pi;

  RelaxationModel m;
  m.schema = make_schema(g);
  m.edge_lower = opts.edge_lower;
  LPModel& lp = m.lp;
  lp.maximize = true;

  m.y_var.resize(g.nv);
  for (int v = 0; v < g.nv; ++v)
    m.y_var[v] = lp.add_variable(y_name(v), opts.edge_lower, ct.two_t0);
  for (auto [v, w] : m.schema.undirected)
    m.e_var[{v, w}] = lp.add_variable(e_name(v, w), opts.edge_lower, ct.two_t0);

  const int nf = static_cast<int>(g.faces.size());
  m.sigma_var.resize(nf);
  m.tau_var.resize(nf);
  m.sol_var.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const int len = static_cast<int>(g.faces[f].size());
    m.sigma_var[f] = lp.add_variable(sigma_name(f), -kLPInfinity, kLPInfinity);
    lp.set_objective(m.sigma_var[f], 1.0);
    // Per-face squander is at least d(len)*pt; this is the bound that keeps
    // the whole maximization finite.
    m.tau_var[f] = lp.add_variable(tau_name(f), ct.d_of(len) * ct.pt,
                                   kLPInfinity);
    m.sol_var[f] = lp.add_variable(sol_name(f), 0.0, fourpi);
  }
  for (auto [v, f] : m.schema.angles)
    m.alpha_var[{v, f}] = lp.add_variable(alpha_name(v, f), 0.0, 2.0 * pi);

  // Identities.  Squander converts score at the fixed rate zeta*pt.
  for (int f = 0; f < nf; ++f)
    lp.add_row("identity:squander",
               {{m.tau_var[f], 1.0},
                {m.sigma_var[f], 1.0},
                {m.sol_var[f], -ct.zeta * ct.pt}},
               Relation::kEq, 0.0);
  {
    std::vector<std::vector<std::pair<int, double>>> at(g.nv);
    for (auto [v, f] : m.schema.angles)
      at[v].push_back({m.alpha_var.at({v, f}), 1.0});
    for (int v = 0; v < g.nv; ++v)
      lp.add_row("identity:vertex-angle", std::move(at[v]), Relation::kEq,
                 2.0 * pi);
  }
  for (int f = 0; f < nf; ++f) {
    const Face& c = g.faces[f];
    std::vector<std::pair<int, double>> coeffs{{m.sol_var[f], 1.0}};
    for (int v : c) coeffs.push_back({m.alpha_var.at({v, f}), -1.0});
    lp.add_row("identity:solid-angle", std::move(coeffs), Relation::kEq,
               -(static_cast<double>(c.size()) - 2.0) * pi);
  }

  // Admissibility rows, translated from the weight model: weights are
  // squander in pt units, so every cover row scales by pt onto the tau
  // family (the per-face d(len) bounds already sit on the tau bounds).
  WeightModel wm = build_weight_lp(g);
  for (const LPRow& row : wm.lp.rows) {
    std::vector<std::pair<int, double>> coeffs;
    for (auto [f, c] : row.coeffs) coeffs.push_back({m.tau_var[f], c});
    lp.add_row("identity:admissible:" + row.tag, std::move(coeffs), row.rel,
               row.rhs * ct.pt);
  }

  for (const DBRow& row : db.rows) {
    if (row.ctx[0] != "face" && row.ctx[0] != "face-ge") continue;
    const int n = std::atoi(row.ctx[1].c_str());
    for (int f = 0; f < nf; ++f) {
      const int len = static_cast<int>(g.faces[f].size());
      if (row.ctx[0] == "face" ? len == n : len >= n)
        instantiate_row(lp, row, face_cycle_vars(m, f));
    }
  }

  m.note = "edge lower bound " + fmt_num(opts.edge_lower) +
           (opts.edge_lower > 0.0 ? " (packing distance bound)"
                                  : " (stated bound block)");
  if (wm.subset_rows_truncated) m.note += "; " + wm.note;
  lp.check();
  return m;
}

// ---- refinement ----------------------------------------------------------------

namespace {

int ensure_edge(RelaxationModel& m, int v, int w, double lo, double hi) {
  const std::pair<int, int> key{std::min(v, w), std::max(v, w)};
  auto it = m.e_var.find(key);
  if (it != m.e_var.end()) return it->second;
  const int idx = m.lp.add_variable(e_name(v, w), lo, hi);
  m.e_var[key] = idx;
  return idx;
}

void tighten_var(LPModel& lp, int idx, double lo, double hi,
                 const std::string& what) {
  LPVariable& v = lp.vars[idx];
  v.lower = std::max(v.lower, lo);
  v.upper = std::min(v.upper, hi);
  if (v.lower > v.upper)
    throw std::invalid_argument("contradictory bounds on " + v.name + " (" +
                                what + ")");
}

bool consecutive_in(const Face& cycle, int v, int w) {
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n; ++i) {
    int a = cycle[i], b = cycle[(i + 1) % n];
    if ((a == v && b == w) || (a == w && b == v)) return true;
  }
  return false;
}

}  // namespace

RelaxationModel refine_face(const RelaxationModel& model, const Refinement& r,
                            const IneqDB& db) {
  const ConstantTable& ct = constants();
  const double pi = std::numbers::pi;
  RelaxationModel m = model;

  if (r.face < 0 || r.face >= static_cast<int>(m.schema.faces.size()))
    throw std::invalid_argument("refine_face: face index out of range");
  if (r.pieces.empty())
    throw std::invalid_argument("refine_face: no pieces");
  const Face& F = m.schema.faces[r.face];
  const int base = static_cast<int>(m.y_var.size());

  std::set<int> face_corners(F.begin(), F.end());
  std::set<int> seen_graph, seen_new;
  for (const RefinementPiece& p : r.pieces) {
    if (p.cycle.size() < 3)
      throw std::invalid_argument("refine_face: piece shorter than 3");
    std::set<int> distinct(p.cycle.begin(), p.cycle.end());
    if (distinct.size() != p.cycle.size())
      throw std::invalid_argument("refine_face: repeated corner in a piece");
    for (int v : p.cycle) {
      if (v < 0) throw std::invalid_argument("refine_face: negative corner id");
      if (v < m.schema.nv) {
        if (!face_corners.count(v))
          throw std::invalid_argument("refine_face: corner " +
                                      std::to_string(v) +
                                      " is not on the refined face");
        seen_graph.insert(v);
      } else if (v >= base) {
        seen_new.insert(v);
      } else {
        throw std::invalid_argument(
            "refine_face: corner " + std::to_string(v) +
            " belongs to an earlier refinement");
      }
    }
  }
  if (seen_graph != face_corners)
    throw std::invalid_argument(
        "refine_face: pieces must use every corner of the face");
  if (!seen_new.empty() &&
      (*seen_new.begin() != base ||
       *seen_new.rbegin() != base + static_cast<int>(seen_new.size()) - 1))
    throw std::invalid_argument(
        "refine_face: new corner ids must be contiguous from " +
        std::to_string(base));
  std::set<int> upright(r.upright.begin(), r.upright.end());
  for (int u : upright)
    if (!seen_new.count(u))
      throw std::invalid_argument("refine_face: upright id " +
                                  std::to_string(u) + " is not a new corner");

  // The pieces plus the reversed face must close into a plane graph: every
  // interior edge is walked once each way, the boundary once by a piece and
  // once by the cap.
  {
    std::map<int, int> relabel;
    int next = 0;
    auto dense = [&](int v) {
      auto [it, inserted] = relabel.emplace(v, next);
      if (inserted) ++next;
      return it->second;
    };
    std::vector<Face> faces;
    for (const RefinementPiece& p : r.pieces) {
      Face c;
      for (int v : p.cycle) c.push_back(dense(v));
      faces.push_back(std::move(c));
    }
    Face cap;
    for (auto it = F.rbegin(); it != F.rend(); ++it) cap.push_back(dense(*it));
    faces.push_back(std::move(cap));
    try {
      validate_plane_graph(make_plane_graph(std::move(faces)));
    } catch (const std::exception& ex) {
      throw std::invalid_argument(std::string("refine_face: pieces do not "
                                              "tile the face: ") +
                                  ex.what());
    }
  }

  const int rid = static_cast<int>(m.refinements.size());
  LPModel& lp = m.lp;

  // Heights for the new corners.  Upright tops sit in [2*t0, sqrt8]; other
  // interior corners are ordinary packing points under the truncation height.
  m.y_var.resize(base + seen_new.size());
  for (int v = base; v < static_cast<int>(m.y_var.size()); ++v)
    m.y_var[v] = upright.count(v)
                     ? lp.add_variable(y_name(v), ct.two_t0, ct.sqrt8)
                     : lp.add_variable(y_name(v), m.edge_lower, ct.two_t0);

  // Piece boundary edges.  A chord between face corners that is not a graph
  // edge is longer than 2*t0 (otherwise the graph would contain it); edges
  // touching a new corner only obey the packing lower bound.
  const double chord_lower = m.edge_lower > 0.0 ? ct.two_t0 : 0.0;
  for (const RefinementPiece& p : r.pieces) {
    const std::size_t n = p.cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
      int v = p.cycle[i], w = p.cycle[(i + 1) % n];
      const bool both_graph = v < m.schema.nv && w < m.schema.nv;
      ensure_edge(m, v, w, both_graph ? chord_lower : m.edge_lower,
                  kLPInfinity);
    }
  }

  // Role-definitional edge facts.
  for (const RefinementPiece& p : r.pieces) {
    const std::size_t n = p.cycle.size();
    if (p.role == PieceRole::kFlatQuarter) {
      if (n != 3)
        throw std::invalid_argument("refine_face: flat quarter must be a "
                                    "triangle");
      int chord_a = -1, chord_b = -1, chords = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        int v = p.cycle[i], w = p.cycle[(i + 1) % 3];
        if (v >= m.schema.nv || w >= m.schema.nv)
          throw std::invalid_argument(
              "refine_face: flat quarter corners must be face corners");
        if (!consecutive_in(F, v, w)) {
          ++chords;
          chord_a = v;
          chord_b = w;
        }
      }
      if (chords != 1)
        throw std::invalid_argument(
            "refine_face: flat quarter needs exactly one diagonal");
      tighten_var(lp, ensure_edge(m, chord_a, chord_b, chord_lower,
                                  kLPInfinity),
                  ct.two_t0, ct.sqrt8, "flat-quarter diagonal");
    } else if (p.role == PieceRole::kUprightQuarter ||
               p.role == PieceRole::kAnchoredSimplex) {
      if (n != 3)
        throw std::invalid_argument("refine_face: " + to_string(p.role) +
                                    " must be a triangle");
      int tops = 0, top = -1;
      for (int v : p.cycle) tops += upright.count(v) ? (top = v, 1) : 0;
      if (tops != 1)
        throw std::invalid_argument("refine_face: " + to_string(p.role) +
                                    " needs exactly one upright corner");
      // Edges meeting the top are quarter/anchor edges, hence under 2*t0;
      // for an upright quarter the base edge is too.
      for (std::size_t i = 0; i < 3; ++i) {
        int v = p.cycle[i], w = p.cycle[(i + 1) % 3];
        if (v == top || w == top || p.role == PieceRole::kUprightQuarter)
          tighten_var(lp, ensure_edge(m, v, w, m.edge_lower, kLPInfinity), 0.0,
                      ct.two_t0, to_string(p.role) + " edge");
      }
    }
  }

  RefinementRecord rec;
  rec.spec = r;
  rec.penalty_var = lp.add_variable(
      penalty_name(rid), 0.0,
      r.penalty == PenaltyPolicy::kZero ? 0.0 : kLPInfinity);

  // Piece score variables and identities.
  const double fourpi = 4.0 * pi;
  for (std::size_t pi_ = 0; pi_ < r.pieces.size(); ++pi_) {
    const RefinementPiece& p = r.pieces[pi_];
    const int len = static_cast<int>(p.cycle.size());
    PieceVars pv;
    pv.sc = lp.add_variable(piece_sc_name(rid, static_cast<int>(pi_)),
                            -kLPInfinity, kLPInfinity);
    pv.tausc = lp.add_variable(piece_tausc_name(rid, static_cast<int>(pi_)),
                               -kLPInfinity, kLPInfinity);
    pv.sol = lp.add_variable(piece_sol_name(rid, static_cast<int>(pi_)), 0.0,
                             fourpi);
    for (int v : p.cycle)
      pv.alpha.push_back(lp.add_variable(
          piece_alpha_name(rid, static_cast<int>(pi_), v), 0.0, 2.0 * pi));

    lp.add_row("identity:refine-squander",
               {{pv.tausc, 1.0}, {pv.sc, 1.0}, {pv.sol, -ct.zeta * ct.pt}},
               Relation::kEq, 0.0);
    {
      std::vector<std::pair<int, double>> coeffs{{pv.sol, 1.0}};
      for (int a : pv.alpha) coeffs.push_back({a, -1.0});
      lp.add_row("identity:refine-solid", std::move(coeffs), Relation::kEq,
                 -(static_cast<double>(len) - 2.0) * pi);
    }
    if (p.role == PieceRole::kAnchoredSimplex)
      lp.add_row("identity:role-anchored", {{pv.sc, 1.0}}, Relation::kLe, 0.0);

    if (r.truncated_score_vars) {
      // Truncated-score expansion: sc = phisol + per-corner angle terms
      // - 4*delta_oct * wedge volumes.  The new variables are opaque to the
      // builder (volumes non-negative, the rest database-constrained).
      const int phisol = lp.add_variable(
          piece_phisol_name(rid, static_cast<int>(pi_)), -kLPInfinity,
          kLPInfinity);
      std::vector<std::pair<int, double>> coeffs{{pv.sc, 1.0},
                                                 {phisol, -1.0}};
      for (int i = 0; i < len; ++i)
        coeffs.push_back(
            {lp.add_variable(piece_adih_name(rid, static_cast<int>(pi_), i),
                             -kLPInfinity, kLPInfinity),
             -1.0});
      for (int j = 0; j < 2 * len; ++j)
        coeffs.push_back(
            {lp.add_variable(piece_quo_name(rid, static_cast<int>(pi_), j),
                             0.0, kLPInfinity),
             4.0 * ct.delta_oct});
      lp.add_row("identity:truncated-score", std::move(coeffs), Relation::kEq,
                 0.0);
    }
    rec.pieces.push_back(std::move(pv));
  }

  // Angle compatibility: piece angles at a face corner refine the coarse
  // angle; around an interior corner they close up to 2*pi.
  {
    std::map<int, std::vector<std::pair<int, double>>> at;
    for (std::size_t pi_ = 0; pi_ < r.pieces.size(); ++pi_) {
      const RefinementPiece& p = r.pieces[pi_];
      for (std::size_t i = 0; i < p.cycle.size(); ++i)
        at[p.cycle[i]].push_back({rec.pieces[pi_].alpha[i], 1.0});
    }
    for (auto& [v, coeffs] : at) {
      if (v < m.schema.nv) {
        coeffs.push_back({m.alpha_var.at({v, r.face}), -1.0});
        lp.add_row("identity:refine-angle", std::move(coeffs), Relation::kEq,
                   0.0);
      } else {
        lp.add_row("identity:refine-closure", std::move(coeffs), Relation::kEq,
                   2.0 * pi);
      }
    }
  }

  // The refined face's score splits over the pieces up to the erasure
  // penalty.
  {
    std::vector<std::pair<int, double>> coeffs{{m.sigma_var[r.face], 1.0},
                                               {rec.penalty_var, -1.0}};
    for (const PieceVars& pv : rec.pieces) coeffs.push_back({pv.sc, -1.0});
    lp.add_row("identity:refine-score", std::move(coeffs), Relation::kLe, 0.0);
  }

  // Database rows for pieces and for the penalty.
  for (std::size_t pi_ = 0; pi_ < r.pieces.size(); ++pi_) {
    const RefinementPiece& p = r.pieces[pi_];
    CycleVars cv;
    cv.len = static_cast<int>(p.cycle.size());
    cv.scalars = {{"sc", rec.pieces[pi_].sc},
                  {"tausc", rec.pieces[pi_].tausc},
                  {"sol", rec.pieces[pi_].sol}};
    if (r.truncated_score_vars)
      cv.scalars["phisol"] =
          lp.variable(piece_phisol_name(rid, static_cast<int>(pi_)));
    cv.alpha = rec.pieces[pi_].alpha;
    for (int i = 0; i < cv.len; ++i) {
      int v = p.cycle[i], w = p.cycle[(i + 1) % cv.len];
      cv.y.push_back(m.y_var[p.cycle[i]]);
      cv.e.push_back(m.e_var.at({std::min(v, w), std::max(v, w)}));
    }
    for (const DBRow& row : db.rows) {
      const bool by_role = row.ctx[0] == "role" && row.ctx[1] == to_string(p.role);
      const bool by_params = row.ctx[0] == "subregion" &&
                             p.role == PieceRole::kSubregion &&
                             std::atoi(row.ctx[1].c_str()) == p.params_n &&
                             std::atoi(row.ctx[2].c_str()) == p.params_k;
      if (by_role || by_params) instantiate_row(lp, row, cv);
    }
  }
  if (r.penalty == PenaltyPolicy::kFromDb) {
    const int flats = count_flat_quarters(r);
    CycleVars cv;
    cv.len = 0;
    cv.scalars = {{"penalty", rec.penalty_var}};
    for (const DBRow& row : db.rows)
      if (row.ctx[0] == "penalty" &&
          std::atoi(row.ctx[1].c_str()) == static_cast<int>(F.size()) &&
          std::atoi(row.ctx[2].c_str()) == flats)
        instantiate_row(lp, row, cv);
  }

  m.refinements.push_back(std::move(rec));
  lp.check();
  return m;
}

// ---- derived inequalities ------------------------------------------------------

DerivedInequality derive_inequality(
    const RelaxationModel& model,
    const std::vector<std::pair<std::string, double>>& form, double rhs,
    const SolveOptions& opts) {
  LPModel lp = model.lp;
  lp.maximize = true;
  lp.objective.assign(lp.vars.size(), 0.0);
  for (const auto& [name, coef] : form) {
    const int j = lp.variable(name);
    if (j < 0)
      throw std::invalid_argument("derive_inequality: unknown variable '" +
                                  name + "'");
    lp.objective[j] += coef;
  }
  DerivedInequality d;
  d.lp = solve(lp, opts);
  switch (d.lp.status) {
    case SolveStatus::kOptimal:
      d.bounded = true;
      d.maximum = d.lp.value;
      d.margin = rhs - d.lp.value;
      d.proven = d.lp.value <= rhs;
      break;
    case SolveStatus::kUnbounded:
      d.bounded = false;
      d.proven = false;
      d.maximum = kLPInfinity;
      d.margin = -kLPInfinity;
      break;
    case SolveStatus::kInfeasible:
      // Nothing is feasible, so the claim holds vacuously.
      d.bounded = true;
      d.proven = true;
      d.maximum = -kLPInfinity;
      d.margin = kLPInfinity;
      break;
  }
  return d;
}

// ---- branching -----------------------------------------------------------------

namespace {

RelaxationModel with_rows(
    const RelaxationModel& parent, const std::string& tag,
    const std::vector<std::tuple<int, Relation, double>>& facts) {
  RelaxationModel child = parent;
  for (const auto& [var, rel, bound] : facts)
    child.lp.add_row(tag, {{var, 1.0}}, rel, bound);
  return child;
}

const RefinementRecord& checked_refinement(const RelaxationModel& m,
                                           const BranchRule& rule) {
  if (rule.refinement < 0 ||
      rule.refinement >= static_cast<int>(m.refinements.size()))
    throw std::invalid_argument("branch: refinement index out of range");
  const RefinementRecord& rec = m.refinements[rule.refinement];
  if (rule.piece < 0 ||
      rule.piece >= static_cast<int>(rec.spec.pieces.size()))
    throw std::invalid_argument("branch: piece index out of range");
  return rec;
}

// Chord edges of a piece: boundary pairs of face corners that are not
// consecutive on the refined face.
std::vector<std::pair<int, int>> piece_chords(const RelaxationModel& m,
                                              const RefinementRecord& rec,
                                              int piece) {
  const Face& F = m.schema.faces[rec.spec.face];
  const Face& c = rec.spec.pieces[piece].cycle;
  std::vector<std::pair<int, int>> chords;
  for (std::size_t i = 0; i < c.size(); ++i) {
    int v = c[i], w = c[(i + 1) % c.size()];
    if (v < m.schema.nv && w < m.schema.nv && !consecutive_in(F, v, w))
      chords.emplace_back(v, w);
  }
  return chords;
}

}  // namespace

std::vector<RelaxationModel> branch(const RelaxationModel& model,
                                    const BranchRule& rule) {
  const ConstantTable& ct = constants();
  const std::string tag = "branch:" + to_string(rule.kind);
  std::vector<RelaxationModel> children;

  switch (rule.kind) {
    case BranchRule::Kind::kTriangleYsum: {
      if (rule.face < 0 ||
          rule.face >= static_cast<int>(model.schema.faces.size()) ||
          model.schema.faces[rule.face].size() != 3)
        throw std::invalid_argument("branch: triangle-ysum needs a triangle");
      std::vector<std::pair<int, double>> ysum;
      for (int v : model.schema.faces[rule.face])
        ysum.push_back({model.y_var[v], 1.0});
      for (Relation rel : {Relation::kLe, Relation::kGe}) {
        RelaxationModel child = model;
        child.lp.add_row(tag + (rel == Relation::kLe ? ":lo" : ":hi"), ysum,
                         rel, ct.triangle_ysum_split);
        children.push_back(std::move(child));
      }
      break;
    }
    case BranchRule::Kind::kQuadStructure: {
      if (rule.face < 0 ||
          rule.face >= static_cast<int>(model.schema.faces.size()) ||
          model.schema.faces[rule.face].size() != 4)
        throw std::invalid_argument("branch: quad-structure needs a "
                                    "quadrilateral");
      const Face& F = model.schema.faces[rule.face];
      const double chord_lower = model.edge_lower > 0.0 ? ct.two_t0 : 0.0;
      // Flat pair along either diagonal: the diagonal is a quarter diagonal.
      for (int d = 0; d < 2; ++d) {
        RelaxationModel child = model;
        const int var = ensure_edge(child, F[d], F[d + 2], chord_lower,
                                    kLPInfinity);
        child.lp.add_row(tag + ":flat" + std::to_string(d),
                         {{var, 1.0}}, Relation::kGe, ct.two_t0);
        child.lp.add_row(tag + ":flat" + std::to_string(d),
                         {{var, 1.0}}, Relation::kLe, ct.sqrt8);
        children.push_back(std::move(child));
      }
      // Central upright top carrying four upright quarters.
      {
        Refinement r;
        r.face = rule.face;
        const int u = static_cast<int>(model.y_var.size());
        for (int i = 0; i < 4; ++i)
          r.pieces.push_back(
              {{F[i], F[(i + 1) % 4], u}, PieceRole::kUprightQuarter, 0, 0});
        r.upright = {u};
        r.penalty = PenaltyPolicy::kZero;
        children.push_back(refine_face(model, r, IneqDB{}));
      }
      // No quarters: both diagonals beyond sqrt8.
      {
        RelaxationModel child = model;
        for (int d = 0; d < 2; ++d) {
          const int var = ensure_edge(child, F[d], F[d + 2], chord_lower,
                                      kLPInfinity);
          child.lp.add_row(tag + ":long", {{var, 1.0}}, Relation::kGe,
                           ct.sqrt8);
        }
        children.push_back(std::move(child));
      }
      break;
    }
    case BranchRule::Kind::kUprightHeight: {
      if (rule.vertex < 0 || rule.vertex >= static_cast<int>(model.y_var.size()) ||
          rule.vertex < model.schema.nv)
        throw std::invalid_argument("branch: upright-height needs an upright "
                                    "top id");
      const int y = model.y_var[rule.vertex];
      children.push_back(with_rows(
          model, tag + ":lo", {{y, Relation::kLe, ct.upright_height_split}}));
      children.push_back(with_rows(
          model, tag + ":hi", {{y, Relation::kGe, ct.upright_height_split}}));
      break;
    }
    case BranchRule::Kind::kUprightAnchor: {
      if (rule.vertex < model.schema.nv ||
          rule.vertex >= static_cast<int>(model.y_var.size()) ||
          rule.partner < 0 || rule.partner >= model.schema.nv)
        throw std::invalid_argument("branch: upright-anchor needs an upright "
                                    "top and a graph corner");
      const int yw = model.y_var[rule.partner];
      RelaxationModel base = model;
      const int reach = ensure_edge(base, rule.vertex, rule.partner,
                                    base.edge_lower, kLPInfinity);
      children.push_back(
          with_rows(base, tag + ":tall", {{yw, Relation::kGe, ct.anchor_split}}));
      children.push_back(with_rows(base, tag + ":far",
                                   {{reach, Relation::kGe, ct.anchor_split}}));
      children.push_back(
          with_rows(base, tag + ":near",
                    {{yw, Relation::kLe, ct.anchor_split},
                     {reach, Relation::kLe, ct.anchor_split}}));
      break;
    }
    case BranchRule::Kind::kFlatQuarter: {
      const RefinementRecord& rec = checked_refinement(model, rule);
      const RefinementPiece& p = rec.spec.pieces[rule.piece];
      if (p.role != PieceRole::kFlatQuarter)
        throw std::invalid_argument("branch: piece is not a flat quarter");
      auto chords = piece_chords(model, rec, rule.piece);
      if (chords.size() != 1)
        throw std::invalid_argument("branch: flat quarter without a unique "
                                    "diagonal");
      auto [a, b] = chords[0];
      int center = -1;
      for (int v : p.cycle)
        if (v != a && v != b) center = v;
      const int diag = model.e_var.at({std::min(a, b), std::max(a, b)});
      const int yc = model.y_var[center];
      children.push_back(with_rows(model, tag + ":compression",
                                   {{yc, Relation::kLe, ct.flat_y1_split},
                                    {diag, Relation::kLe, ct.flat_diag_split}}));
      children.push_back(with_rows(model, tag + ":short",
                                   {{diag, Relation::kLe, ct.flat_diag_split}}));
      children.push_back(with_rows(model, tag + ":long",
                                   {{diag, Relation::kGe, ct.flat_diag_split}}));
      break;
    }
    case BranchRule::Kind::kTypeA: {
      const RefinementRecord& rec = checked_refinement(model, rule);
      auto chords = piece_chords(model, rec, rule.piece);
      if (chords.size() < 2)
        throw std::invalid_argument("branch: type-a needs two chord edges");
      const int e1 = model.e_var.at({std::min(chords[0].first, chords[0].second),
                                     std::max(chords[0].first, chords[0].second)});
      const int e2 = model.e_var.at({std::min(chords[1].first, chords[1].second),
                                     std::max(chords[1].first, chords[1].second)});
      children.push_back(with_rows(model, tag + ":both-short",
                                   {{e1, Relation::kLe, ct.type_a_edge_split},
                                    {e2, Relation::kLe, ct.type_a_edge_split}}));
      children.push_back(with_rows(
          model, tag + ":first-long", {{e1, Relation::kGe, ct.type_a_edge_split}}));
      children.push_back(with_rows(
          model, tag + ":second-long", {{e2, Relation::kGe, ct.type_a_edge_split}}));
      break;
    }
    case BranchRule::Kind::kQuadDiagonal: {
      const RefinementRecord& rec = checked_refinement(model, rule);
      const RefinementPiece& p = rec.spec.pieces[rule.piece];
      if (p.cycle.size() != 4)
        throw std::invalid_argument("branch: quad-diagonal needs a "
                                    "four-sided piece");
      RelaxationModel base = model;
      const int diag = ensure_edge(base, p.cycle[0], p.cycle[2],
                                   base.edge_lower, kLPInfinity);
      children.push_back(with_rows(base, tag + ":short",
                                   {{diag, Relation::kLe, ct.quad_diag_cap}}));
      children.push_back(with_rows(base, tag + ":long",
                                   {{diag, Relation::kGe, ct.quad_diag_cap}}));
      break;
    }
  }
  return children;
}

// ---- bound driver --------------------------------------------------------------

namespace {

struct Site {
  std::string key;
  BranchRule rule;
};

// Applicable sites of one rule kind, in deterministic order.
std::vector<Site> sites_of(const RelaxationModel& m, BranchRule::Kind kind) {
  std::vector<Site> out;
  auto face_sites = [&](std::size_t len, const char* prefix) {
    for (std::size_t f = 0; f < m.schema.faces.size(); ++f)
      if (m.schema.faces[f].size() == len) {
        BranchRule r;
        r.kind = kind;
        r.face = static_cast<int>(f);
        out.push_back({prefix + std::to_string(f), r});
      }
  };
  switch (kind) {
    case BranchRule::Kind::kTriangleYsum:
      face_sites(3, "tri:");
      break;
    case BranchRule::Kind::kQuadStructure:
      face_sites(4, "quad:");
      break;
    case BranchRule::Kind::kUprightHeight:
      for (const RefinementRecord& rec : m.refinements)
        for (int u : rec.spec.upright) {
          BranchRule r;
          r.kind = kind;
          r.vertex = u;
          out.push_back({"uh:" + std::to_string(u), r});
        }
      break;
    case BranchRule::Kind::kUprightAnchor:
      for (const RefinementRecord& rec : m.refinements)
        for (int u : rec.spec.upright)
          for (int w : m.schema.faces[rec.spec.face]) {
            BranchRule r;
            r.kind = kind;
            r.vertex = u;
            r.partner = w;
            out.push_back(
                {"ua:" + std::to_string(u) + ":" + std::to_string(w), r});
          }
      break;
    case BranchRule::Kind::kFlatQuarter:
      for (std::size_t i = 0; i < m.refinements.size(); ++i) {
        const RefinementRecord& rec = m.refinements[i];
        for (std::size_t p = 0; p < rec.spec.pieces.size(); ++p)
          if (rec.spec.pieces[p].role == PieceRole::kFlatQuarter &&
              piece_chords(m, rec, static_cast<int>(p)).size() == 1) {
            BranchRule r;
            r.kind = kind;
            r.refinement = static_cast<int>(i);
            r.piece = static_cast<int>(p);
            out.push_back(
                {"fq:" + std::to_string(i) + ":" + std::to_string(p), r});
          }
      }
      break;
    case BranchRule::Kind::kTypeA:
      for (std::size_t i = 0; i < m.refinements.size(); ++i) {
        const RefinementRecord& rec = m.refinements[i];
        for (std::size_t p = 0; p < rec.spec.pieces.size(); ++p)
          if (rec.spec.pieces[p].role == PieceRole::kSubregion &&
              piece_chords(m, rec, static_cast<int>(p)).size() >= 2) {
            BranchRule r;
            r.kind = kind;
            r.refinement = static_cast<int>(i);
            r.piece = static_cast<int>(p);
            out.push_back(
                {"ta:" + std::to_string(i) + ":" + std::to_string(p), r});
          }
      }
      break;
    case BranchRule::Kind::kQuadDiagonal:
      for (std::size_t i = 0; i < m.refinements.size(); ++i) {
        const RefinementRecord& rec = m.refinements[i];
        for (std::size_t p = 0; p < rec.spec.pieces.size(); ++p)
          if (rec.spec.pieces[p].role == PieceRole::kSubregion &&
              rec.spec.pieces[p].cycle.size() == 4) {
            BranchRule r;
            r.kind = kind;
            r.refinement = static_cast<int>(i);
            r.piece = static_cast<int>(p);
            out.push_back(
                {"qd:" + std::to_string(i) + ":" + std::to_string(p), r});
          }
      }
      break;
  }
  return out;
}

std::string fmt_bound(const BranchNode& n) {
  if (n.status == SolveStatus::kInfeasible) return "infeasible";
  if (n.status == SolveStatus::kUnbounded) return "unbounded";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", n.bound);
  return buf;
}

}  // namespace

BoundReport bound_graph(const PlaneGraph& g, const IneqDB& db,
                        const BranchStrategy& strategy,
                        const BuildOptions& build) {
  const ConstantTable& ct = constants();
  BoundReport rep;
  rep.target = strategy.target > 0.0 ? strategy.target : ct.eight_pt;
  SolveOptions opts = strategy.solve;
  opts.rational_recheck = true;  // elimination needs the exact confirmation

  struct Work {
    RelaxationModel model;
    std::set<std::string> used;  // branch sites consumed on this path
    int node = -1;
  };

  std::vector<Work> frontier;
  frontier.push_back({build_relaxation(g, db, build), {}, 0});
  rep.tree.push_back({0, -1, 0, "root"});

  while (!frontier.empty()) {
    std::vector<SolveResult> res(frontier.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < static_cast<int>(frontier.size()); ++i)
      res[i] = solve(frontier[i].model.lp, opts);

    std::vector<Work> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      Work& work = frontier[i];
      BranchNode& node = rep.tree[work.node];
      const SolveResult& s = res[i];
      node.status = s.status;
      if (s.status == SolveStatus::kInfeasible) {
        node.bound = -kLPInfinity;
        node.eliminated = true;
        continue;
      }
      if (s.status == SolveStatus::kUnbounded) {
        node.bound = kLPInfinity;
      } else {
        node.bound = s.value;
        node.exact_agrees = s.rational_checked && s.rational_agrees;
        node.eliminated =
            node.exact_agrees && s.value < rep.target - kEliminationEps;
      }
      if (node.eliminated || node.depth >= strategy.depth_cap) continue;

      // First rule kind in strategy order with an unused site on this path.
      const Site* chosen = nullptr;
      std::vector<Site> sites;
      for (BranchRule::Kind kind : strategy.order) {
        sites = sites_of(work.model, kind);
        for (const Site& site : sites)
          if (!work.used.count(site.key)) {
            chosen = &site;
            break;
          }
        if (chosen) break;
      }
      if (!chosen) continue;  // open leaf: nothing left to split

      std::vector<RelaxationModel> kids = branch(work.model, chosen->rule);
      if (static_cast<int>(rep.tree.size() + kids.size()) >
          strategy.node_budget) {
        rep.budget_exhausted = true;
        continue;  // stays an open leaf, reported below
      }
      node.leaf = false;
      const int parent_id = node.id;
      const int child_depth = node.depth + 1;  // pushes below invalidate `node`
      for (std::size_t k = 0; k < kids.size(); ++k) {
        const int id = static_cast<int>(rep.tree.size());
        rep.tree.push_back({id, parent_id, child_depth,
                            to_string(chosen->rule.kind) + "(" + chosen->key +
                                ")[" + std::to_string(k) + "]"});
        Work w;
        w.model = std::move(kids[k]);
        w.used = work.used;
        w.used.insert(chosen->key);
        w.node = id;
        next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }

  rep.nodes = static_cast<int>(rep.tree.size());
  rep.eliminated = true;
  rep.bound = -kLPInfinity;
  int leaves = 0;
  for (const BranchNode& n : rep.tree) {
    if (!n.leaf) continue;
    ++leaves;
    rep.eliminated = rep.eliminated && n.eliminated;
    if (n.status != SolveStatus::kInfeasible)
      rep.bound = std::max(rep.bound, n.bound);
  }

  std::string log;
  for (const BranchNode& n : rep.tree) {
    log += "node " + std::to_string(n.id) + " parent " +
           std::to_string(n.parent) + " depth " + std::to_string(n.depth) +
           " via " + n.via + " bound " + fmt_bound(n) + " " +
           (n.eliminated ? "eliminated" : n.leaf ? "open" : "split") + "\n";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "nodes %d leaves %d bound %.12g target %.12g verdict %s%s\n",
                rep.nodes, leaves, rep.bound, rep.target,
                rep.eliminated ? "eliminated" : "not-eliminated",
                rep.budget_exhausted ? " budget-exhausted" : "");
  log += buf;
  rep.log = std::move(log);
  return rep;
}

}  // namespace tame
