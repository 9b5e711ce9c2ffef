#pragma once
// Linear relaxations of the score maximum over a plane graph.
//
// The relaxation assigns LP variables to the geometric quantities of a
// hypothetical packing realizing the graph: edge lengths, angles, solid
// angles, and per-face score and squander.  Rows come in three kinds:
// identities (true by definition of the variables), admissibility rows
// (translated from the weight model), and database rows (transcribed
// inequality templates).  Every row holds for any realization, so the LP
// maximum bounds the score of all of them, and a bound strictly below the
// contravention target 8 pt eliminates the graph.
//
// On top of the base relaxation sit face refinements (subdividing one face
// into scored pieces, with an erasure penalty) and branch rules (case splits
// whose children cover the parent's domain).  `bound_graph` drives branching
// until every leaf is eliminated or a budget runs out.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tame/planegraph.hpp"
#include "tame/simplex.hpp"

namespace tame {

// A leaf counts as eliminated only when its LP bound is strictly below
// target - kEliminationEps (and the exact re-check agrees).
inline constexpr double kEliminationEps = 1e-9;

// ---- schema -----------------------------------------------------------------

// Index sets of a graph's relaxation.  Faces keep graph order; angles pair
// (vertex, face index) in cycle order; directed edges run along face
// boundaries; undirected edges are the directed pairs folded to v < w.
struct RelaxationSchema {
  int nv = 0;
  std::vector<Face> faces;
  std::vector<std::pair<int, int>> angles;      // (vertex, face index)
  std::vector<std::pair<int, int>> directed;    // (v, successor of v)
  std::vector<std::pair<int, int>> undirected;  // v < w
  std::vector<int> triangles;                   // indices of length-3 faces
};

RelaxationSchema make_schema(const PlaneGraph& g);

// Variable names, shared by the builder, the tests, and the CLI.
std::string y_name(int v);
std::string e_name(int v, int w);  // unordered; canonicalized to v < w
std::string alpha_name(int v, int f);
std::string sigma_name(int f);
std::string tau_name(int f);
std::string sol_name(int f);
// Refinement piece families: refinement ordinal r, piece index p.
std::string piece_sc_name(int r, int p);
std::string piece_tausc_name(int r, int p);
std::string piece_sol_name(int r, int p);
std::string piece_alpha_name(int r, int p, int v);
std::string penalty_name(int r);
// Truncated-score bookkeeping variables (see Refinement).
std::string piece_phisol_name(int r, int p);
std::string piece_adih_name(int r, int p, int corner);
std::string piece_quo_name(int r, int p, int slot);

// ---- inequality database ------------------------------------------------------
//
// Template rows in s-expression form, one row per top-level form:
//
//   (row <id>
//     (ctx <selector> ...)
//     (lhs (coef <role> <decimal>) ...)
//     (rel <= | >= | =)
//     (rhs <decimal>)
//     (cite "<anchor>"))
//
// Context selectors:
//   face <n>           faces of length exactly n
//   face-ge <n>        faces of length at least n
//   role <tag>         refinement pieces by role: flat-quarter,
//                      upright-quarter, anchored-simplex, subregion
//   subregion <n> <k>  refinement pieces declared as (n, k) subregions
//   penalty <len> <f>  the erasure penalty of a refinement of a face of
//                      length len containing f flat quarters
//
// Roles name variables relative to the context object.  Face contexts accept
// sigma, tau, sol, alpha:<i>, y:<i>, e:<i> (corner i to corner i+1) and the
// shorthand `alpha` for alpha:0; piece contexts accept sc, tausc, sol,
// phisol and the same indexed roles; penalty contexts accept only `penalty`.
// A face has no distinguished first corner, so a row with indexed roles is
// instantiated once per rotation of the cycle.

struct DBCoef {
  std::string role;
  double value = 0.0;
};

struct DBRow {
  std::string id;
  std::vector<std::string> ctx;  // selector tokens, e.g. {"face", "5"}
  std::vector<DBCoef> lhs;
  Relation rel = Relation::kLe;
  double rhs = 0.0;
  std::string cite;
};

struct IneqDB {
  std::vector<DBRow> rows;
};

// Parse and validate a database.  `source` names the input in errors.
IneqDB parse_ineq_db(const std::string& text, const std::string& source = "db");
IneqDB read_ineq_db_file(const std::string& path);
// Inverse of the parser on parsed databases (stable output).
std::string write_ineq_db(const IneqDB& db);

// ---- refinements ---------------------------------------------------------------

enum class PieceRole { kFlatQuarter, kUprightQuarter, kAnchoredSimplex, kSubregion };

std::string to_string(PieceRole role);

// One piece of a refined face.  Corners are graph vertex ids or new ids
// (contiguous, starting at the model's current vertex count).
struct RefinementPiece {
  Face cycle;
  PieceRole role = PieceRole::kSubregion;
  int params_n = 0, params_k = 0;  // (n, k) declaration for subregion rows
};

// How the erasure penalty of a refinement is bounded: kZero fixes it to
// zero (refinement drawn with nothing erased), kFromDb leaves it to
// penalty-context database rows keyed by (face length, flat-quarter count).
enum class PenaltyPolicy { kZero, kFromDb };

struct Refinement {
  int face = -1;  // schema index of the face being refined
  std::vector<RefinementPiece> pieces;
  std::vector<int> upright;  // new vertex ids that are upright-diagonal tops
  PenaltyPolicy penalty = PenaltyPolicy::kZero;
  // Adds, per piece, the truncated-score expansion: sc = phisol + sum of
  // per-corner angle terms - 4 delta_oct * sum of wedge volumes, with the
  // expansion's terms as fresh variables (volumes non-negative, the rest
  // constrained only by database rows).
  bool truncated_score_vars = false;
};

// ---- model ---------------------------------------------------------------------

struct BuildOptions {
  // Lower bound installed on y and e variables.  The stated bound block uses
  // 0; the packing distance bound sharpens it to 2.  Both are sound; the
  // choice is recorded in the model note.
  double edge_lower = 2.0;
};

// Variable indices of one refinement piece.
struct PieceVars {
  int sc = -1, tausc = -1, sol = -1;
  std::vector<int> alpha;  // aligned with the piece cycle
};

struct RefinementRecord {
  Refinement spec;
  int penalty_var = -1;
  std::vector<PieceVars> pieces;
};

struct RelaxationModel {
  LPModel lp;
  RelaxationSchema schema;
  // Variable indices by family.  y_var grows when refinements introduce new
  // vertices; e_var gains chords and spokes.
  std::vector<int> sigma_var, tau_var, sol_var;  // per face
  std::vector<int> y_var;                        // per vertex id
  std::map<std::pair<int, int>, int> e_var;      // key v < w
  std::map<std::pair<int, int>, int> alpha_var;  // key (vertex, face)
  std::vector<RefinementRecord> refinements;
  double edge_lower = 2.0;  // the bound policy the model was built with
  std::string note;         // bound policy and any row-set caveats
};

// Builds the base relaxation: the bound block, the per-face squander
// identity tau = sol*zeta*pt - sigma, the per-vertex angle sum 2*pi, the
// per-face solid-angle expansion, squander-admissibility rows translated
// from the weight model (scaled by pt), and every applicable face-context
// database row.  The objective maximizes total score.
RelaxationModel build_relaxation(const PlaneGraph& g, const IneqDB& db,
                                 const BuildOptions& opts = {});

// Subdivides one face into scored pieces.  Checks that the pieces' graph
// vertices are exactly the face's corners, that new ids are contiguous, and
// that the pieces plus the reversed face cycle form a valid plane graph.
// Adds piece score/squander/solid-angle variables and identities, angle
// compatibility rows (piece angles at a face corner sum to the coarse
// angle; angles around an interior corner sum to 2*pi), heights for new
// corners (upright tops in [2*t0, sqrt8]), role facts (a non-quarter
// anchored simplex scores at most 0), the penalty-corrected score split
// sigma[F] <= sum sc + penalty, and matching role/subregion/penalty
// database rows.  Throws std::invalid_argument on malformed refinements.
RelaxationModel refine_face(const RelaxationModel& model, const Refinement& r,
                            const IneqDB& db);

// ---- derived inequalities ------------------------------------------------------

struct DerivedInequality {
  bool proven = false;
  bool bounded = true;   // false when the form's LP maximum is unbounded
  double maximum = 0.0;  // LP maximum of the form (when bounded)
  double margin = 0.0;   // rhs - maximum (when bounded)
  SolveResult lp;
};

// Maximizes a linear form (variable name, coefficient) over the model's
// feasible set; proven means every feasible point satisfies form <= rhs.
// An infeasible model proves everything vacuously.  Unknown variable names
// throw std::invalid_argument.
DerivedInequality derive_inequality(
    const RelaxationModel& model,
    const std::vector<std::pair<std::string, double>>& form, double rhs,
    const SolveOptions& opts = {});

// ---- branching -----------------------------------------------------------------

struct BranchRule {
  enum class Kind {
    kTriangleYsum,   // face: corner height sum <= / >= 6.25
    kQuadStructure,  // face: flat pair along either diagonal / central
                     // upright top / both diagonals long
    kUprightHeight,  // vertex: upright top height <= / >= 2.696
    kUprightAnchor,  // vertex+partner: anchor height or reach >= 2.45 / both <=
    kFlatQuarter,    // refinement+piece: low corner and short diagonal /
                     // short diagonal / long diagonal
    kTypeA,          // refinement+piece: both chords <= 2.77 / either >= 2.77
    kQuadDiagonal,   // refinement+piece: subregion diagonal <= / >= 3.0
  };
  Kind kind = Kind::kTriangleYsum;
  int face = -1;        // kTriangleYsum, kQuadStructure
  int refinement = -1;  // piece rules
  int piece = -1;
  int vertex = -1;   // upright top id (upright rules), center corner (flat)
  int partner = -1;  // anchor vertex id (kUprightAnchor)
};

std::string to_string(BranchRule::Kind kind);

// Applies one case split.  The children's interpretation domains cover the
// parent's (overlapping on boundaries), and each child only adds variables
// and rows, so child optima never exceed the parent's.  Throws
// std::invalid_argument when the rule does not fit the model.
std::vector<RelaxationModel> branch(const RelaxationModel& model,
                                    const BranchRule& rule);

// ---- bound driver --------------------------------------------------------------

struct BranchStrategy {
  // Rule kinds in preference order; at each open node the first kind with an
  // unused site on that path is applied.  Empty means root only.
  std::vector<BranchRule::Kind> order = {BranchRule::Kind::kTriangleYsum,
                                         BranchRule::Kind::kQuadStructure};
  int depth_cap = 12;
  int node_budget = 2048;
  double target = 0.0;  // elimination target; 0 means 8 pt from the table
  SolveOptions solve;   // leaf decisions always enable the exact re-check
};

struct BranchNode {
  int id = -1, parent = -1, depth = 0;
  std::string via;  // "root" or the branch tag of the edge into this node
  SolveStatus status = SolveStatus::kInfeasible;
  double bound = 0.0;
  bool exact_agrees = false;  // exact re-check confirmed the bound
  bool eliminated = false;
  bool leaf = true;
};

struct BoundReport {
  double target = 0.0;
  double bound = 0.0;       // max over leaf bounds
  bool eliminated = false;  // every leaf eliminated
  bool budget_exhausted = false;
  int nodes = 0;
  std::vector<BranchNode> tree;
  std::string log;  // one line per node plus a summary line, byte-stable
};

// Builds the root relaxation and branches per the strategy until every leaf
// is eliminated, the depth cap leaves an open leaf, or the node budget is
// exhausted (always reported, never silent).  A node is eliminated when its
// LP is infeasible or its bound is below target - kEliminationEps with the
// exact re-check agreeing; open nodes with no unused site become open
// leaves.  Child solves within a level run in parallel.
BoundReport bound_graph(const PlaneGraph& g, const IneqDB& db,
                        const BranchStrategy& strategy = {},
                        const BuildOptions& build = {});

}  // namespace tame
