#pragma once
// Small dense linear programs and a deterministic two-phase simplex solver.
//
// Models carry named variables with box bounds (possibly infinite), sparse
// rows tagged with a provenance string, and a linear objective.  The solver
// uses Dantzig pricing with lowest-index tie-breaking and falls back to
// Bland's rule after a stall, so a given model always pivots identically.
// An optional exact re-check reconstructs the final basis over arbitrary-
// precision rationals and confirms feasibility, optimality, and the value.

#include <string>
#include <utility>
#include <vector>

namespace tame {

// Bounds at or beyond this magnitude are treated as infinite.
inline constexpr double kLPInfinity = 1e30;

enum class Relation { kLe, kGe, kEq };

struct LPVariable {
  std::string name;
  double lower = 0.0;
  double upper = kLPInfinity;
};

struct LPRow {
  std::string tag;  // provenance: "identity:…", "db:<id>", "branch:<rule>", …
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  Relation rel = Relation::kLe;
  double rhs = 0.0;
};

struct LPModel {
  bool maximize = true;
  std::vector<LPVariable> vars;
  std::vector<double> objective;  // dense, one entry per variable
  std::vector<LPRow> rows;

  // Returns the new variable's index.  Names must be unique and token-like
  // (no whitespace); both are enforced by check().
  int add_variable(std::string name, double lower, double upper);
  // Index of a named variable, or -1.
  int variable(const std::string& name) const;
  void set_objective(int var, double coeff);
  // Returns the new row's index.
  int add_row(std::string tag, std::vector<std::pair<int, double>> coeffs,
              Relation rel, double rhs);
  // Throws std::invalid_argument on malformed models (bad indices, crossed
  // bounds, duplicate or non-token names).
  void check() const;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };

struct SolveOptions {
  double tol = 1e-9;
  int max_iterations = 200000;
  // Reconstruct the final basis over exact rationals and verify it.
  bool rational_recheck = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Objective value and a maximizing point; meaningful only when optimal.
  double value = 0.0;
  std::vector<double> x;
  int iterations = 0;
  // Filled when the rational re-check ran (requested and status optimal).
  // `rational_agrees` is the no-numerical-instability flag: the basis is
  // exactly feasible and optimal and the exact value matches `value`.
  bool rational_checked = false;
  bool rational_agrees = false;
  double rational_value = 0.0;
  std::string note;  // diagnosis when the re-check disagrees
};

SolveResult solve(const LPModel& model, const SolveOptions& opts = {});

// --- LP text codec (lpformat.cpp) -------------------------------------------
//
// Human-readable LP text: Maximize/Minimize, Subject To, Bounds, End.  Row
// provenance tags are kept in comment lines (`\ tag: …`) directly above each
// row, so write/parse round-trips the whole model.  Output ordering follows
// model order and is byte-stable.

std::string write_lp_text(const LPModel& model);
LPModel parse_lp_text(const std::string& text);

}  // namespace tame
