#pragma once
// Nonlinear simplex inequalities as expression trees over the six edge
// lengths y1..y6, read from s-expression spec files and evaluated in both
// plain double and interval arithmetic.
//
// File format, one form per inequality:
//
//   (ineq <id>
//     (domain (y1 <lo> <hi>) ...)          ; omitted coordinates default to
//                                          ; [2, two_t0]
//     (constraint (<rel> <expr> <expr>))   ; zero or more side conditions
//     (claim (<rel> <expr> <expr>)))
//
// <rel> is one of < <= > >=.  Expressions are prefix forms over
//   (+ e...)  (- e e)  (- e)  (* e...)  (/ e e)  (sqrt e) (atan e) (acos e)
// the nullary simplex functions (delta) (delta4) (dih) (dih2) (dih3) (sol)
// applied to y1..y6, the ternary (eta a b c) and (arc a b c), the variables
// y1..y6, decimal literals, and the symbolic constants
//   pi  two_pi  t0  two_t0  sqrt2  sqrt8
// Literals and symbols become outward-rounded intervals, so proving
// "(< (dih) 1.63)" establishes the claim for the real constant, not merely
// its nearest double.  Specs whose claim uses the simplex functions should
// carry the side condition (constraint (>= (delta) 0)): it restricts the
// claim to realizable simplices and lets the prover discard empty boxes.

#include <array>
#include <string>
#include <vector>

#include "tame/interval.hpp"

namespace tame {

struct IneqExpr {
  enum Kind {
    kNumber,    // literal or symbolic constant, stored as an interval
    kVariable,  // y1..y6 (index 0..5)
    kAdd,
    kSub,
    kNeg,
    kMul,
    kDiv,
    kSqrt,
    kAtan,
    kAcos,
    kDelta,   // delta6 of y1..y6 squared
    kDelta4,  // delta6_x4 of y1..y6 squared
    kDih,
    kDih2,
    kDih3,
    kSol,
    kEta,  // three explicit arguments
    kArc,
  };
  Kind kind = kNumber;
  Interval number;
  int variable = 0;
  std::vector<IneqExpr> args;
};

enum class IneqRel { kLt, kLe, kGt, kGe };

struct IneqTest {
  IneqExpr lhs;
  IneqRel rel = IneqRel::kLt;
  IneqExpr rhs;
};

struct IneqSpec {
  std::string id;
  IntervalBox domain;
  std::vector<IneqTest> constraints;
  IneqTest claim;
};

// Parses every (ineq ...) form in the text; `name` labels error positions.
std::vector<IneqSpec> parse_ineq_specs(const std::string& text,
                                       const std::string& name = "<input>");

// Double evaluation at a point; throws std::domain_error where the
// expression is undefined (e.g. dih of a non-simplex).
double eval_point(const IneqExpr& e, const std::array<double, 6>& y);

// Interval evaluation over a box; sound enclosure of every point value.
Interval eval_interval(const IneqExpr& e, const IntervalBox& box);

struct TestEval {
  Interval lhs, rhs;
};
TestEval eval_test(const IneqTest& t, const IntervalBox& box);

enum class TestVerdict { kCertainlyTrue, kCertainlyFalse, kUndecided };
TestVerdict verdict(const TestEval& e, IneqRel rel);

// Width of the gap once a test is certainly true on a box.
double proven_margin(const TestEval& e, IneqRel rel);

// Double check of a relation at a point; throws like eval_point.
bool holds_at(const IneqTest& t, const std::array<double, 6>& y);

}  // namespace tame
