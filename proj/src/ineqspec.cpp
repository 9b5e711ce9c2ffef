#include "tame/ineqspec.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "tame/geometry.hpp"
#include "tame/sexpr.hpp"

namespace tame {

namespace {

double down(double v) {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
double up(double v) {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

// Decimal literals denote real numbers the nearest double only
// approximates; widen by one ulp each way so either direction is covered.
Interval literal(double v) { return Interval(down(v), up(v)); }

bool symbol_value(const std::string& s, Interval* out) {
  if (s == "pi") {
    *out = pi_interval();
  } else if (s == "two_pi") {
    *out = Interval(2.0) * pi_interval();
  } else if (s == "t0") {
    *out = literal(1.255);
  } else if (s == "two_t0") {
    *out = literal(2.51);
  } else if (s == "sqrt2") {
    *out = sqrt(Interval(2.0));
  } else if (s == "sqrt8") {
    *out = sqrt(Interval(8.0));
  } else {
    return false;
  }
  return true;
}

IneqExpr number_expr(const Interval& v) {
  IneqExpr e;
  e.kind = IneqExpr::kNumber;
  e.number = v;
  return e;
}

IneqExpr parse_expr(const Sexpr& s) {
  if (s.is_atom) {
    const std::string& a = s.atom;
    if (a.size() == 2 && a[0] == 'y' && a[1] >= '1' && a[1] <= '6') {
      IneqExpr e;
      e.kind = IneqExpr::kVariable;
      e.variable = a[1] - '1';
      return e;
    }
    Interval sym;
    if (symbol_value(a, &sym)) return number_expr(sym);
    return number_expr(literal(s.as_number()));
  }

  const std::string op = s.head();
  const size_t n = s.size() - 1;
  auto arity = [&](size_t want) {
    if (n != want)
      throw SexprError("operator " + op + " expects " +
                           std::to_string(want) + " arguments, got " +
                           std::to_string(n),
                       s.line, s.col);
  };
  auto child = [&](size_t i) { return parse_expr(s.at(i + 1)); };

  IneqExpr e;
  if (op == "+" || op == "*") {
    if (n < 2)
      throw SexprError("operator " + op + " expects at least 2 arguments",
                       s.line, s.col);
    e.kind = op == "+" ? IneqExpr::kAdd : IneqExpr::kMul;
    for (size_t i = 0; i < n; ++i) e.args.push_back(child(i));
  } else if (op == "-") {
    if (n == 1) {
      e.kind = IneqExpr::kNeg;
      e.args.push_back(child(0));
    } else if (n == 2) {
      e.kind = IneqExpr::kSub;
      e.args.push_back(child(0));
      e.args.push_back(child(1));
    } else {
      throw SexprError("operator - expects 1 or 2 arguments", s.line, s.col);
    }
  } else if (op == "/") {
    arity(2);
    e.kind = IneqExpr::kDiv;
    e.args.push_back(child(0));
    e.args.push_back(child(1));
  } else if (op == "sqrt" || op == "atan" || op == "acos") {
    arity(1);
    e.kind = op == "sqrt" ? IneqExpr::kSqrt
             : op == "atan" ? IneqExpr::kAtan
                            : IneqExpr::kAcos;
    e.args.push_back(child(0));
  } else if (op == "delta" || op == "delta4" || op == "dih" || op == "dih2" ||
             op == "dih3" || op == "sol") {
    arity(0);
    e.kind = op == "delta" ? IneqExpr::kDelta
             : op == "delta4" ? IneqExpr::kDelta4
             : op == "dih" ? IneqExpr::kDih
             : op == "dih2" ? IneqExpr::kDih2
             : op == "dih3" ? IneqExpr::kDih3
                            : IneqExpr::kSol;
  } else if (op == "eta" || op == "arc") {
    arity(3);
    e.kind = op == "eta" ? IneqExpr::kEta : IneqExpr::kArc;
    for (size_t i = 0; i < 3; ++i) e.args.push_back(child(i));
  } else {
    throw SexprError("unknown operator: " + op, s.line, s.col);
  }
  return e;
}

IneqRel parse_rel(const Sexpr& s) {
  const std::string& a = s.as_atom();
  if (a == "<") return IneqRel::kLt;
  if (a == "<=") return IneqRel::kLe;
  if (a == ">") return IneqRel::kGt;
  if (a == ">=") return IneqRel::kGe;
  throw SexprError("expected relation < <= > >=, got " + a, s.line, s.col);
}

IneqTest parse_test(const Sexpr& s) {
  if (s.is_atom || s.size() != 3)
    throw SexprError("expected (<rel> <expr> <expr>)", s.line, s.col);
  IneqTest t;
  t.rel = parse_rel(s.at(0));
  t.lhs = parse_expr(s.at(1));
  t.rhs = parse_expr(s.at(2));
  return t;
}

// Domain endpoints may be literals or symbolic constants; the interval value
// is taken at its outer end so the box never undercovers the real range.
double domain_end(const Sexpr& s, bool upper) {
  if (s.is_atom) {
    Interval sym;
    if (symbol_value(s.atom, &sym)) return upper ? sym.hi : sym.lo;
    const Interval lit = literal(s.as_number());
    return upper ? lit.hi : lit.lo;
  }
  throw SexprError("domain endpoint must be a number or symbol", s.line,
                   s.col);
}

IneqSpec parse_spec(const Sexpr& form) {
  if (form.is_atom || form.head() != "ineq")
    throw SexprError("expected (ineq ...)", form.line, form.col);
  if (form.size() < 3)
    throw SexprError("ineq needs an id and a claim", form.line, form.col);

  IneqSpec spec;
  spec.id = form.at(1).as_atom();
  for (int i = 0; i < 6; ++i) spec.domain.y[i] = Interval(2.0, literal(2.51).hi);

  bool have_claim = false;
  for (size_t i = 2; i < form.size(); ++i) {
    const Sexpr& part = form.at(i);
    const std::string h = part.head();
    if (h == "domain") {
      for (size_t j = 1; j < part.size(); ++j) {
        const Sexpr& d = part.at(j);
        if (d.is_atom || d.size() != 3)
          throw SexprError("expected (y<k> <lo> <hi>)", d.line, d.col);
        const std::string& v = d.at(0).as_atom();
        if (v.size() != 2 || v[0] != 'y' || v[1] < '1' || v[1] > '6')
          throw SexprError("expected variable y1..y6, got " + v, d.line,
                           d.col);
        const double lo = domain_end(d.at(1), false);
        const double hi = domain_end(d.at(2), true);
        spec.domain.y[v[1] - '1'] = Interval(lo, hi);
      }
    } else if (h == "constraint") {
      if (part.size() != 2)
        throw SexprError("expected (constraint (<rel> ...))", part.line,
                         part.col);
      spec.constraints.push_back(parse_test(part.at(1)));
    } else if (h == "claim") {
      if (part.size() != 2)
        throw SexprError("expected (claim (<rel> ...))", part.line, part.col);
      spec.claim = parse_test(part.at(1));
      have_claim = true;
    } else {
      throw SexprError("unknown ineq section: " + h, part.line, part.col);
    }
  }
  if (!have_claim)
    throw SexprError("ineq " + spec.id + " has no claim", form.line,
                     form.col);
  return spec;
}

}  // namespace

std::vector<IneqSpec> parse_ineq_specs(const std::string& text,
                                       const std::string& name) {
  std::vector<IneqSpec> out;
  for (const Sexpr& form : parse_sexprs(text, name))
    out.push_back(parse_spec(form));
  return out;
}

double eval_point(const IneqExpr& e, const std::array<double, 6>& y) {
  switch (e.kind) {
    case IneqExpr::kNumber:
      return mid(e.number);
    case IneqExpr::kVariable:
      return y[e.variable];
    case IneqExpr::kAdd: {
      double s = 0;
      for (const auto& a : e.args) s += eval_point(a, y);
      return s;
    }
    case IneqExpr::kSub:
      return eval_point(e.args[0], y) - eval_point(e.args[1], y);
    case IneqExpr::kNeg:
      return -eval_point(e.args[0], y);
    case IneqExpr::kMul: {
      double p = 1;
      for (const auto& a : e.args) p *= eval_point(a, y);
      return p;
    }
    case IneqExpr::kDiv: {
      const double d = eval_point(e.args[1], y);
      if (d == 0) throw std::domain_error("eval_point: division by zero");
      return eval_point(e.args[0], y) / d;
    }
    case IneqExpr::kSqrt: {
      const double v = eval_point(e.args[0], y);
      if (v < 0) throw std::domain_error("eval_point: sqrt of negative");
      return std::sqrt(v);
    }
    case IneqExpr::kAtan:
      return std::atan(eval_point(e.args[0], y));
    case IneqExpr::kAcos: {
      const double v = eval_point(e.args[0], y);
      if (v < -1 || v > 1)
        throw std::domain_error("eval_point: acos outside [-1, 1]");
      return std::acos(v);
    }
    case IneqExpr::kDelta:
      return delta6(y[0] * y[0], y[1] * y[1], y[2] * y[2], y[3] * y[3],
                    y[4] * y[4], y[5] * y[5]);
    case IneqExpr::kDelta4:
      return delta6_x4(y[0] * y[0], y[1] * y[1], y[2] * y[2], y[3] * y[3],
                       y[4] * y[4], y[5] * y[5]);
    case IneqExpr::kDih:
      return dih(Simplex{{y[0], y[1], y[2], y[3], y[4], y[5]}});
    case IneqExpr::kDih2:
      return dih2(Simplex{{y[0], y[1], y[2], y[3], y[4], y[5]}});
    case IneqExpr::kDih3:
      return dih3(Simplex{{y[0], y[1], y[2], y[3], y[4], y[5]}});
    case IneqExpr::kSol:
      return sol(Simplex{{y[0], y[1], y[2], y[3], y[4], y[5]}});
    case IneqExpr::kEta:
      return eta(eval_point(e.args[0], y), eval_point(e.args[1], y),
                 eval_point(e.args[2], y));
    case IneqExpr::kArc:
      return arc(eval_point(e.args[0], y), eval_point(e.args[1], y),
                 eval_point(e.args[2], y));
  }
  throw std::logic_error("eval_point: bad expression kind");
}

Interval eval_interval(const IneqExpr& e, const IntervalBox& box) {
  switch (e.kind) {
    case IneqExpr::kNumber:
      return e.number;
    case IneqExpr::kVariable:
      return box.y[e.variable];
    case IneqExpr::kAdd: {
      Interval s = eval_interval(e.args[0], box);
      for (size_t i = 1; i < e.args.size(); ++i)
        s = s + eval_interval(e.args[i], box);
      return s;
    }
    case IneqExpr::kSub:
      return eval_interval(e.args[0], box) - eval_interval(e.args[1], box);
    case IneqExpr::kNeg:
      return -eval_interval(e.args[0], box);
    case IneqExpr::kMul: {
      Interval p = eval_interval(e.args[0], box);
      for (size_t i = 1; i < e.args.size(); ++i)
        p = p * eval_interval(e.args[i], box);
      return p;
    }
    case IneqExpr::kDiv:
      return eval_interval(e.args[0], box) / eval_interval(e.args[1], box);
    case IneqExpr::kSqrt:
      return sqrt(eval_interval(e.args[0], box));
    case IneqExpr::kAtan:
      return atan(eval_interval(e.args[0], box));
    case IneqExpr::kAcos:
      return acos(eval_interval(e.args[0], box));
    case IneqExpr::kDelta:
      return delta6(box);
    case IneqExpr::kDelta4:
      return delta6_x4(square(box.y[0]), square(box.y[1]), square(box.y[2]),
                       square(box.y[3]), square(box.y[4]), square(box.y[5]));
    case IneqExpr::kDih:
      return dih(box);
    case IneqExpr::kDih2:
      return dih2(box);
    case IneqExpr::kDih3:
      return dih3(box);
    case IneqExpr::kSol:
      return sol(box);
    case IneqExpr::kEta:
      return eta(eval_interval(e.args[0], box), eval_interval(e.args[1], box),
                 eval_interval(e.args[2], box));
    case IneqExpr::kArc:
      return arc(eval_interval(e.args[0], box), eval_interval(e.args[1], box),
                 eval_interval(e.args[2], box));
  }
  throw std::logic_error("eval_interval: bad expression kind");
}

TestEval eval_test(const IneqTest& t, const IntervalBox& box) {
  return TestEval{eval_interval(t.lhs, box), eval_interval(t.rhs, box)};
}

TestVerdict verdict(const TestEval& e, IneqRel rel) {
  switch (rel) {
    case IneqRel::kLt:
      if (e.lhs.hi < e.rhs.lo) return TestVerdict::kCertainlyTrue;
      if (e.lhs.lo >= e.rhs.hi) return TestVerdict::kCertainlyFalse;
      return TestVerdict::kUndecided;
    case IneqRel::kLe:
      if (e.lhs.hi <= e.rhs.lo) return TestVerdict::kCertainlyTrue;
      if (e.lhs.lo > e.rhs.hi) return TestVerdict::kCertainlyFalse;
      return TestVerdict::kUndecided;
    case IneqRel::kGt:
      if (e.lhs.lo > e.rhs.hi) return TestVerdict::kCertainlyTrue;
      if (e.lhs.hi <= e.rhs.lo) return TestVerdict::kCertainlyFalse;
      return TestVerdict::kUndecided;
    case IneqRel::kGe:
      if (e.lhs.lo >= e.rhs.hi) return TestVerdict::kCertainlyTrue;
      if (e.lhs.hi < e.rhs.lo) return TestVerdict::kCertainlyFalse;
      return TestVerdict::kUndecided;
  }
  throw std::logic_error("verdict: bad relation");
}

double proven_margin(const TestEval& e, IneqRel rel) {
  if (rel == IneqRel::kLt || rel == IneqRel::kLe) return e.rhs.lo - e.lhs.hi;
  return e.lhs.lo - e.rhs.hi;
}

bool holds_at(const IneqTest& t, const std::array<double, 6>& y) {
  const double l = eval_point(t.lhs, y), r = eval_point(t.rhs, y);
  switch (t.rel) {
    case IneqRel::kLt:
      return l < r;
    case IneqRel::kLe:
      return l <= r;
    case IneqRel::kGt:
      return l > r;
    case IneqRel::kGe:
      return l >= r;
  }
  throw std::logic_error("holds_at: bad relation");
}

}  // namespace tame
