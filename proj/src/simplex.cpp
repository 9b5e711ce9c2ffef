#include "tame/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace tame {

namespace {

using Rat = boost::multiprecision::cpp_rational;

bool is_finite_bound(double b) { return std::fabs(b) < kLPInfinity; }

}  // namespace

int LPModel::add_variable(std::string name, double lower, double upper) {
  vars.push_back({std::move(name), lower, upper});
  objective.push_back(0.0);
  return static_cast<int>(vars.size()) - 1;
}

int LPModel::variable(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

void LPModel::set_objective(int var, double coeff) {
  objective.at(var) = coeff;
}

int LPModel::add_row(std::string tag, std::vector<std::pair<int, double>> coeffs,
                     Relation rel, double rhs) {
  rows.push_back({std::move(tag), std::move(coeffs), rel, rhs});
  return static_cast<int>(rows.size()) - 1;
}

void LPModel::check() const {
  if (objective.size() != vars.size())
    throw std::invalid_argument("objective length does not match variables");
  for (size_t i = 0; i < vars.size(); ++i) {
    const LPVariable& v = vars[i];
    if (v.name.empty())
      throw std::invalid_argument("variable " + std::to_string(i) + " unnamed");
    for (char ch : v.name)
      if (std::isspace(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("variable name '" + v.name +
                                    "' contains whitespace");
    if (std::isdigit(static_cast<unsigned char>(v.name[0])))
      throw std::invalid_argument("variable name '" + v.name +
                                  "' starts with a digit");
    if (v.lower > v.upper)
      throw std::invalid_argument("variable '" + v.name + "' has lower > upper");
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[j].name == v.name)
        throw std::invalid_argument("duplicate variable name '" + v.name + "'");
  }
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [j, a] : rows[r].coeffs) {
      if (j < 0 || j >= static_cast<int>(vars.size()))
        throw std::invalid_argument("row " + std::to_string(r) +
                                    " references variable " + std::to_string(j));
      if (!std::isfinite(a))
        throw std::invalid_argument("row " + std::to_string(r) +
                                    " has a non-finite coefficient");
    }
}

namespace {

// --- Standard form -----------------------------------------------------------
//
// Every variable is mapped onto nonnegative columns:
//   finite lower:            x = lower + u
//   only finite upper:       x = upper - u
//   free:                    x = u - w
// Finite uppers over a finite lower become explicit rows u <= upper - lower.
// Row right-hand sides are made nonnegative by negating rows; the negate
// decisions are recorded so the exact rational replay builds the identical
// column/row layout.

struct VarMap {
  int pos = -1;    // column of +u
  int neg = -1;    // column of -w (free variables only)
  int sign = 1;    // +1: x = shift + u,  -1: x = shift - u
  double shift = 0.0;
};

struct StdRowSrc {
  // Either a model row (model_row >= 0) or a bound row u_col <= bound_rhs.
  int model_row = -1;
  int bound_col = -1;
  double bound_rhs = 0.0;
};

struct Layout {
  std::vector<VarMap> varmap;
  int nstruct = 0;
  std::vector<StdRowSrc> sources;
  std::vector<Relation> rel;       // per std row
  std::vector<bool> negate;        // per std row, decided on the double build
  // Column layout: [0, nstruct) structural, then per-row slack/surplus, then
  // per-row artificial where required.
  std::vector<int> slack_col;      // -1 for kEq rows
  std::vector<int> art_col;        // -1 where a slack starts basic
  int ncols = 0;
};

template <typename T>
struct StdLP {
  std::vector<std::vector<std::pair<int, T>>> rows;  // structural coeffs only
  std::vector<T> rhs;
  std::vector<T> c;  // phase-2 objective over structural columns, max sense
  T obj_const = 0;
};

Layout make_layout(const LPModel& m) {
  Layout L;
  L.varmap.resize(m.vars.size());
  for (size_t j = 0; j < m.vars.size(); ++j) {
    const LPVariable& v = m.vars[j];
    VarMap& map = L.varmap[j];
    if (is_finite_bound(v.lower)) {
      map.pos = L.nstruct++;
      map.sign = 1;
      map.shift = v.lower;
    } else if (is_finite_bound(v.upper)) {
      map.pos = L.nstruct++;
      map.sign = -1;
      map.shift = v.upper;
    } else {
      map.pos = L.nstruct++;
      map.neg = L.nstruct++;
      map.sign = 1;
      map.shift = 0.0;
    }
  }
  for (size_t r = 0; r < m.rows.size(); ++r) {
    L.sources.push_back({static_cast<int>(r), -1, 0.0});
    L.rel.push_back(m.rows[r].rel);
  }
  for (size_t j = 0; j < m.vars.size(); ++j) {
    const LPVariable& v = m.vars[j];
    if (is_finite_bound(v.lower) && is_finite_bound(v.upper) &&
        v.upper > v.lower) {
      L.sources.push_back(
          {-1, L.varmap[j].pos, v.upper - v.lower});
      L.rel.push_back(Relation::kLe);
    } else if (is_finite_bound(v.lower) && is_finite_bound(v.upper)) {
      // Fixed variable (lower == upper): u = 0 enforced by an equality.
      L.sources.push_back({-1, L.varmap[j].pos, 0.0});
      L.rel.push_back(Relation::kEq);
    }
  }
  L.negate.assign(L.sources.size(), false);
  return L;
}

// Build the standard-form data.  On the double pass `decide` fills in the
// negate flags; the rational pass replays them.
template <typename T>
StdLP<T> build_std(const LPModel& m, Layout& L, bool decide) {
  StdLP<T> s;
  size_t nrows = L.sources.size();
  s.rows.resize(nrows);
  s.rhs.resize(nrows);
  s.c.assign(L.nstruct, T(0));
  T sense = m.maximize ? T(1) : T(-1);
  for (size_t j = 0; j < m.vars.size(); ++j) {
    const VarMap& map = L.varmap[j];
    T cj = sense * T(m.objective[j]);
    s.obj_const += cj * T(map.shift);
    s.c[map.pos] += cj * T(map.sign);
    if (map.neg >= 0) s.c[map.neg] -= cj;
  }
  for (size_t r = 0; r < nrows; ++r) {
    const StdRowSrc& src = L.sources[r];
    std::vector<std::pair<int, T>> coeffs;
    T rhs;
    if (src.model_row >= 0) {
      const LPRow& row = m.rows[src.model_row];
      rhs = T(row.rhs);
      // Accumulate per structural column (a variable may repeat in coeffs).
      std::vector<std::pair<int, T>> acc;
      for (const auto& [j, a] : row.coeffs) {
        const VarMap& map = L.varmap[j];
        rhs -= T(a) * T(map.shift);
        acc.emplace_back(map.pos, T(a) * T(map.sign));
        if (map.neg >= 0) acc.emplace_back(map.neg, T(-a));
      }
      std::sort(acc.begin(), acc.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [col, a] : acc) {
        if (!coeffs.empty() && coeffs.back().first == col)
          coeffs.back().second += a;
        else
          coeffs.emplace_back(col, a);
      }
      std::erase_if(coeffs, [](const auto& p) { return p.second == T(0); });
    } else {
      coeffs.emplace_back(src.bound_col, T(1));
      rhs = T(src.bound_rhs);
    }
    if (decide && rhs < T(0)) {
      L.negate[r] = true;
      if (L.rel[r] == Relation::kLe)
        L.rel[r] = Relation::kGe;
      else if (L.rel[r] == Relation::kGe)
        L.rel[r] = Relation::kLe;
      // L.rel now holds the final relation; the replay pass only negates.
    }
    if (L.negate[r]) {
      rhs = -rhs;
      for (auto& [col, a] : coeffs) a = -a;
    }
    s.rows[r] = std::move(coeffs);
    s.rhs[r] = rhs;
  }
  if (decide) {
    // Fix the column layout: slack/surplus for Le/Ge, artificial for Ge/Eq.
    L.slack_col.assign(nrows, -1);
    L.art_col.assign(nrows, -1);
    int col = L.nstruct;
    for (size_t r = 0; r < nrows; ++r)
      if (L.rel[r] != Relation::kEq) L.slack_col[r] = col++;
    for (size_t r = 0; r < nrows; ++r)
      if (L.rel[r] != Relation::kLe) L.art_col[r] = col++;
    L.ncols = col;
  }
  return s;
}

// Full standard-form column r of the constraint matrix (structural columns
// from s.rows, slack/surplus/artificial as signed units).
template <typename T>
T matrix_entry(const StdLP<T>& s, const Layout& L, int row, int col) {
  if (col < L.nstruct) {
    for (const auto& [c, a] : s.rows[row])
      if (c == col) return a;
    return T(0);
  }
  if (L.slack_col[row] == col)
    return L.rel[row] == Relation::kLe ? T(1) : T(-1);
  if (L.art_col[row] == col) return T(1);
  return T(0);
}

// --- Dense tableau -----------------------------------------------------------

struct Tableau {
  int m = 0, n = 0;  // rows, columns (excluding the rhs column)
  std::vector<std::vector<double>> a;  // m rows of n+1 (last = rhs)
  std::vector<double> cost;            // n+1 reduced-cost row (last = -z)
  std::vector<int> basis;              // basic column per row

  void pivot(int pr, int pc) {
    double piv = a[pr][pc];
    for (int j = 0; j <= n; ++j) a[pr][j] /= piv;
    a[pr][pc] = 1.0;  // cut rounding residue on the pivot column
    for (int i = 0; i < m; ++i) {
      if (i == pr) continue;
      double f = a[i][pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= n; ++j) a[i][j] -= f * a[pr][j];
      a[i][pc] = 0.0;
    }
    double f = cost[pc];
    if (f != 0.0) {
      for (int j = 0; j <= n; ++j) cost[j] -= f * a[pr][j];
      cost[pc] = 0.0;
    }
    basis[pr] = pc;
  }
};

struct SimplexOutcome {
  bool feasible = true;
  bool unbounded = false;
  int iterations = 0;
};

// Maximize over the tableau until no positive reduced cost remains.  Columns
// with banned[j] never enter.  Returns unbounded if an entering column has no
// blocking row.
SimplexOutcome run_simplex(Tableau& t, const std::vector<char>& banned,
                           const SolveOptions& opts, int* iter_budget) {
  SimplexOutcome out;
  int stall = 0;
  bool bland = false;
  double last_obj = -t.cost[t.n];
  while (true) {
    if (--*iter_budget <= 0)
      throw std::runtime_error("simplex iteration budget exhausted");
    ++out.iterations;
    // Entering column.
    int pc = -1;
    if (!bland) {
      double best = opts.tol;
      for (int j = 0; j < t.n; ++j)
        if (!banned[j] && t.cost[j] > best) {
          best = t.cost[j];
          pc = j;
        }
    } else {
      for (int j = 0; j < t.n; ++j)
        if (!banned[j] && t.cost[j] > opts.tol) {
          pc = j;
          break;
        }
    }
    if (pc < 0) break;  // optimal
    // Leaving row: prefer flushing a basic artificial sitting at zero (its
    // column is banned), regardless of sign, to keep artificials at zero.
    int pr = -1;
    for (int i = 0; i < t.m; ++i)
      if (banned[t.basis[i]] && std::fabs(t.a[i][pc]) > opts.tol &&
          std::fabs(t.a[i][t.n]) <= opts.tol) {
        pr = i;
        break;
      }
    if (pr < 0) {
      double best_ratio = 0.0;
      for (int i = 0; i < t.m; ++i) {
        if (t.a[i][pc] <= opts.tol) continue;
        double ratio = t.a[i][t.n] / t.a[i][pc];
        bool better;
        if (pr < 0)
          better = true;
        else if (std::fabs(ratio - best_ratio) <= opts.tol * (1 + std::fabs(best_ratio)))
          better = bland ? t.basis[i] < t.basis[pr] : false;
        else
          better = ratio < best_ratio;
        if (better) {
          pr = i;
          best_ratio = ratio;
        }
      }
    }
    if (pr < 0) {
      out.unbounded = true;
      return out;
    }
    t.pivot(pr, pc);
    double obj = -t.cost[t.n];
    if (obj > last_obj + opts.tol * (1.0 + std::fabs(last_obj))) {
      last_obj = obj;
      stall = 0;
    } else if (++stall > 100) {
      bland = true;  // anti-cycling fallback
    }
  }
  return out;
}

// --- Exact re-check ----------------------------------------------------------

// Solve the square rational system M x = b by Gauss-Jordan.  Returns false if
// singular.
bool rat_solve(std::vector<std::vector<Rat>> M, std::vector<Rat> b,
               std::vector<Rat>& x) {
  int n = static_cast<int>(M.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (M[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    std::swap(M[piv], M[col]);
    std::swap(b[piv], b[col]);
    Rat p = M[col][col];
    for (int j = col; j < n; ++j) M[col][j] /= p;
    b[col] /= p;
    for (int i = 0; i < n; ++i) {
      if (i == col || M[i][col] == 0) continue;
      Rat f = M[i][col];
      for (int j = col; j < n; ++j) M[i][j] -= f * M[col][j];
      b[i] -= f * b[col];
    }
  }
  x = std::move(b);
  return true;
}

void rational_recheck(const LPModel& model, Layout& layout,
                      const std::vector<int>& basis, SolveResult& result) {
  StdLP<Rat> s = build_std<Rat>(model, layout, /*decide=*/false);
  int m = static_cast<int>(s.rows.size());
  result.rational_checked = true;
  result.rational_agrees = false;

  // Basis matrix and x_B = B^[-1] rhs.
  std::vector<std::vector<Rat>> B(m, std::vector<Rat>(m));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) B[i][k] = matrix_entry(s, layout, i, basis[k]);
  std::vector<Rat> xb;
  if (!rat_solve(B, s.rhs, xb)) {
    result.note = "rational recheck: singular basis";
    return;
  }
  for (const Rat& v : xb)
    if (v < 0) {
      result.note = "rational recheck: basis infeasible";
      return;
    }
  // y = c_B B^[-1]  via  B^T y = c_B.
  auto col_cost = [&](int col) -> Rat {
    return col < layout.nstruct ? s.c[col] : Rat(0);
  };
  std::vector<std::vector<Rat>> BT(m, std::vector<Rat>(m));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) BT[i][k] = B[k][i];
  std::vector<Rat> cb(m);
  for (int k = 0; k < m; ++k) cb[k] = col_cost(basis[k]);
  std::vector<Rat> y;
  if (!rat_solve(BT, cb, y)) {
    result.note = "rational recheck: singular basis transpose";
    return;
  }
  std::vector<char> in_basis(layout.ncols, 0);
  for (int k : basis) in_basis[k] = 1;
  for (int j = 0; j < layout.ncols; ++j) {
    if (in_basis[j]) continue;
    bool artificial = false;
    for (int r = 0; r < m; ++r)
      if (layout.art_col[r] == j) artificial = true;
    if (artificial) continue;  // banned from entering; not priced
    Rat red = col_cost(j);
    for (int i = 0; i < m; ++i) red -= y[i] * matrix_entry(s, layout, i, j);
    if (red > 0) {
      result.note = "rational recheck: positive reduced cost at column " +
                    std::to_string(j);
      return;
    }
  }
  // Exact objective value through the original variables.
  std::vector<Rat> u(layout.ncols, Rat(0));
  for (int k = 0; k < m; ++k) u[basis[k]] = xb[k];
  Rat value = 0;
  for (size_t j = 0; j < model.vars.size(); ++j) {
    const VarMap& map = layout.varmap[j];
    Rat xj = Rat(map.shift) + Rat(map.sign) * u[map.pos];
    if (map.neg >= 0) xj -= u[map.neg];
    value += Rat(model.objective[j]) * xj;
  }
  result.rational_value = value.convert_to<double>();
  double scale = std::max(1.0, std::fabs(result.value));
  if (std::fabs(result.rational_value - result.value) > 1e-7 * scale) {
    result.note = "rational recheck: value mismatch";
    return;
  }
  result.rational_agrees = true;
}

}  // namespace

SolveResult solve(const LPModel& model, const SolveOptions& opts) {
  model.check();
  SolveResult result;
  Layout layout = make_layout(model);
  StdLP<double> s = build_std<double>(model, layout, /*decide=*/true);
  int m = static_cast<int>(s.rows.size());
  int n = layout.ncols;

  Tableau t;
  t.m = m;
  t.n = n;
  t.a.assign(m, std::vector<double>(n + 1, 0.0));
  t.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (const auto& [col, a] : s.rows[i]) t.a[i][col] = a;
    if (layout.slack_col[i] >= 0)
      t.a[i][layout.slack_col[i]] = layout.rel[i] == Relation::kLe ? 1.0 : -1.0;
    if (layout.art_col[i] >= 0) t.a[i][layout.art_col[i]] = 1.0;
    t.a[i][n] = s.rhs[i];
    t.basis[i] = layout.art_col[i] >= 0 ? layout.art_col[i] : layout.slack_col[i];
  }

  int iter_budget = opts.max_iterations;
  std::vector<char> banned(n, 0);

  // Phase 1: maximize -(sum of artificials).
  bool have_artificials = false;
  for (int i = 0; i < m; ++i)
    if (layout.art_col[i] >= 0) have_artificials = true;
  if (have_artificials) {
    t.cost.assign(n + 1, 0.0);
    for (int i = 0; i < m; ++i)
      if (layout.art_col[i] >= 0) t.cost[layout.art_col[i]] = -1.0;
    // Price out the basic artificials.
    for (int i = 0; i < m; ++i)
      if (layout.art_col[i] >= 0)
        for (int j = 0; j <= n; ++j) t.cost[j] += t.a[i][j];
    SimplexOutcome p1 = run_simplex(t, banned, opts, &iter_budget);
    result.iterations += p1.iterations;
    double infeas = -t.cost[n];  // phase-1 objective value
    if (infeas < -1e-7) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
    for (int i = 0; i < m; ++i)
      if (layout.art_col[i] >= 0) banned[layout.art_col[i]] = 1;
  }

  // Phase 2 reduced costs: c_j - c_B . column_j, over the current basis.
  t.cost.assign(n + 1, 0.0);
  for (int j = 0; j < layout.nstruct; ++j) t.cost[j] = s.c[j];
  for (int i = 0; i < m; ++i) {
    double cb = t.basis[i] < layout.nstruct ? s.c[t.basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= n; ++j) t.cost[j] -= cb * t.a[i][j];
  }
  SimplexOutcome p2 = run_simplex(t, banned, opts, &iter_budget);
  result.iterations += p2.iterations;
  if (p2.unbounded) {
    result.status = SolveStatus::kUnbounded;
    return result;
  }

  result.status = SolveStatus::kOptimal;
  std::vector<double> u(n, 0.0);
  for (int i = 0; i < m; ++i) u[t.basis[i]] = t.a[i][n];
  result.x.resize(model.vars.size());
  result.value = 0.0;
  for (size_t j = 0; j < model.vars.size(); ++j) {
    const VarMap& map = layout.varmap[j];
    double xj = map.shift + map.sign * u[map.pos];
    if (map.neg >= 0) xj -= u[map.neg];
    result.x[j] = xj;
    result.value += model.objective[j] * xj;
  }
  if (opts.rational_recheck) rational_recheck(model, layout, t.basis, result);
  return result;
}

}  // namespace tame
