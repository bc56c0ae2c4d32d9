#include "polyasym/lp.hpp"

#include "polyasym/errors.hpp"
#include "polyasym/linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace polyasym {

namespace {

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  if (n == 0) throw std::invalid_argument("lp: empty objective");
  for (const Constraint& c : lp.constraints)
    if (c.a.size() != n) throw std::invalid_argument("lp: constraint dimension mismatch");
  for (int j : lp.nonneg_vars)
    if (j < 0 || j >= static_cast<int>(n))
      throw std::invalid_argument("lp: nonneg index out of range");
}

struct Tableau {
  std::vector<QVector> a;  // m rows, ncols columns, kept fully reduced
  QVector rhs;             // stays ≥ 0 throughout
  std::vector<int> basis;  // basic column of each row
  int ncols = 0;

  void pivot(int row, int col) {
    const Rational inv = Rational(1) / a[row][col];
    for (int j = 0; j < ncols; ++j) a[row][j] *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) == row || a[i][col] == 0) continue;
      const Rational f = a[i][col];
      for (int j = 0; j < ncols; ++j) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    basis[row] = col;
  }
};

Rational reduced_cost(const Tableau& t, const QVector& obj, int col) {
  Rational rc = obj[col];
  for (std::size_t r = 0; r < t.a.size(); ++r)
    if (obj[t.basis[r]] != 0) rc -= obj[t.basis[r]] * t.a[r][col];
  return rc;
}

enum class RunResult { Optimal, Unbounded };

// Maximize obj over the tableau, entering only columns with allowed[j].
// Bland's rule: entering = lowest column index with positive reduced cost;
// leaving = lowest basic index among minimal ratios. On Unbounded the
// entering column index is stored in *unbounded_col.
RunResult run_simplex(Tableau& t, const QVector& obj, const std::vector<char>& allowed,
                      int* unbounded_col) {
  const int m = static_cast<int>(t.a.size());
  for (;;) {
    int enter = -1;
    for (int j = 0; j < t.ncols; ++j) {
      if (!allowed[j]) continue;
      if (reduced_cost(t, obj, j) > 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return RunResult::Optimal;
    int leave = -1;
    Rational best;
    for (int r = 0; r < m; ++r) {
      if (t.a[r][enter] <= 0) continue;
      const Rational ratio = t.rhs[r] / t.a[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && t.basis[r] < t.basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) {
      if (unbounded_col) *unbounded_col = enter;
      return RunResult::Unbounded;
    }
    t.pivot(leave, enter);
  }
}

void verify_optimal(const LinearProgram& lp, const LPSolution& sol) {
  const std::size_t n = lp.objective.size();
  const bool maximize = lp.sense == Sense::Maximize;
  if (sol.point.size() != n || sol.dual.size() != lp.constraints.size())
    throw InternalConsistencyError("lp: certificate has wrong dimensions");
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Constraint& c = lp.constraints[i];
    const Rational ax = dot(c.a, sol.point);
    const bool ok = c.relation == Relation::LessEq      ? ax <= c.b
                    : c.relation == Relation::GreaterEq ? ax >= c.b
                                                        : ax == c.b;
    if (!ok) throw InternalConsistencyError("lp: optimal point violates a constraint");
  }
  for (int j : lp.nonneg_vars)
    if (sol.point[j] < 0) throw InternalConsistencyError("lp: optimal point violates a sign bound");
  if (dot(lp.objective, sol.point) != sol.value)
    throw InternalConsistencyError("lp: objective value mismatch");
  // Dual row signs, dual feasibility per variable, and strong duality.
  Rational yb = 0;
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Rational& y = sol.dual[i];
    const Relation rel = lp.constraints[i].relation;
    if (rel == Relation::LessEq && (maximize ? y < 0 : y > 0))
      throw InternalConsistencyError("lp: dual sign on a <= row");
    if (rel == Relation::GreaterEq && (maximize ? y > 0 : y < 0))
      throw InternalConsistencyError("lp: dual sign on a >= row");
    yb += y * lp.constraints[i].b;
  }
  std::vector<char> nonneg(n, 0);
  for (int j : lp.nonneg_vars) nonneg[j] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    Rational ya = 0;
    for (std::size_t i = 0; i < lp.constraints.size(); ++i)
      ya += sol.dual[i] * lp.constraints[i].a[j];
    const Rational& cj = lp.objective[j];
    if (nonneg[j] ? (maximize ? ya < cj : ya > cj) : ya != cj)
      throw InternalConsistencyError("lp: dual infeasible at a variable");
  }
  if (yb != sol.value) throw InternalConsistencyError("lp: duality gap");
}

void verify_unbounded(const LinearProgram& lp, const LPSolution& sol) {
  const bool maximize = lp.sense == Sense::Maximize;
  bool nonzero = false;
  for (const Rational& d : sol.ray) nonzero = nonzero || d != 0;
  if (!nonzero) throw InternalConsistencyError("lp: zero unbounded ray");
  for (const Constraint& c : lp.constraints) {
    const Rational ad = dot(c.a, sol.ray);
    const bool ok = c.relation == Relation::LessEq      ? ad <= 0
                    : c.relation == Relation::GreaterEq ? ad >= 0
                                                        : ad == 0;
    if (!ok) throw InternalConsistencyError("lp: ray leaves the feasible cone");
  }
  for (int j : lp.nonneg_vars)
    if (sol.ray[j] < 0) throw InternalConsistencyError("lp: ray violates a sign bound");
  const Rational cd = dot(lp.objective, sol.ray);
  if (maximize ? cd <= 0 : cd >= 0)
    throw InternalConsistencyError("lp: ray does not improve the objective");
}

}  // namespace

LPSolution solve(const LinearProgram& lp) {
  validate(lp);
  const int n = static_cast<int>(lp.objective.size());
  const int m = static_cast<int>(lp.constraints.size());
  const bool maximize = lp.sense == Sense::Maximize;

  std::vector<char> nonneg(n, 0);
  for (int j : lp.nonneg_vars) nonneg[j] = 1;

  // Internal problem: maximize, all variables ≥ 0 (free ones split x = x⁺ − x⁻),
  // rows normalized to b ≥ 0, one slack/surplus per inequality, and one
  // artificial per row so the initial basis is the identity and every row's
  // dual multiplier can be read off its artificial's reduced cost at the end.
  std::vector<int> col_plus(n), col_minus(n, -1);
  int ncols = 0;
  for (int j = 0; j < n; ++j) {
    col_plus[j] = ncols++;
    if (!nonneg[j]) col_minus[j] = ncols++;
  }
  std::vector<QVector> row_a(m);
  std::vector<Relation> row_rel(m);
  QVector row_b(m);
  std::vector<char> flipped(m, 0);
  for (int i = 0; i < m; ++i) {
    row_a[i] = lp.constraints[i].a;
    row_rel[i] = lp.constraints[i].relation;
    row_b[i] = lp.constraints[i].b;
    if (row_b[i] < 0) {
      flipped[i] = 1;
      row_b[i] = -row_b[i];
      for (Rational& v : row_a[i]) v = -v;
      if (row_rel[i] == Relation::LessEq)
        row_rel[i] = Relation::GreaterEq;
      else if (row_rel[i] == Relation::GreaterEq)
        row_rel[i] = Relation::LessEq;
    }
  }
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (row_rel[i] != Relation::Equal) slack_col[i] = ncols++;
  const int first_art = ncols;
  for (int i = 0; i < m; ++i) art_col[i] = ncols++;

  Tableau t;
  t.ncols = ncols;
  t.a.assign(m, QVector(ncols, Rational(0)));
  t.rhs = row_b;
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      t.a[i][col_plus[j]] = row_a[i][j];
      if (col_minus[j] >= 0) t.a[i][col_minus[j]] = -row_a[i][j];
    }
    if (slack_col[i] >= 0)
      t.a[i][slack_col[i]] = row_rel[i] == Relation::LessEq ? 1 : -1;
    t.a[i][art_col[i]] = 1;
    t.basis[i] = art_col[i];
  }

  // Phase 1: drive the artificials to zero.
  QVector phase1(ncols, Rational(0));
  for (int i = 0; i < m; ++i) phase1[art_col[i]] = -1;
  std::vector<char> allow_all(ncols, 1);
  if (run_simplex(t, phase1, allow_all, nullptr) != RunResult::Optimal)
    throw InternalConsistencyError("lp: phase 1 cannot be unbounded");
  Rational infeas = 0;
  for (int r = 0; r < m; ++r)
    if (t.basis[r] >= first_art) infeas += t.rhs[r];
  if (infeas != 0) {
    LPSolution sol;
    sol.status = LPStatus::Infeasible;
    return sol;
  }
  // Pivot any artificial still basic (at zero) out on a structural/slack
  // column; a row with none is redundant and stays inert.
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < first_art) continue;
    for (int j = 0; j < first_art; ++j) {
      if (t.a[r][j] != 0) {
        t.pivot(r, j);
        break;
      }
    }
  }

  // Phase 2: the real objective; artificials may not re-enter.
  QVector phase2(ncols, Rational(0));
  for (int j = 0; j < n; ++j) {
    const Rational cj = maximize ? lp.objective[j] : Rational(-lp.objective[j]);
    phase2[col_plus[j]] = cj;
    if (col_minus[j] >= 0) phase2[col_minus[j]] = -cj;
  }
  std::vector<char> allow_real(ncols, 1);
  for (int i = 0; i < m; ++i) allow_real[art_col[i]] = 0;
  int unbounded_col = -1;
  const RunResult res = run_simplex(t, phase2, allow_real, &unbounded_col);

  LPSolution sol;
  if (res == RunResult::Unbounded) {
    sol.status = LPStatus::Unbounded;
    QVector dz(ncols, Rational(0));
    dz[unbounded_col] = 1;
    for (int r = 0; r < m; ++r) dz[t.basis[r]] = -t.a[r][unbounded_col];
    sol.ray.assign(n, Rational(0));
    for (int j = 0; j < n; ++j) {
      sol.ray[j] = dz[col_plus[j]];
      if (col_minus[j] >= 0) sol.ray[j] -= dz[col_minus[j]];
    }
    verify_unbounded(lp, sol);
    return sol;
  }

  sol.status = LPStatus::Optimal;
  QVector z(ncols, Rational(0));
  for (int r = 0; r < m; ++r) z[t.basis[r]] = t.rhs[r];
  sol.point.assign(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    sol.point[j] = z[col_plus[j]];
    if (col_minus[j] >= 0) sol.point[j] -= z[col_minus[j]];
  }
  sol.value = dot(lp.objective, sol.point);
  sol.dual.assign(m, Rational(0));
  for (int i = 0; i < m; ++i) {
    Rational y = -reduced_cost(t, phase2, art_col[i]);  // multiplier of row i
    if (flipped[i]) y = -y;
    if (!maximize) y = -y;
    sol.dual[i] = y;
  }
  verify_optimal(lp, sol);
  return sol;
}

int optimal_face_dimension(const LinearProgram& lp, LPSolution& sol) {
  if (sol.status != LPStatus::Optimal)
    throw std::invalid_argument("optimal_face_dimension: solution is not optimal");
  const int n = static_cast<int>(lp.objective.size());

  // The optimal face as a constraint system: feasibility plus ⟨c,x⟩ = value.
  LinearProgram face = lp;
  face.sense = Sense::Maximize;
  face.constraints.push_back({lp.objective, Relation::Equal, sol.value});

  std::vector<QVector> normals;
  normals.push_back(lp.objective);
  sol.tight_set.clear();
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    const Constraint& c = lp.constraints[i];
    if (c.relation == Relation::Equal) {
      sol.tight_set.push_back(static_cast<int>(i));
      normals.push_back(c.a);
      continue;
    }
    // Maximize the row's slack over the face; tight everywhere iff max is 0.
    LinearProgram aux = face;
    aux.objective = c.a;
    if (c.relation == Relation::LessEq)
      for (Rational& v : aux.objective) v = -v;
    LPSolution s = solve(aux);
    if (s.status == LPStatus::Infeasible)
      throw InternalConsistencyError("lp: optimal face came back empty");
    if (s.status == LPStatus::Unbounded) continue;
    const Rational max_slack =
        c.relation == Relation::LessEq ? Rational(c.b + s.value) : Rational(s.value - c.b);
    if (max_slack == 0) {
      sol.tight_set.push_back(static_cast<int>(i));
      normals.push_back(c.a);
    }
  }
  for (int j : lp.nonneg_vars) {
    LinearProgram aux = face;
    aux.objective.assign(n, Rational(0));
    aux.objective[j] = 1;
    LPSolution s = solve(aux);
    if (s.status == LPStatus::Infeasible)
      throw InternalConsistencyError("lp: optimal face came back empty");
    if (s.status == LPStatus::Unbounded || s.value != 0) continue;
    QVector ej(n, Rational(0));
    ej[j] = 1;
    normals.push_back(std::move(ej));
  }
  sol.optimal_face_dim = n - rank(normals);
  return sol.optimal_face_dim;
}

LinearProgram dual_of(const LinearProgram& lp) {
  validate(lp);
  const int n = static_cast<int>(lp.objective.size());
  const int s = static_cast<int>(lp.constraints.size());
  if (lp.sense != Sense::Maximize)
    throw std::invalid_argument("dual_of: primal must be a maximization");
  for (const Constraint& c : lp.constraints)
    if (c.relation != Relation::LessEq)
      throw std::invalid_argument("dual_of: primal rows must all be <=");
  std::vector<int> sorted = lp.nonneg_vars;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const bool all_free = sorted.empty();
  bool all_nonneg = static_cast<int>(sorted.size()) == n;
  for (int j = 0; all_nonneg && j < n; ++j) all_nonneg = sorted[j] == j;
  if (!all_free && !all_nonneg)
    throw std::invalid_argument("dual_of: variables must be all free or all nonnegative");

  LinearProgram d;
  d.sense = Sense::Minimize;
  d.objective.resize(s);
  for (int i = 0; i < s; ++i) d.objective[i] = lp.constraints[i].b;
  for (int j = 0; j < n; ++j) {
    Constraint row;
    row.a.resize(s);
    for (int i = 0; i < s; ++i) row.a[i] = lp.constraints[i].a[j];
    row.relation = all_free ? Relation::Equal : Relation::GreaterEq;
    row.b = lp.objective[j];
    d.constraints.push_back(std::move(row));
  }
  d.nonneg_vars.resize(s);
  for (int i = 0; i < s; ++i) d.nonneg_vars[i] = i;
  return d;
}

}  // namespace polyasym
