#include "doctest.h"
#include "helpers.hpp"

#include "polyasym/linalg.hpp"
#include "polyasym/lp.hpp"

#include <algorithm>

using namespace polyasym;
using namespace testutil;

namespace {

LinearProgram max_lp(QVector c, std::vector<Constraint> cons, std::vector<int> nonneg = {}) {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.objective = std::move(c);
  lp.constraints = std::move(cons);
  lp.nonneg_vars = std::move(nonneg);
  return lp;
}

Constraint le(QVector a, Rational b) { return Constraint{std::move(a), Relation::LessEq, std::move(b)}; }

bool feasible(const LinearProgram& lp, const QVector& x) {
  for (const Constraint& c : lp.constraints) {
    const Rational lhs = dot(c.a, x);
    if (c.relation == Relation::LessEq && lhs > c.b) return false;
    if (c.relation == Relation::GreaterEq && lhs < c.b) return false;
    if (c.relation == Relation::Equal && lhs != c.b) return false;
  }
  for (int j : lp.nonneg_vars)
    if (x[j] < 0) return false;
  return true;
}

// Random bounded-feasible max-LP: box bounds plus a few random cuts.
LinearProgram random_lp(const RngStream& st, std::uint64_t& ctr) {
  const int n = 1 + static_cast<int>(st.below(ctr++, 3));
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  for (int j = 0; j < n; ++j)
    lp.objective.push_back(q(static_cast<long>(st.below(ctr++, 7)) - 3));
  for (int j = 0; j < n; ++j) {
    QVector e(n, Rational(0)), me(n, Rational(0));
    e[j] = 1;
    me[j] = -1;
    lp.constraints.push_back(le(e, q(static_cast<long>(st.below(ctr++, 4)) + 1)));
    lp.constraints.push_back(le(me, q(static_cast<long>(st.below(ctr++, 4)) + 1)));
  }
  const int cuts = static_cast<int>(st.below(ctr++, 3));
  for (int i = 0; i < cuts; ++i) {
    QVector a;
    for (int j = 0; j < n; ++j)
      a.push_back(q(static_cast<long>(st.below(ctr++, 5)) - 2));
    lp.constraints.push_back(le(a, q(static_cast<long>(st.below(ctr++, 5)))));
  }
  return lp;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("pinned optima") {
  SUBCASE("axis box") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 0}), q(1)), le(qv({0, 2}), q(1))});
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value == q(1));
    CHECK(s.point == qvr({q(1, 2), q(1, 2)}));
  }
  SUBCASE("slanted pair") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 1}), q(1)), le(qv({1, 2}), q(1))});
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value == q(2, 3));
    CHECK(s.point == qvr({q(1, 3), q(1, 3)}));
  }
  SUBCASE("unbounded with certifying ray") {
    auto lp = max_lp(qv({1}), {}, {0});
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Unbounded);
    REQUIRE(s.ray.size() == 1);
    CHECK(s.ray[0] > 0);
  }
  SUBCASE("infeasible") {
    auto lp = max_lp(qv({1}), {le(qv({1}), q(-1))}, {0});
    CHECK(solve(lp).status == LPStatus::Infeasible);
  }
  SUBCASE("minimize sense") {
    LinearProgram lp = max_lp(qv({1, 1}), {le(qv({-1, 0}), q(2)), le(qv({0, -1}), q(3))});
    lp.sense = Sense::Minimize;
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value == q(-5));
  }
}

TEST_CASE("optimal_face_dimension distinguishes vertices from edges") {
  SUBCASE("unique vertex optimum") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 0}), q(1)), le(qv({0, 2}), q(1))});
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(optimal_face_dimension(lp, s) == 0);
    CHECK(s.optimal_face_dim == 0);
  }
  SUBCASE("whole facet optimal, free variables") {
    auto lp = max_lp(qv({1, 1}), {le(qv({1, 1}), q(1))});
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(s.value == q(1));
    CHECK(optimal_face_dimension(lp, s) == 1);
  }
  SUBCASE("whole facet optimal, sign-restricted") {
    auto lp = max_lp(qv({1, 1}), {le(qv({1, 1}), q(1))}, {0, 1});
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(optimal_face_dimension(lp, s) == 1);
  }
}

TEST_CASE("dual_of produces the textbook duals") {
  SUBCASE("free variables give equality duals") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 0}), q(1)), le(qv({0, 2}), q(1))});
    LinearProgram d = dual_of(lp);
    CHECK(d.sense == Sense::Minimize);
    CHECK(d.objective == qv({1, 1}));
    REQUIRE(d.constraints.size() == 2);
    CHECK(d.constraints[0].a == qv({2, 0}));
    CHECK(d.constraints[0].relation == Relation::Equal);
    CHECK(d.constraints[0].b == q(1));
    CHECK(d.constraints[1].a == qv({0, 2}));
    CHECK(d.constraints[1].relation == Relation::Equal);
    CHECK(d.nonneg_vars == std::vector<int>{0, 1});
  }
  SUBCASE("sign-restricted variables give inequality duals") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 1}), q(1)), le(qv({1, 2}), q(1))}, {0, 1});
    LinearProgram d = dual_of(lp);
    CHECK(d.sense == Sense::Minimize);
    REQUIRE(d.constraints.size() == 2);
    CHECK(d.constraints[0].relation == Relation::GreaterEq);
    CHECK(d.constraints[1].relation == Relation::GreaterEq);
  }
  SUBCASE("strong duality on a pinned pair") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 0}), q(1)), le(qv({0, 2}), q(1))});
    LPSolution p = solve(lp);
    LPSolution d = solve(dual_of(lp));
    REQUIRE(p.status == LPStatus::Optimal);
    REQUIRE(d.status == LPStatus::Optimal);
    CHECK(p.value == d.value);
  }
  SUBCASE("mixed shapes are rejected") {
    auto lp = max_lp(qv({1, 1}), {le(qv({2, 0}), q(1))}, {0});  // only x1 >= 0
    CHECK_THROWS_AS(dual_of(lp), std::invalid_argument);
  }
}

TEST_CASE("random LPs: exact strong duality and certified optimality") {
  const RngStream st = derive_stream(20260801ull, 21);
  std::uint64_t ctr = 0;
  int optima = 0;
  for (int it = 0; it < 60; ++it) {
    LinearProgram lp = random_lp(st, ctr);
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);  // box-bounded by construction
    ++optima;
    CHECK(feasible(lp, s.point));
    CHECK(dot(lp.objective, s.point) == s.value);

    // The returned dual multipliers certify the optimum: weighted constraint
    // rows reproduce the objective and the weighted offsets equal the value.
    REQUIRE(s.dual.size() == lp.constraints.size());
    const int n = static_cast<int>(lp.objective.size());
    QVector combo(n, Rational(0));
    Rational bound = 0;
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
      if (lp.constraints[i].relation == Relation::LessEq) CHECK(s.dual[i] >= 0);
      for (int j = 0; j < n; ++j) combo[j] += s.dual[i] * lp.constraints[i].a[j];
      bound += s.dual[i] * lp.constraints[i].b;
    }
    CHECK(combo == lp.objective);  // all variables free in random_lp
    CHECK(bound == s.value);

    // Explicit dual program agrees (all-free shape).
    LPSolution d = solve(dual_of(lp));
    REQUIRE(d.status == LPStatus::Optimal);
    CHECK(d.value == s.value);
  }
  CHECK(optima == 60);
}

TEST_CASE("face dimension agrees with brute-force vertex enumeration") {
  // For small LPs, enumerate all basic feasible points (n tight constraints
  // with independent normals), keep the optimal ones, and take the affine rank.
  const RngStream st = derive_stream(20260801ull, 22);
  std::uint64_t ctr = 0;
  for (int it = 0; it < 40; ++it) {
    LinearProgram lp = random_lp(st, ctr);
    const int n = static_cast<int>(lp.objective.size());
    if (static_cast<int>(lp.constraints.size()) > 6) continue;
    LPSolution s = solve(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    const int dim = optimal_face_dimension(lp, s);

    std::vector<QVector> optimal_vertices;
    const int m = static_cast<int>(lp.constraints.size());
    std::vector<int> idx(n);
    // Enumerate all n-subsets of constraints.
    auto recurse = [&](auto&& self, int start, int depth) -> void {
      if (depth == n) {
        QMatrix a;
        QVector b;
        for (int t = 0; t < n; ++t) {
          a.push_back(lp.constraints[idx[t]].a);
          b.push_back(lp.constraints[idx[t]].b);
        }
        if (rank(a) != n) return;
        auto x = solve_linear(a, b);
        if (!x || !feasible(lp, *x)) return;
        if (dot(lp.objective, *x) == s.value) {
          if (std::find(optimal_vertices.begin(), optimal_vertices.end(), *x) ==
              optimal_vertices.end())
            optimal_vertices.push_back(*x);
        }
        return;
      }
      for (int i = start; i < m; ++i) {
        idx[depth] = i;
        self(self, i + 1, depth + 1);
      }
    };
    recurse(recurse, 0, 0);
    REQUIRE(!optimal_vertices.empty());  // bounded polytope: optimum at a vertex
    // The optimal face is the convex hull of its optimal vertices.
    CHECK(dim == affine_rank(optimal_vertices));
  }
}

TEST_CASE("solve is deterministic") {
  auto lp = max_lp(qv({1, 1}), {le(qv({2, 1}), q(1)), le(qv({1, 2}), q(1))});
  LPSolution a = solve(lp);
  LPSolution b = solve(lp);
  CHECK(a.value == b.value);
  CHECK(a.point == b.point);
  CHECK(a.dual == b.dual);
}

}  // TEST_SUITE
