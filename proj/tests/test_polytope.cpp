#include "doctest.h"
#include "helpers.hpp"

#include "polyasym/linalg.hpp"
#include "polyasym/lp.hpp"
#include "polyasym/polytope.hpp"

#include <algorithm>

using namespace polyasym;
using namespace testutil;

namespace {

// Exact test "some point of P dominates x componentwise", as an LP feasibility
// question on the H-representation of P.
bool dominated_by_point_of(const Polytope& P, const QVector& x) {
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.objective.assign(P.n, Rational(0));
  for (const Facet& f : P.facets)
    lp.constraints.push_back({f.normal, Relation::LessEq, f.offset});
  for (int j = 0; j < P.n; ++j) {
    QVector ej(P.n, Rational(0));
    ej[j] = 1;
    lp.constraints.push_back({std::move(ej), Relation::GreaterEq, x[j]});
  }
  return solve(lp).status == LPStatus::Optimal;
}

// True iff x lies in the convex hull of the given points (LP feasibility in
// barycentric weights).
bool in_hull_of(const std::vector<QVector>& pts, const QVector& x) {
  const int n = static_cast<int>(x.size());
  const int k = static_cast<int>(pts.size());
  if (k == 0) return false;
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.objective.assign(k, Rational(0));
  for (int j = 0; j < n; ++j) {
    QVector row(k);
    for (int i = 0; i < k; ++i) row[i] = pts[i][j];
    lp.constraints.push_back({std::move(row), Relation::Equal, x[j]});
  }
  lp.constraints.push_back({QVector(k, Rational(1)), Relation::Equal, Rational(1)});
  for (int i = 0; i < k; ++i) lp.nonneg_vars.push_back(i);
  return solve(lp).status == LPStatus::Optimal;
}

std::vector<QVector> random_nonneg_points(const RngStream& st, std::uint64_t& ctr, int n,
                                          int count, int max_coord) {
  std::vector<QVector> pts;
  for (int i = 0; i < count; ++i) {
    QVector p;
    for (int j = 0; j < n; ++j)
      p.push_back(q(static_cast<long>(st.below(ctr++, max_coord + 1))));
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

TEST_SUITE("polytope") {

TEST_CASE("convex_hull drops interior and non-extreme points") {
  SUBCASE("triangle with an interior point") {
    Polytope P = convex_hull({qv({0, 0}), qv({1, 0}), qv({0, 1}),
                              qvr({q(1, 4), q(1, 4)})});
    REQUIRE(P.vertices.size() == 3);
    CHECK(P.vertices == std::vector<QVector>{qv({0, 0}), qv({0, 1}), qv({1, 0})});
    CHECK(P.affine_dim == 2);
  }
  SUBCASE("collinear points collapse to a segment") {
    Polytope P = convex_hull({qv({2, 0}), qv({0, 2}), qv({1, 1})});
    REQUIRE(P.vertices.size() == 2);
    CHECK(P.vertices == std::vector<QVector>{qv({0, 2}), qv({2, 0})});
    CHECK(P.affine_dim == 1);
  }
  SUBCASE("single point") {
    Polytope P = convex_hull({qv({3, 5})});
    CHECK(P.vertices == std::vector<QVector>{qv({3, 5})});
    CHECK(P.affine_dim == 0);
    CHECK(P.contains(qv({3, 5})));
    CHECK_FALSE(P.contains(qv({3, 4})));
  }
  SUBCASE("duplicated input points") {
    Polytope P = convex_hull({qv({0, 0}), qv({0, 0}), qv({1, 1}), qv({1, 1})});
    CHECK(P.vertices.size() == 2);
  }
}

TEST_CASE("V- and H-representations agree on random hulls") {
  const RngStream st = derive_stream(20260801ull, 31);
  std::uint64_t ctr = 0;
  for (int it = 0; it < 20; ++it) {
    const int n = 2 + static_cast<int>(st.below(ctr++, 2));  // 2 or 3
    auto pts = random_nonneg_points(st, ctr, n, 6, 4);
    Polytope P = convex_hull(pts);

    // Every input point satisfies every facet row; vertices are input points.
    for (const QVector& p : pts) {
      CHECK(P.contains(p));
      for (const Facet& f : P.facets) CHECK(dot(f.normal, p) <= f.offset);
    }
    for (const QVector& v : P.vertices)
      CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());

    // Minimality: no vertex lies in the hull of the others.
    for (std::size_t i = 0; i < P.vertices.size(); ++i) {
      std::vector<QVector> others;
      for (std::size_t l = 0; l < P.vertices.size(); ++l)
        if (l != i) others.push_back(P.vertices[l]);
      if (others.empty()) continue;
      CHECK_FALSE(in_hull_of(others, P.vertices[i]));
    }

    // contains() matches hull membership on a handful of probe points.
    for (int probe = 0; probe < 10; ++probe) {
      QVector x;
      for (int j = 0; j < n; ++j)
        x.push_back(q(static_cast<long>(st.below(ctr++, 17)), 4));
      CHECK(P.contains(x) == in_hull_of(pts, x));
    }
  }
}

TEST_CASE("newton_polytope is the hull of the union of supports") {
  Polytope P = newton_polytope(pm("x1^2 + x2^2", 2));
  CHECK(P.vertices == std::vector<QVector>{qv({0, 2}), qv({2, 0})});
  CHECK(P.affine_dim == 1);

  Polytope Q = newton_polytope(pm("x1^2*x2; x1*x2^2", 2));
  CHECK(Q.vertices == std::vector<QVector>{qv({1, 2}), qv({2, 1})});
}

TEST_CASE("downward_closure pinned shapes") {
  SUBCASE("one point spans a box") {
    Polytope P = downward_closure(convex_hull({qv({1, 1})}));
    CHECK(P.vertices ==
          std::vector<QVector>{qv({0, 0}), qv({0, 1}), qv({1, 0}), qv({1, 1})});
    CHECK(P.affine_dim == 2);
  }
  SUBCASE("segment spans a triangle") {
    Polytope P = downward_closure(convex_hull({qv({2, 0}), qv({0, 2})}));
    CHECK(P.vertices == std::vector<QVector>{qv({0, 0}), qv({0, 2}), qv({2, 0})});
  }
  SUBCASE("idempotent") {
    Polytope P = downward_closure(convex_hull({qv({2, 1}), qv({1, 2})}));
    CHECK(downward_closure(P) == P);
  }
  SUBCASE("negative coordinates are rejected") {
    CHECK_THROWS_AS(downward_closure(convex_hull({qv({-1, 0})})), std::invalid_argument);
  }
}

TEST_CASE("downward_closure matches the domination oracle on a quarter grid") {
  const RngStream st = derive_stream(20260801ull, 32);
  std::uint64_t ctr = 0;
  for (int it = 0; it < 5; ++it) {
    auto pts = random_nonneg_points(st, ctr, 2, 4, 3);
    Polytope P = convex_hull(pts);
    Polytope C = downward_closure(P);
    CHECK(downward_closure(C) == C);  // idempotence
    for (const QVector& v : P.vertices) CHECK(C.contains(v));  // monotone

    for (int a = 0; a <= 16; ++a) {
      for (int b = 0; b <= 16; ++b) {
        const QVector x = qvr({q(a, 4), q(b, 4)});
        CHECK(C.contains(x) == dominated_by_point_of(P, x));
      }
    }
  }
}

TEST_CASE("diagonal_farthest pinned values") {
  SUBCASE("symmetric segment") {
    auto d = diagonal_farthest(convex_hull({qv({2, 0}), qv({0, 2})}));
    REQUIRE(d.has_value());
    CHECK(d->d_value == q(1));
    CHECK(d->point == qv({1, 1}));
    CHECK(d->containing_face.dim == 1);  // relative interior of the segment
  }
  SUBCASE("asymmetric segment") {
    auto d = diagonal_farthest(convex_hull({qv({6, 0}), qv({0, 4})}));
    REQUIRE(d.has_value());
    CHECK(d->d_value == q(12, 5));
    CHECK(d->containing_face.dim == 1);
  }
  SUBCASE("box meets the diagonal at a vertex") {
    auto d = diagonal_farthest(downward_closure(convex_hull({qv({1, 1})})));
    REQUIRE(d.has_value());
    CHECK(d->d_value == q(1));
    CHECK(d->point == qv({1, 1}));
    CHECK(d->containing_face.dim == 0);
  }
  SUBCASE("polytope off the diagonal") {
    CHECK_FALSE(diagonal_farthest(convex_hull({qv({1, 0}), qv({2, 0})})).has_value());
  }
}

TEST_CASE("diagonal_farthest maximizes over the diagonal on random polytopes") {
  const RngStream st = derive_stream(20260801ull, 33);
  std::uint64_t ctr = 0;
  for (int it = 0; it < 15; ++it) {
    const int n = 2 + static_cast<int>(st.below(ctr++, 2));
    auto pts = random_nonneg_points(st, ctr, n, 5, 4);
    Polytope P = convex_hull(pts);
    auto d = diagonal_farthest(P);
    if (!d) {
      for (int k = 0; k <= 16; ++k)
        CHECK_FALSE(P.contains(QVector(n, Rational(k, 4))));
      continue;
    }
    CHECK(P.contains(QVector(n, d->d_value)));
    CHECK_FALSE(P.contains(QVector(n, Rational(d->d_value + Rational(1, 1024)))));
    CHECK(d->point == QVector(n, d->d_value));
    // The reported face is the smallest face containing the point.
    Face f = smallest_face_at(P, d->point);
    CHECK(f.dim == d->containing_face.dim);
    CHECK(f.vertices == d->containing_face.vertices);
  }
}

TEST_CASE("smallest_face_at on the unit square") {
  Polytope P = downward_closure(convex_hull({qv({1, 1})}));
  CHECK(smallest_face_at(P, qvr({q(1, 2), q(1, 2)})).dim == 2);
  Face edge = smallest_face_at(P, qvr({q(1), q(1, 2)}));
  CHECK(edge.dim == 1);
  CHECK(edge.vertices == std::vector<QVector>{qv({1, 0}), qv({1, 1})});
  Face corner = smallest_face_at(P, qv({1, 1}));
  CHECK(corner.dim == 0);
  CHECK(corner.vertices == std::vector<QVector>{qv({1, 1})});
  CHECK_THROWS_AS(smallest_face_at(P, qv({2, 2})), std::invalid_argument);
}

TEST_CASE("smallest_face_at returns a face with the point in its relative interior") {
  // Strictness: rows not tight on the face are strictly slack at the point.
  Polytope P = convex_hull({qv({0, 0}), qv({3, 0}), qv({0, 3})});
  const QVector x = qvr({q(1), q(0)});  // interior of the bottom edge
  Face f = smallest_face_at(P, x);
  CHECK(f.dim == 1);
  for (std::size_t i = 0; i < P.facets.size(); ++i) {
    const bool tight = dot(P.facets[i].normal, x) == P.facets[i].offset;
    const bool listed =
        std::find(f.tight_facets.begin(), f.tight_facets.end(), static_cast<int>(i)) !=
        f.tight_facets.end();
    CHECK(tight == listed);
  }
}

TEST_CASE("faces_all counts and ordering") {
  CHECK(faces_all(convex_hull({qv({2, 0}), qv({0, 2})})).size() == 3);
  CHECK(faces_all(convex_hull({qv({0, 0}), qv({1, 0}), qv({0, 1})})).size() == 7);
  CHECK(faces_all(convex_hull({qv({5, 5})})).size() == 1);

  auto fs = faces_all(convex_hull({qv({0, 0}), qv({1, 0}), qv({0, 1})}));
  for (std::size_t i = 1; i < fs.size(); ++i) CHECK(fs[i - 1].dim <= fs[i].dim);
  CHECK(fs.front().dim == 0);
  CHECK(fs.back().dim == 2);
  CHECK(fs.back().vertices.size() == 3);

  // A square: 4 vertices + 4 edges + itself.
  CHECK(faces_all(downward_closure(convex_hull({qv({1, 1})}))).size() == 9);
}

TEST_CASE("cone_membership pinned classifications") {
  CHECK(cone_membership({qv({2, 0}), qv({0, 2})}, qv({1, 1})) == ConeClass::Interior);
  CHECK(cone_membership({qv({1, 1})}, qv({1, 1})) == ConeClass::Boundary);
  CHECK(cone_membership({qv({1, 1})}, qv({-1, 0})) == ConeClass::Outside);
  CHECK(cone_membership({qv({2, 0}), qv({0, 2})}, qv({0, 0})) == ConeClass::Boundary);
  CHECK(cone_membership({qv({2, 1}), qv({1, 2})}, qv({1, 1})) == ConeClass::Interior);
  CHECK(cone_membership({qv({2, 1}), qv({1, 2})}, qv({2, 1})) == ConeClass::Boundary);
  CHECK(cone_membership({qv({2, 1}), qv({1, 2})}, qv({1, 0})) == ConeClass::Outside);
}

TEST_CASE("interior cone points survive small perturbations") {
  const QVector v = qv({1, 1});
  const std::vector<QVector> V = {qv({2, 0}), qv({0, 2})};
  REQUIRE(cone_membership(V, v) == ConeClass::Interior);
  for (int j = 0; j < 2; ++j) {
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      QVector w = v;
      w[j] += Rational(sgn, 8);
      CHECK(cone_membership(V, w) != ConeClass::Outside);
    }
  }
}

TEST_CASE("cone_meets_open_orthant pinned answers") {
  CHECK(cone_meets_open_orthant({qv({1, 1})}));
  CHECK_FALSE(cone_meets_open_orthant({qv({2, 0})}));
  CHECK(cone_meets_open_orthant({qv({2, 0}), qv({0, 2})}));
  CHECK_FALSE(cone_meets_open_orthant({qv({2, 0, 0}), qv({0, 2, 0})}));
  CHECK(cone_meets_open_orthant({qv({1, 0, 0}), qv({0, 1, 0}), qv({0, 0, 5})}));
}

TEST_CASE("polar constructions") {
  SUBCASE("halfspace system to hull") {
    HalfspaceSystem H;
    H.n = 2;
    H.rows = {Facet{qv({2, 0}), q(1)}, Facet{qv({0, 2}), q(1)}};
    Polytope P = polar_hull(H);
    CHECK(P.vertices == std::vector<QVector>{qv({0, 0}), qv({0, 2}), qv({2, 0})});
  }
  SUBCASE("nonpositive offsets are rejected") {
    HalfspaceSystem H;
    H.n = 2;
    H.rows = {Facet{qv({1, 0}), q(0)}};
    CHECK_THROWS_AS(polar_hull(H), std::invalid_argument);
  }
  SUBCASE("polar of the cross-polytope is the cube") {
    Polytope X = convex_hull({qv({1, 0}), qv({-1, 0}), qv({0, 1}), qv({0, -1})});
    Polytope P = polar_polytope(X);
    CHECK(P.vertices == std::vector<QVector>{qv({-1, -1}), qv({-1, 1}), qv({1, -1}),
                                             qv({1, 1})});
  }
  SUBCASE("bipolar identity") {
    Polytope T = convex_hull({qv({-1, -1}), qv({2, -1}), qv({-1, 2})});
    CHECK(polar_polytope(polar_polytope(T)) == T);
  }
  SUBCASE("vertex rows of the polar H-rep") {
    Polytope T = convex_hull({qv({0, 0}), qv({2, 0}), qv({0, 2})});
    HalfspaceSystem H = polar_hrep(T);
    REQUIRE(H.rows.size() == 3);  // one row per vertex, zero vertex included
    for (std::size_t i = 0; i < H.rows.size(); ++i) {
      CHECK(H.rows[i].normal == T.vertices[i]);
      CHECK(H.rows[i].offset == q(1));
    }
  }
}

}  // TEST_SUITE
