#include "polyasym/polytope.hpp"

#include "polyasym/errors.hpp"
#include "polyasym/linalg.hpp"
#include "polyasym/lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

namespace polyasym {

namespace {

// Scale (g, c) so the normal becomes a primitive integer vector, keeping the
// orientation. Makes coplanar rows from different constructions identical.
Facet canonical_row(QVector g, Rational c) {
  Integer L = 1;
  for (const Rational& v : g) L = lcm(L, denominator(v));
  Integer G = 0;
  for (const Rational& v : g) G = gcd(G, Integer(abs(numerator(v) * (L / denominator(v)))));
  if (G == 0) throw InternalConsistencyError("geom: zero facet normal");
  const Rational scale(L, G);
  for (Rational& v : g) v *= scale;
  c *= scale;
  return Facet{std::move(g), std::move(c)};
}

bool row_less(const Facet& a, const Facet& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  return a.offset < b.offset;
}

QVector negated(const QVector& v) {
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

struct SimpFacet {
  QVector g;  // ⟨g,y⟩ ≤ c, strict at the interior witness
  Rational c;
  std::vector<int> verts;  // sorted point indices, |verts| = d
  bool alive = true;
};

// Hyperplane through the points ids (affinely independent), oriented so the
// witness o lies strictly on the ≤ side.
std::pair<QVector, Rational> oriented_hyperplane(const std::vector<QVector>& pts,
                                                 const std::vector<int>& ids, const QVector& o) {
  QMatrix diffs;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    QVector row(pts[ids[0]].size());
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] = pts[ids[i]][j] - pts[ids[0]][j];
    diffs.push_back(std::move(row));
  }
  std::vector<QVector> ns = nullspace(std::move(diffs));
  if (ns.size() != 1) throw InternalConsistencyError("geom: degenerate facet hyperplane");
  QVector g = std::move(ns[0]);
  Rational c = dot(g, pts[ids[0]]);
  const Rational go = dot(g, o);
  if (go == c) throw InternalConsistencyError("geom: interior witness on a facet plane");
  if (go > c) {
    g = negated(g);
    c = -c;
  }
  return {std::move(g), std::move(c)};
}

// Beneath-beyond over full-dimensional points in ℝ^d, d ≥ 2: returns the
// irredundant canonical facet rows (coplanar simplicial pieces merged).
std::vector<Facet> hull_rows_fulldim(const std::vector<QVector>& pts) {
  const int d = static_cast<int>(pts[0].size());
  const int N = static_cast<int>(pts.size());

  std::vector<int> simplex{0};
  {
    std::vector<QVector> chosen{pts[0]};
    for (int i = 1; i < N && static_cast<int>(simplex.size()) < d + 1; ++i) {
      chosen.push_back(pts[i]);
      if (affine_rank(chosen) == static_cast<int>(simplex.size()))
        simplex.push_back(i);
      else
        chosen.pop_back();
    }
    if (static_cast<int>(simplex.size()) != d + 1)
      throw InternalConsistencyError("geom: point set is not full-dimensional");
  }
  // Centroid of the simplex: a permanent strict-interior orientation witness.
  QVector o(d, Rational(0));
  for (int id : simplex)
    for (int j = 0; j < d; ++j) o[j] += pts[id][j];
  for (int j = 0; j < d; ++j) o[j] /= d + 1;

  std::vector<SimpFacet> facets;
  for (int skip = 0; skip <= d; ++skip) {
    std::vector<int> ids;
    for (int k = 0; k <= d; ++k)
      if (k != skip) ids.push_back(simplex[k]);
    auto [g, c] = oriented_hyperplane(pts, ids, o);
    std::sort(ids.begin(), ids.end());
    facets.push_back({std::move(g), std::move(c), std::move(ids), true});
  }

  const std::set<int> in_simplex(simplex.begin(), simplex.end());
  for (int p = 0; p < N; ++p) {
    if (in_simplex.count(p)) continue;
    std::vector<char> visible(facets.size(), 0);
    bool any_visible = false;
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
      if (!facets[fi].alive) continue;
      if (dot(facets[fi].g, pts[p]) > facets[fi].c) {
        visible[fi] = 1;
        any_visible = true;
      }
    }
    if (!any_visible) continue;  // p lies in the current hull

    std::map<std::vector<int>, std::vector<int>> ridge_map;
    for (std::size_t fi = 0; fi < facets.size(); ++fi) {
      if (!facets[fi].alive) continue;
      const std::vector<int>& vs = facets[fi].verts;
      for (std::size_t skip = 0; skip < vs.size(); ++skip) {
        std::vector<int> ridge;
        for (std::size_t k = 0; k < vs.size(); ++k)
          if (k != skip) ridge.push_back(vs[k]);
        ridge_map[ridge].push_back(static_cast<int>(fi));
      }
    }
    std::vector<std::vector<int>> horizon;
    for (const auto& [ridge, fids] : ridge_map) {
      if (fids.size() != 2) throw InternalConsistencyError("geom: open ridge in the hull");
      if (visible[fids[0]] != visible[fids[1]]) horizon.push_back(ridge);
    }
    for (std::size_t fi = 0; fi < facets.size(); ++fi)
      if (visible[fi]) facets[fi].alive = false;
    for (std::vector<int>& ridge : horizon) {
      std::vector<int> ids = std::move(ridge);
      ids.push_back(p);
      auto [g, c] = oriented_hyperplane(pts, ids, o);
      std::sort(ids.begin(), ids.end());
      facets.push_back({std::move(g), std::move(c), std::move(ids), true});
    }
  }

  std::set<std::pair<QVector, Rational>> seen;
  std::vector<Facet> rows;
  for (SimpFacet& f : facets) {
    if (!f.alive) continue;
    Facet cf = canonical_row(std::move(f.g), std::move(f.c));
    if (seen.insert({cf.normal, cf.offset}).second) rows.push_back(std::move(cf));
  }
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

}  // namespace

bool Polytope::contains(const QVector& x) const {
  if (static_cast<int>(x.size()) != n) return false;
  for (const Facet& f : facets)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

Polytope convex_hull(std::vector<QVector> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");
  const int n = static_cast<int>(points[0].size());
  if (n < 1) throw std::invalid_argument("convex_hull: zero-dimensional ambient space");
  for (const QVector& p : points)
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument("convex_hull: points of mixed dimension");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const QVector v0 = points[0];
  QMatrix basis;  // rows: independent differences p − v0 spanning the hull directions
  for (std::size_t i = 1; i < points.size(); ++i) {
    QVector diff(n);
    for (int j = 0; j < n; ++j) diff[j] = points[i][j] - v0[j];
    basis.push_back(std::move(diff));
    if (rank(basis) != static_cast<int>(basis.size())) basis.pop_back();
  }
  const int d = static_cast<int>(basis.size());

  Polytope P;
  P.n = n;
  P.affine_dim = d;

  std::vector<Facet> rows;
  if (d == 0) {
    for (int j = 0; j < n; ++j) {
      QVector e(n, Rational(0));
      e[j] = 1;
      rows.push_back(Facet{e, v0[j]});
      rows.push_back(Facet{negated(e), Rational(-v0[j])});
    }
  } else {
    // Coordinates of every point in the affine basis: solve (columns b_k) y = p − v0.
    QMatrix cols(n, QVector(d));
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < n; ++j) cols[j][k] = basis[k][j];
    std::vector<QVector> ys;
    ys.reserve(points.size());
    for (const QVector& p : points) {
      QVector diff(n);
      for (int j = 0; j < n; ++j) diff[j] = p[j] - v0[j];
      std::optional<QVector> y = solve_linear(cols, diff);
      if (!y) throw InternalConsistencyError("geom: point outside its own affine hull");
      ys.push_back(std::move(*y));
    }
    std::vector<Facet> yrows;
    if (d == 1) {
      Rational lo = ys[0][0], hi = ys[0][0];
      for (const QVector& y : ys) {
        lo = std::min(lo, y[0]);
        hi = std::max(hi, y[0]);
      }
      yrows.push_back(Facet{QVector{Rational(1)}, hi});
      yrows.push_back(Facet{QVector{Rational(-1)}, Rational(-lo)});
    } else {
      yrows = hull_rows_fulldim(ys);
    }
    // Lift ⟨g,y⟩ ≤ c back to x-space: any q with Bᵀ-coordinates g works.
    for (Facet& yr : yrows) {
      std::optional<QVector> q = solve_linear(basis, yr.normal);
      if (!q) throw InternalConsistencyError("geom: facet lift failed");
      const Rational off = yr.offset + dot(*q, v0);
      rows.push_back(canonical_row(std::move(*q), off));
    }
    // The affine hull itself, as equality pairs.
    for (QVector& w : nullspace(basis)) {
      const Rational cw = dot(w, v0);
      rows.push_back(canonical_row(negated(w), Rational(-cw)));
      rows.push_back(canonical_row(std::move(w), cw));
    }
  }
  std::sort(rows.begin(), rows.end(), row_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  P.facets = std::move(rows);

  for (const QVector& p : points) {
    QMatrix tight;
    for (const Facet& f : P.facets) {
      const Rational val = dot(f.normal, p);
      if (val > f.offset)
        throw InternalConsistencyError("geom: input point violates a hull facet");
      if (val == f.offset) tight.push_back(f.normal);
    }
    if (rank(std::move(tight)) == n) P.vertices.push_back(p);
  }
  return P;
}

Polytope newton_polytope(const PolynomialMap& f) {
  std::vector<QVector> pts;
  for (const Monomial& m : f.support()) {
    QVector p(m.exponents.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = m.exponents[j];
    pts.push_back(std::move(p));
  }
  return convex_hull(std::move(pts));
}

Polytope downward_closure(const Polytope& P) {
  for (const QVector& v : P.vertices)
    for (const Rational& c : v)
      if (c < 0)
        throw std::invalid_argument("downward_closure: vertex with a negative coordinate");
  std::vector<QVector> cands;
  for (const QVector& v : P.vertices) {
    for (unsigned mask = 0; mask < (1u << P.n); ++mask) {
      QVector w = v;
      for (int j = 0; j < P.n; ++j)
        if (mask & (1u << j)) w[j] = 0;
      cands.push_back(std::move(w));
    }
  }
  return convex_hull(std::move(cands));
}

std::optional<DiagonalPoint> diagonal_farthest(const Polytope& P) {
  // (t,…,t) ∈ P is one inequality in t per row; intersect with t ≥ 0.
  Rational lo = 0;
  bool has_hi = false;
  Rational hi;
  for (const Facet& f : P.facets) {
    Rational s = 0;
    for (const Rational& q : f.normal) s += q;
    if (s > 0) {
      const Rational b = f.offset / s;
      if (!has_hi || b < hi) hi = b;
      has_hi = true;
    } else if (s < 0) {
      lo = std::max(lo, Rational(f.offset / s));
    } else if (f.offset < 0) {
      return std::nullopt;
    }
  }
  // A bounded polytope admits no upward-unbounded diagonal: no upper-bound row
  // means the feasible t-set is empty.
  if (!has_hi || hi < lo) return std::nullopt;
  DiagonalPoint D;
  D.d_value = hi;
  D.point.assign(P.n, hi);
  D.containing_face = smallest_face_at(P, D.point);
  return D;
}

Face smallest_face_at(const Polytope& P, const QVector& x) {
  if (static_cast<int>(x.size()) != P.n)
    throw std::invalid_argument("smallest_face_at: dimension mismatch");
  if (!P.contains(x)) throw std::invalid_argument("smallest_face_at: point not in polytope");
  Face F;
  for (std::size_t i = 0; i < P.facets.size(); ++i)
    if (dot(P.facets[i].normal, x) == P.facets[i].offset)
      F.tight_facets.push_back(static_cast<int>(i));
  for (const QVector& v : P.vertices) {
    bool on = true;
    for (int i : F.tight_facets)
      on = on && dot(P.facets[i].normal, v) == P.facets[i].offset;
    if (on) F.vertices.push_back(v);
  }
  F.dim = affine_rank(F.vertices);
  return F;
}

std::vector<Face> faces_all(const Polytope& P) {
  const int m = static_cast<int>(P.facets.size());
  const int V = static_cast<int>(P.vertices.size());
  std::vector<std::vector<int>> row_sets(m);
  for (int i = 0; i < m; ++i)
    for (int v = 0; v < V; ++v)
      if (dot(P.facets[i].normal, P.vertices[v]) == P.facets[i].offset)
        row_sets[i].push_back(v);

  // Every face is an intersection of facet-faces, so closing the full vertex
  // set against the per-row sets reaches all of them.
  std::set<std::vector<int>> sets;
  std::vector<std::vector<int>> work;
  std::vector<int> all(V);
  std::iota(all.begin(), all.end(), 0);
  sets.insert(all);
  work.push_back(all);
  while (!work.empty()) {
    const std::vector<int> cur = std::move(work.back());
    work.pop_back();
    for (int i = 0; i < m; ++i) {
      std::vector<int> inter;
      std::set_intersection(cur.begin(), cur.end(), row_sets[i].begin(), row_sets[i].end(),
                            std::back_inserter(inter));
      if (inter.empty()) continue;
      if (sets.insert(inter).second) work.push_back(std::move(inter));
    }
  }

  std::vector<Face> faces;
  for (const std::vector<int>& ids : sets) {
    Face F;
    for (int id : ids) F.vertices.push_back(P.vertices[id]);
    for (int i = 0; i < m; ++i) {
      bool tight = true;
      for (int id : ids)
        tight = tight && dot(P.facets[i].normal, P.vertices[id]) == P.facets[i].offset;
      if (tight) F.tight_facets.push_back(i);
    }
    F.dim = affine_rank(F.vertices);
    faces.push_back(std::move(F));
  }
  std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
  });
  return faces;
}

ConeClass cone_membership(const std::vector<QVector>& V, const QVector& v) {
  if (V.empty()) throw std::invalid_argument("cone_membership: empty generator set");
  const int n = static_cast<int>(V[0].size());
  if (static_cast<int>(v.size()) != n)
    throw std::invalid_argument("cone_membership: dimension mismatch");

  // Bounded stand-in for the cone: hull of 0 and the scaled generators. Its
  // rows through the origin are exactly the cone's facets (every other row is
  // slack at the origin and irrelevant to small multiples).
  std::vector<QVector> pts;
  pts.emplace_back(n, Rational(0));
  for (const QVector& a : V) {
    if (static_cast<int>(a.size()) != n)
      throw std::invalid_argument("cone_membership: dimension mismatch");
    Rational s = 0;
    for (const Rational& c : a) s += abs(c);
    if (s == 0) continue;
    QVector p(n);
    for (int j = 0; j < n; ++j) p[j] = a[j] / s;
    pts.push_back(std::move(p));
  }
  const Polytope P = convex_hull(std::move(pts));

  bool strict = true;
  for (const Facet& f : P.facets) {
    if (f.offset != 0) continue;
    const Rational val = dot(f.normal, v);
    if (val > 0) return ConeClass::Outside;
    if (val == 0) strict = false;
  }
  if (P.affine_dim == n && strict) return ConeClass::Interior;
  return ConeClass::Boundary;
}

bool cone_meets_open_orthant(const std::vector<QVector>& V) {
  if (V.empty()) throw std::invalid_argument("cone_meets_open_orthant: empty generator set");
  const int n = static_cast<int>(V[0].size());
  const int s = static_cast<int>(V.size());
  for (const QVector& a : V) {
    if (static_cast<int>(a.size()) != n)
      throw std::invalid_argument("cone_meets_open_orthant: dimension mismatch");
    for (const Rational& c : a)
      if (c < 0)
        throw std::invalid_argument("cone_meets_open_orthant: generator outside the orthant");
  }
  // max t s.t. Σ λ_i α_i ≥ (t,…,t), Σ λ_i = 1, λ ≥ 0, t free.
  LinearProgram lp;
  lp.objective.assign(s + 1, Rational(0));
  lp.objective[s] = 1;
  for (int j = 0; j < n; ++j) {
    Constraint row;
    row.a.assign(s + 1, Rational(0));
    for (int i = 0; i < s; ++i) row.a[i] = V[i][j];
    row.a[s] = -1;
    row.relation = Relation::GreaterEq;
    row.b = 0;
    lp.constraints.push_back(std::move(row));
  }
  Constraint sum;
  sum.a.assign(s + 1, Rational(1));
  sum.a[s] = 0;
  sum.relation = Relation::Equal;
  sum.b = 1;
  lp.constraints.push_back(std::move(sum));
  for (int i = 0; i < s; ++i) lp.nonneg_vars.push_back(i);
  const LPSolution sol = solve(lp);
  if (sol.status != LPStatus::Optimal)
    throw InternalConsistencyError("geom: orthant probe LP must be bounded and feasible");
  return sol.value > 0;
}

HalfspaceSystem polar_hrep(const Polytope& P) {
  HalfspaceSystem H;
  H.n = P.n;
  for (const QVector& v : P.vertices) H.rows.push_back(Facet{v, Rational(1)});
  return H;
}

Polytope polar_hull(const HalfspaceSystem& H) {
  if (H.rows.empty()) throw std::invalid_argument("polar_hull: empty system");
  std::vector<QVector> pts;
  pts.emplace_back(H.n, Rational(0));
  for (const Facet& f : H.rows) {
    if (f.offset <= 0)
      throw std::invalid_argument("polar_hull: row not normalizable to offset 1");
    QVector p(H.n);
    for (int j = 0; j < H.n; ++j) p[j] = f.normal[j] / f.offset;
    pts.push_back(std::move(p));
  }
  return convex_hull(std::move(pts));
}

Polytope polar_polytope(const Polytope& P) {
  if (P.affine_dim != P.n)
    throw std::invalid_argument("polar_polytope: polytope must be full-dimensional");
  std::vector<QVector> pts;
  for (const Facet& f : P.facets) {
    if (f.offset <= 0)
      throw std::invalid_argument("polar_polytope: origin must be strictly interior");
    QVector p(P.n);
    for (int j = 0; j < P.n; ++j) p[j] = f.normal[j] / f.offset;
    pts.push_back(std::move(p));
  }
  return convex_hull(std::move(pts));
}

}  // namespace polyasym
