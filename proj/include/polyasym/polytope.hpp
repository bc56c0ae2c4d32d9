#pragma once

#include "polyasym/polynomial.hpp"
#include "polyasym/rational.hpp"

#include <optional>
#include <vector>

namespace polyasym {

/// One H-rep row: ⟨normal, x⟩ ≤ offset. Normals are stored primitive-integer.
struct Facet {
  QVector normal;
  Rational offset;
  bool operator==(const Facet& o) const = default;
};

/// Bounded rational polytope carrying both representations in canonical form:
/// vertices lex-sorted and minimal; facet rows primitive, lex-sorted,
/// irredundant. A polytope of affine dimension < n pins its affine hull with
/// paired rows (w, c), (−w, −c).
struct Polytope {
  int n = 0;
  std::vector<QVector> vertices;
  std::vector<Facet> facets;
  int affine_dim = -1;

  bool contains(const QVector& x) const;
  bool operator==(const Polytope& o) const = default;
};

/// Face = parent ∩ {row j tight : j ∈ tight_facets}; indices refer to the
/// parent polytope the face was derived from.
struct Face {
  std::vector<int> tight_facets;
  std::vector<QVector> vertices;  // parent vertices lying on the face
  int dim = -1;
};

/// Farthest point (d, …, d) of the nonnegative diagonal inside a polytope.
struct DiagonalPoint {
  Rational d_value;
  QVector point;
  Face containing_face;  // smallest face with the point in its relative interior
};

enum class ConeClass { Interior, Boundary, Outside };

/// Minimal V-rep + irredundant H-rep of conv(points). Exact, dimension-agnostic
/// (beneath-beyond in affine-hull coordinates); designed for n ≤ 8, a few
/// hundred points.
Polytope convex_hull(std::vector<QVector> points);

/// conv(∪_i supp(f_i)).
Polytope newton_polytope(const PolynomialMap& f);

/// {α ≥ 0 : α ≤ β componentwise for some β ∈ P}, built as the hull of every
/// vertex with every coordinate subset zeroed. P must lie in the nonnegative
/// orthant.
Polytope downward_closure(const Polytope& P);

/// Maximal d ≥ 0 with (d,…,d) ∈ P, solved exactly on the H-rep; nullopt if the
/// nonnegative diagonal misses P.
std::optional<DiagonalPoint> diagonal_farthest(const Polytope& P);

/// The face cut out by every facet row tight at x; x lies in its relative
/// interior. Throws if x ∉ P.
Face smallest_face_at(const Polytope& P, const QVector& x);

/// Every nonempty face, vertices and P itself included, sorted by (dim, vertex
/// set).
std::vector<Face> faces_all(const Polytope& P);

/// Classify v against cone(V) = {Σ λ_i α_i : λ ≥ 0}. Interior demands a
/// full-dimensional cone and strict inequality on every cone facet.
ConeClass cone_membership(const std::vector<QVector>& V, const QVector& v);

/// True iff some convex combination of V (⊂ nonnegative orthant) is strictly
/// positive in every coordinate; decided by an exact LP.
bool cone_meets_open_orthant(const std::vector<QVector>& V);

/// Finite intersection of half-spaces (no boundedness implied).
struct HalfspaceSystem {
  int n = 0;
  std::vector<Facet> rows;
};

/// {y : ⟨v, y⟩ ≤ 1 for every vertex v of P} — the polar of a bounded P as an
/// H-rep, valid even when the polar is unbounded.
HalfspaceSystem polar_hrep(const Polytope& P);

/// Polar of {x : rows} when every row can be normalized to ⟨x, α⟩ ≤ 1:
/// conv({0} ∪ {normal/offset}). Rows with offset ≤ 0 are rejected.
Polytope polar_hull(const HalfspaceSystem& H);

/// Direct polar of a full-dimensional P with the origin strictly inside:
/// conv{normal_j / offset_j}. Otherwise the polar is unbounded — use
/// polar_hrep.
Polytope polar_polytope(const Polytope& P);

}  // namespace polyasym
