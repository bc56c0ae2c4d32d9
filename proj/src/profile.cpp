#include "polyasym/profile.hpp"

#include "polyasym/errors.hpp"

#include <algorithm>

namespace polyasym {

namespace {

// Exponent data from the farthest diagonal point of G; requires the diagonal
// to reach a strictly positive point (guaranteed once finiteness holds).
void fill_from_diagonal(const Polytope& G, VolumePart& out) {
  const std::optional<DiagonalPoint> D = diagonal_farthest(G);
  if (!D || D->d_value <= 0)
    throw InternalConsistencyError("profile: finiteness holds but the diagonal is degenerate");
  out.theta = Rational(1) / D->d_value;
  out.k = D->containing_face.dim;
  out.log_exp = G.n - *out.k - 1;
}

std::vector<QVector> diagonal_face_vertices(const Polytope& G) {
  const std::optional<DiagonalPoint> D = diagonal_farthest(G);
  if (!D) throw InternalConsistencyError("profile: diagonal vanished on re-query");
  return D->containing_face.vertices;  // lex-sorted subset of G's vertices
}

}  // namespace

VolumePart volume_profile(const PolynomialMap& f) {
  const Polytope G = newton_polytope(f);
  VolumePart out;
  const QVector ones(G.n, Rational(1));
  out.finite = cone_membership(G.vertices, ones) == ConeClass::Interior;
  if (out.finite) fill_from_diagonal(G, out);
  return out;
}

VolumePart lattice_profile(const PolynomialMap& f) {
  const Polytope G = newton_polytope(f);
  VolumePart out;
  out.finite = cone_meets_open_orthant(G.vertices);
  if (out.finite) fill_from_diagonal(downward_closure(G), out);
  return out;
}

AsymptoticProfile analyze_profile(const PolynomialMap& f) {
  AsymptoticProfile p;
  p.n = f.dimension();
  const VolumePart vol = volume_profile(f);
  p.volume_finite = vol.finite;
  p.theta = vol.theta;
  p.k = vol.k;
  p.log_exp_volume = vol.log_exp;
  const VolumePart lat = lattice_profile(f);
  p.lattice_finite = lat.finite;
  p.theta_prime = lat.theta;
  p.k_prime = lat.k;
  p.log_exp_lattice = lat.log_exp;

  if (p.volume_finite && p.lattice_finite) {
    const Polytope G = newton_polytope(f);
    p.faces_equal =
        diagonal_face_vertices(G) == diagonal_face_vertices(downward_closure(G));
    if (*p.theta_prime > *p.theta)
      throw InternalConsistencyError("profile: theta' exceeds theta");
    if (p.faces_equal && (*p.theta != *p.theta_prime || *p.k != *p.k_prime))
      throw InternalConsistencyError("profile: equal faces but unequal exponents");
  }
  return p;
}

LinearProgram sublevel_lp(const Polytope& G, bool nonneg) {
  LinearProgram lp;
  lp.objective.assign(G.n, Rational(1));
  for (const QVector& v : G.vertices)
    lp.constraints.push_back({v, Relation::LessEq, Rational(1)});
  if (nonneg)
    for (int j = 0; j < G.n; ++j) lp.nonneg_vars.push_back(j);
  return lp;
}

LpCrossCheck lp_cross_check(const PolynomialMap& f) {
  LpCrossCheck report;
  const Polytope G = newton_polytope(f);
  const VolumePart vol = volume_profile(f);
  const VolumePart lat = lattice_profile(f);

  const auto run_side = [&](const VolumePart& part, bool nonneg) {
    LinearProgram lp = sublevel_lp(G, nonneg);
    LPSolution sol = solve(lp);
    if (sol.status != LPStatus::Optimal)
      throw InternalConsistencyError("profile: finite side but the LP is not optimal");
    RouteComparison cmp;
    cmp.geometric_value = *part.theta;
    cmp.geometric_dim = *part.log_exp;
    cmp.lp_value = sol.value;
    cmp.lp_dim = optimal_face_dimension(lp, sol);
    if (cmp.lp_value != cmp.geometric_value)
      throw InternalConsistencyError("profile: LP value disagrees with the diagonal exponent");
    if (cmp.lp_dim != cmp.geometric_dim)
      throw InternalConsistencyError("profile: LP face dimension disagrees with n-k-1");
    return cmp;
  };
  if (vol.finite) report.volume = run_side(vol, false);
  if (lat.finite) report.lattice = run_side(lat, true);
  return report;
}

bool compare_profiles(const AsymptoticProfile& p) {
  if (!p.volume_finite || !p.lattice_finite) return false;
  // Equal faces force equal exponents.  The converse is false: the closure can
  // extend the diagonal face within its affine hull without moving the
  // diagonal point (Γ = conv{(2,1),(2,4)} has θ = θ′ = 1/2, k = k′ = 1, yet
  // the closure's face picks up the vertex (2,0)).
  if (p.faces_equal && !(*p.theta == *p.theta_prime && *p.k == *p.k_prime))
    throw InternalConsistencyError("profile: equal faces but unequal exponents");
  return p.faces_equal;
}

}  // namespace polyasym
