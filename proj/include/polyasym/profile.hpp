#pragma once

#include "polyasym/lp.hpp"
#include "polyasym/polynomial.hpp"
#include "polyasym/polytope.hpp"

#include <optional>

namespace polyasym {

/// The headline answers for one polynomial map: finiteness of the sublevel
/// volume |{x : max|f_i(x)| ≤ r}| and of its nonzero-lattice-point count, and
/// when finite the exact growth exponents — measure ≍ r^θ · ln^{n−k−1} r and
/// count ≍ r^{θ′} · ln^{n−k′−1} r.
struct AsymptoticProfile {
  int n = 0;
  bool volume_finite = false;
  std::optional<Rational> theta;
  std::optional<int> k;  // dimension of the face carrying the diagonal point
  std::optional<int> log_exp_volume;  // n − k − 1
  bool lattice_finite = false;
  std::optional<Rational> theta_prime;
  std::optional<int> k_prime;
  std::optional<int> log_exp_lattice;  // n − k′ − 1
  bool faces_equal = false;  // the two diagonal faces coincide as vertex sets
};

struct VolumePart {
  bool finite = false;
  std::optional<Rational> theta;
  std::optional<int> k;
  std::optional<int> log_exp;
};

/// Volume side: finite iff (1,…,1) lies strictly inside cone(V(f)); exponents
/// from the farthest diagonal point of the Newton polytope.
VolumePart volume_profile(const PolynomialMap& f);

/// Lattice side: finite iff cone(V(f)) meets the open positive orthant;
/// exponents from the farthest diagonal point of the downward closure.
VolumePart lattice_profile(const PolynomialMap& f);

/// Both sides plus the face comparison; asserts θ′ ≤ θ and
/// faces_equal ⇒ (θ = θ′ ∧ k = k′) internally.
AsymptoticProfile analyze_profile(const PolynomialMap& f);

/// One exponent computed by both routes; values must agree exactly.
struct RouteComparison {
  Rational geometric_value;
  int geometric_dim = -1;
  Rational lp_value;
  int lp_dim = -1;
};

struct LpCrossCheck {
  std::optional<RouteComparison> volume;   // present when the volume is finite
  std::optional<RouteComparison> lattice;  // present when the count is finite
};

/// Re-derive each finite exponent by the linear program
///   maximize x_1 + … + x_n subject to ⟨x, α⟩ ≤ 1 for every vertex α of Γ(f)
/// (variables free for the volume side, ≥ 0 for the lattice side); the optimal
/// value must equal θ (θ′) and the optimal-face dimension must equal n−k−1
/// (n−k′−1), exactly. Any mismatch throws InternalConsistencyError.
LpCrossCheck lp_cross_check(const PolynomialMap& f);

/// Returns faces_equal; when both sides are finite, additionally asserts that
/// equal faces force equal exponents. Equal exponents do not force equal
/// faces: the closure may extend the diagonal face within its affine hull
/// without moving the diagonal point. When either side is infinite the
/// comparison is vacuous and reports false.
bool compare_profiles(const AsymptoticProfile& p);

/// The LP ⟨x, α^i⟩ ≤ 1 over the vertices of G, shared by both LP routes.
LinearProgram sublevel_lp(const Polytope& G, bool nonneg);

}  // namespace polyasym
