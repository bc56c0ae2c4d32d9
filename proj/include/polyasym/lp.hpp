#pragma once

#include "polyasym/rational.hpp"

#include <vector>

namespace polyasym {

enum class Relation { LessEq, GreaterEq, Equal };
enum class Sense { Maximize, Minimize };

struct Constraint {
  QVector a;
  Relation relation;
  Rational b;
};

/// Optimize ⟨c,x⟩ subject to the constraints; variables listed in nonneg_vars
/// carry an explicit x_j ≥ 0 bound, all others are free.
struct LinearProgram {
  Sense sense = Sense::Maximize;
  QVector objective;
  std::vector<Constraint> constraints;
  std::vector<int> nonneg_vars;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  QVector point;
  int optimal_face_dim = -1;   // filled by optimal_face_dimension
  std::vector<int> tight_set;  // constraints tight on the whole optimal face

  /// One multiplier per constraint, proving the bound. For Maximize:
  /// y_i ≥ 0 on ≤ rows, y_i ≤ 0 on ≥ rows, free on = rows;
  /// Σ y_i a_ij ≥ c_j for nonneg vars, = c_j for free vars; Σ y_i b_i = value.
  /// For Minimize the row signs and the variable inequality are reversed.
  QVector dual;

  /// When Unbounded: feasible direction with ⟨c,ray⟩ > 0 (< 0 for Minimize).
  QVector ray;
};

/// Exact two-phase simplex with Bland's rule. Certificates (dual or ray) are
/// re-verified by direct arithmetic before returning; a failure throws
/// InternalConsistencyError.
LPSolution solve(const LinearProgram& lp);

/// Dimension of {x feasible : ⟨c,x⟩ = value}. A constraint (or sign bound) is
/// face-tight iff its maximal slack over that set is 0 — one auxiliary LP
/// each — and the dimension is n − rank(face-tight normals ∪ {c}). Fills
/// sol.optimal_face_dim and sol.tight_set. Requires sol.status == Optimal.
int optimal_face_dimension(const LinearProgram& lp, LPSolution& sol);

/// Dual of the two supported primal shapes, both "maximize ⟨c,x⟩, Ax ≤ b":
/// with all variables free   → minimize ⟨b,u⟩, Aᵀu = c, u ≥ 0;
/// with all variables ≥ 0    → minimize ⟨b,u⟩, Aᵀu ≥ c, u ≥ 0.
/// Anything else is rejected.
LinearProgram dual_of(const LinearProgram& lp);

}  // namespace polyasym
