#pragma once

#include "polyasym/polynomial.hpp"
#include "polyasym/polytope.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace polyasym {

/// A face Δ of the Newton polytope together with the face parts
/// f_{i,Δ} = Σ_{α ∈ Δ} a_{i,α} x^α of every component.
struct FaceSystem {
  Face face;
  std::vector<Polynomial> restricted;
};

/// Keep exactly the terms whose exponent lies on the face (tested against the
/// face's tight hyperplanes in gamma, the Newton polytope of f).
FaceSystem face_restrict(const PolynomialMap& f, const Polytope& gamma, const Face& face);

/// F = Σ f_i², expanded exactly. Asserts that the Newton polytope doubles:
/// V(F) = 2·V(f).
Polynomial square_sum_lift(const PolynomialMap& f);

/// Exact check that the face part of F = Σ f_i² on the doubled face 2Δ equals
/// Σ (f_{i,Δ})² as polynomials.
bool square_sum_face_identity(const PolynomialMap& f, const Polytope& gamma, const Face& face);

enum class MGStatus { Passed, ViolationSuspected, ViolationCertified };

/// One face's verdict on the no-common-zero condition over (ℝ∖{0})ⁿ.
/// ViolationCertified carries either an exact rational common zero (witness)
/// or, for single-component maps, an exact sign change inside one orthant
/// (witness empty). Passed means only: no zero found within the search budget.
struct MGVerdict {
  MGStatus status = MGStatus::Passed;
  Face face;
  std::optional<QVector> witness;
  std::optional<double> residual;  // smallest max_i|f_{i,Δ}| found, scale-relative
  long samples_used = 0;
};

struct MGBudget {
  int starts = 24;          // descents per (face, sign-orthant)
  int iterations = 80;      // pattern-search sweeps per descent
  double t_range = 12.0;    // search box [−T,T]ⁿ in log coordinates
  double threshold = 1e-9;  // scale-relative zero threshold
  std::uint64_t seed = 0;
  int threads = 1;          // never affects results, only scheduling
};

/// Search every face of Γ(f) (Γ(f) itself included), per sign-orthant, under
/// x_j = s_j·exp(t_j); minimize max_i|f_{i,Δ}| relative to the face's monomial
/// scale by multi-start pattern descent, then try exact certification of
/// near-zeros. Verdicts are returned worst face first.
std::vector<MGVerdict> check_mg(const PolynomialMap& f, const MGBudget& budget);

/// Empirical two-sided constants: over samples x with ‖x‖ > rho (log-uniform
/// magnitudes per orthant), c1_hat·N(x) ≤ max_i|f_i(x)| ≤ c2_hat·N(x) where
/// N(x) = Σ_{α ∈ V(f)} |x^α|. The reported bounds pad the observed extremes
/// slightly so fresh samples stay bracketed.
struct MGEstimate {
  double c1_hat = 0;
  double c2_hat = 0;
  double rho = 0;
  long sample_count = 0;
};
MGEstimate estimate_constants(const PolynomialMap& f, long sample_count, double rho,
                              std::uint64_t seed);

struct PerturbationReport {
  int trials = 0;
  int unfalsified = 0;      // trials whose perturbed map still passed every face
  double epsilon_used = 0;  // shift bound actually applied
  double recipe_epsilon = 0;            // ĉ₁ / (2η)
  long eta = 0;                         // integer points of 2Γ(f)
  std::optional<double> smallest_suspect_shift;  // min over falsified trials of max|δ|
};

/// Shift every coefficient by an exact dyadic δ ∈ [−ε, ε] (vertex coefficients
/// provably kept nonzero, so Γ is preserved) and re-run check_mg per trial.
/// epsilon ≤ 0 selects the recipe value ĉ₁/(2η). Requires the base map to pass
/// check_mg; refuses otherwise.
PerturbationReport perturbation_probe(const PolynomialMap& f, int trials, double epsilon,
                                      const MGBudget& budget);

}  // namespace polyasym
