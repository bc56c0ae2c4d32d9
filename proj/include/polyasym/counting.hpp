#pragma once

#include "polyasym/polynomial.hpp"
#include "polyasym/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyasym {

enum class SweepKind { LatticeCount, Volume };
enum class VolumeMethod { Grid, MonteCarlo };

// The expanding-box search exhausted max_box with members still appearing in
// the boundary shell; partial_count is the (possibly incomplete) count inside
// the largest box examined.
struct ShellNonTermination : std::runtime_error {
  ShellNonTermination(const std::string& msg, Integer partial, long box)
      : std::runtime_error(msg), partial_count(std::move(partial)), box_reached(box) {}
  Integer partial_count;
  long box_reached = 0;
};

// The region kept reaching the boundary shell of every candidate box up to the
// cap (tentacled shapes), or the requested grid is beyond desk scale.
struct UnsupportedShapeError : std::runtime_error {
  UnsupportedShapeError(const std::string& msg, long box)
      : std::runtime_error(msg), box_reached(box) {}
  long box_reached = 0;
};

// Exact number of integer points with every coordinate nonzero satisfying
// max_i |f_i(x)| <= r, found by doubling boxes [-B,B]^n until the boundary
// shell of thickness max(1, B/8) holds no members.  Evaluation is exact
// (scaled integer arithmetic; r enters as an exact dyadic).  Refuses maps
// whose count is infinite.
Integer count_lattice(const PolynomialMap& f, double r, long max_box = 4000000, int threads = 1);

// Same search, reported per sign orthant; index bit j set means x_j < 0.
// The total is count_lattice.
std::vector<Integer> count_lattice_by_orthant(const PolynomialMap& f, double r,
                                              long max_box = 4000000, int threads = 1);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Volume of {x : max_i |f_i(x)| <= r} over a bounding box grown by the same
// shell test as count_lattice, with the shell sampled at grid nodes.  Grid:
// midpoint rule at `resolution_or_samples` cells per axis, std_error a
// boundary-cell heuristic.  Monte Carlo: that many uniform samples over the
// box, binomial std_error.  Deterministic for a fixed seed at any thread
// count.  Refuses maps whose volume is infinite.
VolumeEstimate estimate_volume(const PolynomialMap& f, double r, VolumeMethod method,
                               long resolution_or_samples, std::uint64_t seed, int threads = 1,
                               long max_box = 16384);

struct SweepBudget {
  long max_box = 4000000;      // count_lattice box cap
  VolumeMethod method = VolumeMethod::MonteCarlo;
  long grid_resolution = 1024;
  long sample_count = 1000000;
  double max_r = 1e6;          // schedule entries above this are dropped
  int threads = 1;
};

struct SweepResult {
  std::vector<double> r_values;      // increasing, positive
  std::vector<double> measurements;  // counts or volume estimates
  SweepKind kind = SweepKind::LatticeCount;
  std::vector<double> error_bars;    // per-point standard errors (volume only)
};

// The default half-decade schedule 10^2, 10^2.5, ..., 10^6.
std::vector<double> default_schedule();

// Runs count_lattice or estimate_volume over the schedule (entries above
// budget.max_r dropped).  Per-point volume seeds are derived from `seed`, so
// the result is reproducible at any thread count.
SweepResult sweep(const PolynomialMap& f, SweepKind kind, const std::vector<double>& r_schedule,
                  const SweepBudget& budget, std::uint64_t seed);

struct ExponentFit {
  double theta_hat = 0.0;
  double kappa_hat = 0.0;
  bool kappa_was_fixed = false;
  double stderr_theta = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares on log M = theta*log r + kappa*log log r + c over the
// points with r >= e^2 (at least 4 required).  Pass kappa to pin the log
// exponent to a predicted integer; pass nullopt to fit it.
ExponentFit fit_exponents(const SweepResult& s, std::optional<int> kappa);

// CSV serialization: header `r,measurement,stderr`, one row per point,
// decimal notation.
std::string to_csv(const SweepResult& s);

}  // namespace polyasym
