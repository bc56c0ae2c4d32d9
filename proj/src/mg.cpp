#include "polyasym/mg.hpp"

#include "polyasym/errors.hpp"
#include "polyasym/parallel.hpp"
#include "polyasym/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace polyasym {

namespace {

Monomial monomial_of_point(const QVector& v) {
  Monomial m;
  m.exponents.reserve(v.size());
  for (const Rational& c : v) {
    if (denominator(c) != 1)
      throw InternalConsistencyError("mg: non-integer exponent vertex");
    m.exponents.push_back(numerator(c).convert_to<int>());
  }
  return m;
}

bool on_face(const Polytope& gamma, const Face& face, const Monomial& mono) {
  QVector a(mono.exponents.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = mono.exponents[j];
  for (int idx : face.tight_facets)
    if (dot(gamma.facets[idx].normal, a) != gamma.facets[idx].offset) return false;
  return true;
}

double abs_monomial(const std::vector<double>& x, const Monomial& m) {
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (int e = 0; e < m.exponents[j]; ++e) v *= std::fabs(x[j]);
  return v;
}

// Best rational approximation of v with denominator ≤ max_den, by continued
// fraction convergents.
Rational approx_rational(double v, long max_den) {
  if (v == 0.0) return Rational(0);
  const bool neg = v < 0;
  double x = std::fabs(v);
  Integer hp = 1, kp = 0;  // previous convergent
  Integer h = Integer(std::floor(x)), k = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 40 && frac > 1e-12; ++it) {
    x = 1.0 / frac;
    const double a_d = std::floor(x);
    if (a_d > 9e17) break;
    const Integer a = Integer(a_d);
    const Integer hn = a * h + hp, kn = a * k + kp;
    if (kn > max_den) break;
    hp = h;
    kp = k;
    h = hn;
    k = kn;
    frac = x - a_d;
  }
  Rational r(h, k);
  return neg ? Rational(-r) : r;
}

// The face systems with their precomputed monomial scale (union of supports).
struct PreparedFace {
  FaceSystem sys;
  std::vector<Monomial> scale_support;
};

// Face parts are weighted-homogeneous along any tight hyperplane's normal:
// f_Δ(t^{q_1}x_1, …) = t^{d}·f_Δ(x). Spot-check it numerically; a failure
// means face extraction is broken.
void homogeneity_self_check(const PreparedFace& pf, const Polytope& gamma, const RngStream& st) {
  if (pf.sys.face.tight_facets.empty()) return;
  const Facet& row = gamma.facets[pf.sys.face.tight_facets[0]];
  const int n = gamma.n;
  std::uint64_t ctr = 0;
  for (int rep = 0; rep < 2; ++rep) {
    std::vector<double> x(n), xs(n);
    const double t = st.uniform(ctr++, 1.25, 2.0);
    for (int j = 0; j < n; ++j) {
      x[j] = st.uniform(ctr++, 0.5, 2.0);
      xs[j] = x[j] * std::pow(t, to_double(row.normal[j]));
    }
    const double td = std::pow(t, to_double(row.offset));
    for (const Polynomial& p : pf.sys.restricted) {
      if (p.is_zero()) continue;
      const double lhs = p.evaluate(xs);
      const double rhs = td * p.evaluate(x);
      if (std::fabs(lhs - rhs) > 1e-6 * (1.0 + std::fabs(lhs) + std::fabs(rhs)))
        throw InternalConsistencyError("mg: face part fails its homogeneity identity");
    }
  }
}

struct OrthantOutcome {
  MGStatus status = MGStatus::Passed;
  std::optional<QVector> witness;
  double best_ratio = std::numeric_limits<double>::infinity();
  long samples = 0;
};

bool all_zero_exact(const std::vector<Polynomial>& ps, const QVector& x) {
  for (const Polynomial& p : ps)
    if (p.evaluate(x) != 0) return false;
  return true;
}

OrthantOutcome search_orthant(const PreparedFace& pf, unsigned orthant, const MGBudget& budget,
                              const RngStream& st) {
  const int n = static_cast<int>(pf.sys.restricted[0].dimension());
  const int m = static_cast<int>(pf.sys.restricted.size());
  OrthantOutcome out;
  std::vector<double> sign(n);
  QVector sign_exact(n);
  for (int j = 0; j < n; ++j) {
    const bool negative = (orthant >> j) & 1u;
    sign[j] = negative ? -1.0 : 1.0;
    sign_exact[j] = negative ? -1 : 1;
  }

  // Exact scan of the orthant's unit corner first.
  ++out.samples;
  if (all_zero_exact(pf.sys.restricted, sign_exact)) {
    out.status = MGStatus::ViolationCertified;
    out.witness = sign_exact;
    out.best_ratio = 0.0;
    return out;
  }

  const double T = budget.t_range;
  std::vector<double> x(n);
  const auto at = [&](const std::vector<double>& t) {
    for (int j = 0; j < n; ++j) x[j] = sign[j] * std::exp(t[j]);
  };
  // Sign-change candidates for single-component systems.
  bool have_pos = false, have_neg = false;
  std::vector<double> pos_x, neg_x;
  double pos_val = 0, neg_val = 0;
  const auto ratio = [&](const std::vector<double>& t) {
    at(t);
    ++out.samples;
    double H = 0;
    for (int i = 0; i < m; ++i) {
      const double v = pf.sys.restricted[i].evaluate(x);
      if (m == 1) {
        if (v > 0 && (!have_pos || v > pos_val)) {
          have_pos = true;
          pos_val = v;
          pos_x = x;
        } else if (v < 0 && (!have_neg || v < neg_val)) {
          have_neg = true;
          neg_val = v;
          neg_x = x;
        }
      }
      H = std::max(H, std::fabs(v));
    }
    double S = 0;
    for (const Monomial& mo : pf.scale_support) S += abs_monomial(x, mo);
    return S > 0 ? H / S : std::numeric_limits<double>::infinity();
  };

  double global_best = std::numeric_limits<double>::infinity();
  std::vector<double> global_best_t(n, 0.0);
  std::uint64_t ctr = 0;
  for (int s = 0; s < budget.starts; ++s) {
    std::vector<double> t(n);
    for (int j = 0; j < n; ++j) t[j] = st.uniform(ctr++, -T, T);
    double fbest = ratio(t);
    double step = T / 4.0;
    for (int iter = 0; iter < budget.iterations; ++iter) {
      bool improved = false;
      for (int j = 0; j < n; ++j) {
        for (const double dir : {1.0, -1.0}) {
          const double save = t[j];
          t[j] = std::clamp(save + dir * step, -T, T);
          const double v = ratio(t);
          if (v < fbest) {
            fbest = v;
            improved = true;
          } else {
            t[j] = save;
          }
        }
      }
      if (!improved) {
        step *= 0.5;
        if (step < 1e-13) break;
      }
      if (fbest < budget.threshold * 1e-4) break;
    }
    if (fbest < global_best) {
      global_best = fbest;
      global_best_t = t;
    }
  }
  out.best_ratio = global_best;

  // Near-zero: try to promote to an exact certificate by rounding the
  // minimizer to small-denominator rationals.
  if (global_best < budget.threshold) {
    at(global_best_t);
    const std::vector<double> bx = x;
    for (const long den : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 16L, 24L, 32L, 48L, 64L, 128L, 256L, 1024L}) {
      QVector cand(n);
      bool usable = true;
      for (int j = 0; j < n; ++j) {
        cand[j] = approx_rational(bx[j], den);
        usable = usable && cand[j] != 0;
      }
      if (!usable) continue;
      ++out.samples;
      if (all_zero_exact(pf.sys.restricted, cand)) {
        out.status = MGStatus::ViolationCertified;
        out.witness = std::move(cand);
        out.best_ratio = 0.0;
        return out;
      }
    }
  }
  // Single component: an exact sign change inside the orthant certifies a zero
  // by continuity (the orthant is convex).
  if (m == 1 && have_pos && have_neg) {
    QVector a(n), b(n);
    for (int j = 0; j < n; ++j) {
      a[j] = rational_of_double(pos_x[j]);
      b[j] = rational_of_double(neg_x[j]);
    }
    out.samples += 2;
    const Rational va = pf.sys.restricted[0].evaluate(a);
    const Rational vb = pf.sys.restricted[0].evaluate(b);
    if (va > 0 && vb < 0) {
      out.status = MGStatus::ViolationCertified;
      out.best_ratio = 0.0;
      return out;
    }
  }
  if (global_best < budget.threshold) out.status = MGStatus::ViolationSuspected;
  return out;
}

long integer_points_doubled(const Polytope& gamma) {
  const int n = gamma.n;
  std::vector<long> hi(n, 0);
  for (const QVector& v : gamma.vertices)
    for (int j = 0; j < n; ++j)
      hi[j] = std::max(hi[j], floor_rational(2 * v[j]).convert_to<long>());
  std::vector<long> x(n, 0);
  long count = 0;
  for (;;) {
    QVector half(n);
    for (int j = 0; j < n; ++j) half[j] = Rational(x[j], 2);
    if (gamma.contains(half)) ++count;
    int j = 0;
    while (j < n && ++x[j] > hi[j]) {
      x[j] = 0;
      ++j;
    }
    if (j == n) break;
  }
  return count;
}

}  // namespace

FaceSystem face_restrict(const PolynomialMap& f, const Polytope& gamma, const Face& face) {
  if (gamma.n != f.dimension())
    throw std::invalid_argument("face_restrict: polytope/map dimension mismatch");
  for (int idx : face.tight_facets)
    if (idx < 0 || idx >= static_cast<int>(gamma.facets.size()))
      throw std::invalid_argument("face_restrict: face does not belong to the polytope");
  for (const QVector& v : face.vertices)
    if (!std::binary_search(gamma.vertices.begin(), gamma.vertices.end(), v))
      throw std::invalid_argument("face_restrict: face vertex is not a polytope vertex");
  FaceSystem sys;
  sys.face = face;
  for (const Polynomial& p : f.components()) {
    Polynomial r(f.dimension());
    for (const auto& [mono, coeff] : p.terms())
      if (on_face(gamma, face, mono)) r.add_term(mono, coeff);
    sys.restricted.push_back(std::move(r));
  }
  return sys;
}

Polynomial square_sum_lift(const PolynomialMap& f) {
  Polynomial F(f.dimension());
  for (const Polynomial& p : f.components()) F = F + p * p;
  // The Newton polytope must double exactly: V(F) = 2·V(f).
  const Polytope gamma = newton_polytope(f);
  const Polytope gammaF = newton_polytope(PolynomialMap({F}));
  std::vector<QVector> doubled;
  for (const QVector& v : gamma.vertices) {
    QVector w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = 2 * v[j];
    doubled.push_back(std::move(w));
  }
  std::sort(doubled.begin(), doubled.end());
  if (doubled != gammaF.vertices)
    throw InternalConsistencyError("mg: squared sum failed to double the Newton polytope");
  return F;
}

bool square_sum_face_identity(const PolynomialMap& f, const Polytope& gamma, const Face& face) {
  const FaceSystem sys = face_restrict(f, gamma, face);
  Polynomial rhs(f.dimension());
  for (const Polynomial& r : sys.restricted) rhs = rhs + r * r;
  const Polynomial F = square_sum_lift(f);
  // The doubled face 2Δ of Γ(F): β lies on it iff β/2 lies on Δ.
  Polynomial lhs(f.dimension());
  for (const auto& [mono, coeff] : F.terms()) {
    Monomial half;
    half.exponents.resize(mono.exponents.size());
    bool integral = true;
    for (std::size_t j = 0; j < half.exponents.size(); ++j) {
      integral = integral && mono.exponents[j] % 2 == 0;
      half.exponents[j] = mono.exponents[j] / 2;
    }
    QVector hv(mono.exponents.size());
    for (std::size_t j = 0; j < hv.size(); ++j) hv[j] = Rational(mono.exponents[j], 2);
    bool on = true;
    for (int idx : face.tight_facets)
      on = on && dot(gamma.facets[idx].normal, hv) == gamma.facets[idx].offset;
    (void)integral;
    if (on) lhs.add_term(mono, coeff);
  }
  return lhs == rhs;
}

std::vector<MGVerdict> check_mg(const PolynomialMap& f, const MGBudget& budget) {
  if (budget.starts < 1 || budget.iterations < 1 || !(budget.t_range > 0) ||
      !(budget.threshold > 0))
    throw std::invalid_argument("check_mg: malformed budget");
  const int n = f.dimension();
  const Polytope gamma = newton_polytope(f);
  const std::vector<Face> faces = faces_all(gamma);

  std::vector<PreparedFace> prepared;
  prepared.reserve(faces.size());
  for (const Face& face : faces) {
    PreparedFace pf;
    pf.sys = face_restrict(f, gamma, face);
    std::map<Monomial, bool> seen;
    for (const Polynomial& p : pf.sys.restricted)
      for (const auto& [mono, coeff] : p.terms()) seen.emplace(mono, true);
    for (const auto& [mono, b] : seen) pf.scale_support.push_back(mono);
    prepared.push_back(std::move(pf));
  }
  for (std::size_t fi = 0; fi < prepared.size(); ++fi)
    homogeneity_self_check(prepared[fi], gamma,
                           derive_stream(budget.seed, (1ull << 32) + fi));

  const unsigned norths = 1u << n;
  const int items = static_cast<int>(prepared.size() * norths);
  std::vector<OrthantOutcome> outcomes(items);
  parallel_for(items, budget.threads, [&](int it) {
    outcomes[it] = search_orthant(prepared[it / norths], it % norths, budget,
                                  derive_stream(budget.seed, static_cast<std::uint64_t>(it)));
  });

  std::vector<MGVerdict> verdicts;
  for (std::size_t fi = 0; fi < prepared.size(); ++fi) {
    MGVerdict v;
    v.face = prepared[fi].sys.face;
    double best = std::numeric_limits<double>::infinity();
    for (unsigned o = 0; o < norths; ++o) {
      const OrthantOutcome& oc = outcomes[fi * norths + o];
      v.samples_used += oc.samples;
      best = std::min(best, oc.best_ratio);
      if (oc.status == MGStatus::ViolationCertified && v.status != MGStatus::ViolationCertified) {
        v.status = MGStatus::ViolationCertified;
        v.witness = oc.witness;
      } else if (oc.status == MGStatus::ViolationSuspected && v.status == MGStatus::Passed) {
        v.status = MGStatus::ViolationSuspected;
      }
    }
    v.residual = v.status == MGStatus::ViolationCertified ? 0.0 : best;
    verdicts.push_back(std::move(v));
  }
  std::sort(verdicts.begin(), verdicts.end(), [](const MGVerdict& a, const MGVerdict& b) {
    if (a.status != b.status) return static_cast<int>(a.status) > static_cast<int>(b.status);
    const double ra = a.residual.value_or(0.0), rb = b.residual.value_or(0.0);
    if (ra != rb) return ra < rb;
    if (a.face.dim != b.face.dim) return a.face.dim < b.face.dim;
    return a.face.vertices < b.face.vertices;
  });
  return verdicts;
}

MGEstimate estimate_constants(const PolynomialMap& f, long sample_count, double rho,
                              std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("estimate_constants: need samples");
  if (!(rho >= 0) || !std::isfinite(rho))
    throw std::invalid_argument("estimate_constants: cutoff radius must be nonnegative");
  const int n = f.dimension();
  const Polytope gamma = newton_polytope(f);
  std::vector<Monomial> vertex_monomials;
  for (const QVector& v : gamma.vertices) vertex_monomials.push_back(monomial_of_point(v));

  const unsigned norths = 1u << n;
  double c1 = std::numeric_limits<double>::infinity(), c2 = 0.0;
  for (long i = 0; i < sample_count; ++i) {
    const unsigned o = static_cast<unsigned>(i) % norths;
    const RngStream st = derive_stream(seed, static_cast<std::uint64_t>(i));
    std::uint64_t ctr = 0;
    std::vector<double> x(n);
    bool ok = false;
    for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
      double norm2 = 0;
      for (int j = 0; j < n; ++j) {
        const double u = st.uniform(ctr++, -3.0, 14.0);
        x[j] = (((o >> j) & 1u) ? -1.0 : 1.0) * std::exp(u);
        norm2 += x[j] * x[j];
      }
      if (!(norm2 > rho * rho)) continue;
      double N = 0;
      for (const Monomial& mo : vertex_monomials) N += abs_monomial(x, mo);
      if (!(N > 0) || !std::isfinite(N)) continue;
      double H = 0;
      for (const Polynomial& p : f.components()) H = std::max(H, std::fabs(p.evaluate(x)));
      if (!std::isfinite(H)) continue;
      const double r = H / N;
      c1 = std::min(c1, r);
      c2 = std::max(c2, r);
      ok = true;
    }
    if (!ok) throw InternalConsistencyError("mg: sampling failed to produce usable points");
  }
  MGEstimate est;
  if (c1 == c2) {
    // Constant ratio (e.g. a map equal to its own vertex-monomial scale):
    // report it exactly.
    est.c1_hat = c1;
    est.c2_hat = c2;
  } else {
    // Pad the observed extremes by 1% so the bracket survives fresh hold-out
    // draws from the same region.
    est.c1_hat = c1 * 0.99;
    est.c2_hat = c2 * 1.01;
  }
  est.rho = rho;
  est.sample_count = sample_count;
  return est;
}

PerturbationReport perturbation_probe(const PolynomialMap& f, int trials, double epsilon,
                                      const MGBudget& budget) {
  if (trials < 1) throw std::invalid_argument("perturbation_probe: need trials");
  const std::vector<MGVerdict> base = check_mg(f, budget);
  for (const MGVerdict& v : base)
    if (v.status != MGStatus::Passed)
      throw std::invalid_argument("perturbation_probe: base map does not pass the face condition");

  const Polytope gamma = newton_polytope(f);
  // Head-room: the largest shift that provably keeps every vertex monomial
  // present in some component.
  Rational head;
  bool head_set = false;
  for (const QVector& v : gamma.vertices) {
    const Monomial mono = monomial_of_point(v);
    Rational biggest = 0;
    for (const Polynomial& p : f.components()) {
      const auto it = p.terms().find(mono);
      if (it != p.terms().end()) biggest = std::max(biggest, Rational(abs(it->second)));
    }
    if (biggest == 0)
      throw InternalConsistencyError("mg: vertex monomial missing from every component");
    if (!head_set || biggest < head) {
      head = biggest;
      head_set = true;
    }
  }

  PerturbationReport rep;
  rep.trials = trials;
  rep.eta = integer_points_doubled(gamma);
  const MGEstimate est =
      estimate_constants(f, 2000, 1.0, derive_stream(budget.seed, (1ull << 48) + 0xE5).key);
  rep.recipe_epsilon = est.c1_hat / (2.0 * static_cast<double>(rep.eta));
  const double eps = epsilon > 0 ? epsilon : rep.recipe_epsilon;
  if (!(eps > 0)) throw std::invalid_argument("perturbation_probe: nonpositive shift bound");
  if (rational_of_double(eps) >= head)
    throw std::invalid_argument(
        "perturbation_probe: shift bound large enough to erase a vertex coefficient");
  rep.epsilon_used = eps;

  for (int trial = 0; trial < trials; ++trial) {
    const RngStream st = derive_stream(budget.seed, (1ull << 40) + trial);
    std::uint64_t ctr = 0;
    double max_shift = 0;
    std::vector<Polynomial> comps;
    for (const Polynomial& p : f.components()) {
      Polynomial q(f.dimension());
      for (const auto& [mono, coeff] : p.terms()) {
        const double shift = st.uniform(ctr++, -eps, eps);
        max_shift = std::max(max_shift, std::fabs(shift));
        q.add_term(mono, coeff + rational_of_double(shift));
      }
      comps.push_back(std::move(q));
    }
    MGBudget trial_budget = budget;
    trial_budget.seed = derive_stream(budget.seed, (1ull << 41) + trial).key;
    const std::vector<MGVerdict> verdicts = check_mg(PolynomialMap(std::move(comps)), trial_budget);
    bool falsified = false;
    for (const MGVerdict& v : verdicts) falsified = falsified || v.status != MGStatus::Passed;
    if (!falsified) {
      ++rep.unfalsified;
    } else if (!rep.smallest_suspect_shift || max_shift < *rep.smallest_suspect_shift) {
      rep.smallest_suspect_shift = max_shift;
    }
  }
  return rep;
}

}  // namespace polyasym
