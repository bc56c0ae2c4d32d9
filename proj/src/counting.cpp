#include "polyasym/counting.hpp"

#include "polyasym/errors.hpp"
#include "polyasym/parallel.hpp"
#include "polyasym/profile.hpp"
#include "polyasym/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace polyasym {

namespace {

template <class I>
I int_abs(const I& v) {
  return v < 0 ? I(-v) : I(v);
}

template <class I>
I ipow(long base, int e) {
  I r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Components with cleared denominators: |g_i(x)| <= threshold_i over Z^n is
// exactly |f_i(x)| <= r.
struct ScaledTerm {
  std::vector<int> exps;
  Integer coeff;
};
struct ScaledComponent {
  std::vector<ScaledTerm> terms;
  Integer threshold;
};

std::vector<ScaledComponent> scale_components(const PolynomialMap& f, double r) {
  const Rational rr = rational_of_double(r);
  std::vector<ScaledComponent> out;
  for (const Polynomial& p : f.components()) {
    Integer den = 1;
    for (const auto& [mono, c] : p.terms()) den = lcm(den, Integer(denominator(c)));
    ScaledComponent sc;
    for (const auto& [mono, c] : p.terms())
      sc.terms.push_back({mono.exponents, Integer(numerator(c) * (den / denominator(c)))});
    sc.threshold = floor_rational(den * rr);
    out.push_back(std::move(sc));
  }
  return out;
}

// Branch-and-bound over one sign orthant in magnitude space.  Each box is a
// product of magnitude intervals [lo_j, hi_j] within [1, B]; every term is
// monotone in each magnitude, so exact interval sums decide boxes wholesale.
template <class I>
struct OrthantCounter {
  struct Term {
    std::vector<int> exps;
    I coeff;  // sign already folded for this orthant
  };
  std::vector<std::vector<Term>> comps;
  std::vector<I> thresholds;
  int n = 0;

  I run(std::vector<long>& lo, std::vector<long>& hi) const {
    bool all_inside = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      I lo_sum = 0, hi_sum = 0;
      for (const Term& t : comps[i]) {
        I plo = int_abs(t.coeff), phi = plo;
        for (int j = 0; j < n; ++j) {
          plo *= ipow<I>(lo[j], t.exps[j]);
          phi *= ipow<I>(hi[j], t.exps[j]);
        }
        if (t.coeff >= 0) {
          lo_sum += plo;
          hi_sum += phi;
        } else {
          lo_sum -= phi;
          hi_sum -= plo;
        }
      }
      const I absmax = std::max(int_abs(lo_sum), int_abs(hi_sum));
      const I absmin = lo_sum > 0 ? lo_sum : (hi_sum < 0 ? I(-hi_sum) : I(0));
      if (absmin > thresholds[i]) return 0;
      if (absmax > thresholds[i]) all_inside = false;
    }
    if (all_inside) {
      I c = 1;
      for (int j = 0; j < n; ++j) c *= I(hi[j] - lo[j] + 1);
      return c;
    }
    // A zero-width box evaluates exactly and was decided above, so some axis
    // still has room to split.
    int ax = 0;
    long w = hi[0] - lo[0];
    for (int j = 1; j < n; ++j)
      if (hi[j] - lo[j] > w) {
        w = hi[j] - lo[j];
        ax = j;
      }
    const long mid = lo[ax] + w / 2, save_lo = lo[ax], save_hi = hi[ax];
    hi[ax] = mid;
    const I left = run(lo, hi);
    hi[ax] = save_hi;
    lo[ax] = mid + 1;
    const I right = run(lo, hi);
    lo[ax] = save_lo;
    return left + right;
  }
};

template <class I>
I narrow(const Integer& v) {
  if constexpr (std::is_same_v<I, Integer>)
    return v;
  else
    return v.template convert_to<I>();
}

template <class I>
I count_orthant(const std::vector<ScaledComponent>& scaled, int n, unsigned orthant, long B) {
  OrthantCounter<I> oc;
  oc.n = n;
  for (const ScaledComponent& sc : scaled) {
    std::vector<typename OrthantCounter<I>::Term> ts;
    for (const ScaledTerm& t : sc.terms) {
      Integer c = t.coeff;
      for (int j = 0; j < n; ++j)
        if (((orthant >> j) & 1u) && t.exps[j] % 2 == 1) c = -c;
      ts.push_back({t.exps, narrow<I>(c)});
    }
    oc.comps.push_back(std::move(ts));
    oc.thresholds.push_back(narrow<I>(sc.threshold));
  }
  std::vector<long> lo(n, 1), hi(n, B);
  return oc.run(lo, hi);
}

std::vector<Integer> box_counts(const std::vector<ScaledComponent>& scaled, int n, long B,
                                int threads) {
  // One representation decision for the whole box: if every interval sum and
  // the box cardinality fit comfortably in 64 bits, use the fast path.
  Integer lim = ipow<Integer>(B, n);
  for (const ScaledComponent& sc : scaled) {
    Integer bound = 0;
    for (const ScaledTerm& t : sc.terms) {
      Integer m = int_abs(t.coeff);
      for (int j = 0; j < n; ++j) m *= ipow<Integer>(B, t.exps[j]);
      bound += m;
    }
    if (bound > lim) lim = bound;
    if (sc.threshold > lim) lim = sc.threshold;
  }
  const bool fits = lim < (Integer(1) << 62);
  const unsigned norths = 1u << n;
  std::vector<Integer> out(norths);
  parallel_for(static_cast<int>(norths), threads, [&](int o) {
    out[o] = fits ? Integer(count_orthant<long long>(scaled, n, static_cast<unsigned>(o), B))
                  : count_orthant<Integer>(scaled, n, static_cast<unsigned>(o), B);
  });
  return out;
}

double eval_max_abs(const PolynomialMap& f, const std::vector<double>& x) {
  double H = 0;
  for (const Polynomial& p : f.components()) H = std::max(H, std::fabs(p.evaluate(x)));
  return H;
}

// Grow [-B,B]^n by doubling until no grid midpoint in the boundary shell
// (outer layer of thickness max(1, B/8)) lies in the region.
long find_volume_box(const PolynomialMap& f, double r, long probe_res, long max_box) {
  const int n = f.dimension();
  if (std::pow(static_cast<double>(probe_res), n) > 2e8)
    throw UnsupportedShapeError("estimate_volume: grid beyond desk scale", 0);
  long B = std::min(8L, max_box);
  for (;;) {
    const double s = std::max(1.0, B / 8.0);
    const double h = 2.0 * B / static_cast<double>(probe_res);
    bool occupied = false;
    std::vector<long> idx(n, 0);
    std::vector<double> x(n);
    for (;;) {
      double m = 0;
      for (int j = 0; j < n; ++j) {
        x[j] = -B + (idx[j] + 0.5) * h;
        m = std::max(m, std::fabs(x[j]));
      }
      if (m > B - s && eval_max_abs(f, x) <= r) {
        occupied = true;
        break;
      }
      int j = 0;
      while (j < n && ++idx[j] == probe_res) {
        idx[j] = 0;
        ++j;
      }
      if (j == n) break;
    }
    if (!occupied) return B;
    if (B >= max_box)
      throw UnsupportedShapeError(
          "estimate_volume: boundary shell still occupied at box " + std::to_string(B), B);
    B = std::min(2 * B, max_box);
  }
}

VolumeEstimate grid_estimate(const PolynomialMap& f, double r, long R, long B, int threads) {
  const int n = f.dimension();
  const double h = 2.0 * B / static_cast<double>(R);
  std::vector<long> in_slab(R, 0), bd_slab(R, 0);
  parallel_for(static_cast<int>(R), threads, [&](int i0) {
    long nin = 0, nbd = 0;
    std::vector<long> idx(n, 0);
    idx[0] = i0;
    std::vector<double> x(n), y(n);
    for (;;) {
      for (int j = 0; j < n; ++j) x[j] = -B + (idx[j] + 0.5) * h;
      const bool in = eval_max_abs(f, x) <= r;
      if (in) ++nin;
      bool boundary = false;
      for (int j = 0; j < n && !boundary; ++j) {
        if (idx[j] + 1 == R) continue;
        y = x;
        y[j] += h;
        boundary = (eval_max_abs(f, y) <= r) != in;
      }
      if (boundary) ++nbd;
      int j = 1;
      while (j < n && ++idx[j] == R) {
        idx[j] = 0;
        ++j;
      }
      if (j >= n) break;
    }
    in_slab[i0] = nin;
    bd_slab[i0] = nbd;
  });
  long nin = 0, nbd = 0;
  for (long v : in_slab) nin += v;
  for (long v : bd_slab) nbd += v;
  VolumeEstimate e;
  const double cell = std::pow(h, n);
  e.value = cell * static_cast<double>(nin);
  // Heuristic: each boundary cell contributes about half a cell of
  // uncertainty, treated as independent.
  e.std_error = 0.5 * cell * std::sqrt(static_cast<double>(nbd));
  return e;
}

VolumeEstimate mc_estimate(const PolynomialMap& f, double r, long samples, long B,
                           std::uint64_t seed, int threads) {
  const int n = f.dimension();
  const long K = 4096;  // fixed chunking keeps results independent of threads
  const long chunks = (samples + K - 1) / K;
  std::vector<long> hits(chunks, 0);
  parallel_for(static_cast<int>(chunks), threads, [&](int c) {
    long local = 0;
    const long lo = static_cast<long>(c) * K, hi = std::min(samples, lo + K);
    std::vector<double> x(n);
    for (long i = lo; i < hi; ++i) {
      const RngStream st = derive_stream(seed, static_cast<std::uint64_t>(i));
      for (int j = 0; j < n; ++j)
        x[j] = st.uniform(static_cast<std::uint64_t>(j), -static_cast<double>(B),
                          static_cast<double>(B));
      if (eval_max_abs(f, x) <= r) ++local;
    }
    hits[c] = local;
  });
  long H = 0;
  for (long v : hits) H += v;
  VolumeEstimate e;
  const double box = std::pow(2.0 * static_cast<double>(B), n);
  const double p = static_cast<double>(H) / static_cast<double>(samples);
  e.value = box * p;
  e.std_error = box * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(samples)));
  return e;
}

std::string format_decimal(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("csv: non-finite value");
  std::ostringstream os;
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    os << std::fixed << std::setprecision(0) << v;
    return os.str();
  }
  os << std::fixed << std::setprecision(12) << v;
  std::string t = os.str();
  while (!t.empty() && t.back() == '0') t.pop_back();
  if (!t.empty() && t.back() == '.') t.pop_back();
  return t;
}

}  // namespace

std::vector<Integer> count_lattice_by_orthant(const PolynomialMap& f, double r, long max_box,
                                              int threads) {
  if (!std::isfinite(r)) throw std::invalid_argument("count_lattice: r must be finite");
  if (max_box < 1) throw std::invalid_argument("count_lattice: max_box must be positive");
  if (!lattice_profile(f).finite)
    throw std::invalid_argument("count_lattice: this map has infinitely many qualifying points");
  const int n = f.dimension();
  const std::vector<ScaledComponent> scaled = scale_components(f, r);
  long B = std::min(8L, max_box);
  for (;;) {
    std::vector<Integer> full = box_counts(scaled, n, B, threads);
    Integer full_sum = 0;
    for (const Integer& c : full) full_sum += c;
    const long s = std::max(1L, B / 8);
    Integer inner_sum = 0;
    if (B - s >= 1)
      for (const Integer& c : box_counts(scaled, n, B - s, threads)) inner_sum += c;
    if (full_sum == inner_sum) return full;
    if (B >= max_box)
      throw ShellNonTermination("count_lattice: boundary shell still occupied at box " +
                                    std::to_string(B),
                                full_sum, B);
    B = std::min(2 * B, max_box);
  }
}

Integer count_lattice(const PolynomialMap& f, double r, long max_box, int threads) {
  Integer total = 0;
  for (const Integer& c : count_lattice_by_orthant(f, r, max_box, threads)) total += c;
  return total;
}

VolumeEstimate estimate_volume(const PolynomialMap& f, double r, VolumeMethod method,
                               long resolution_or_samples, std::uint64_t seed, int threads,
                               long max_box) {
  if (!std::isfinite(r)) throw std::invalid_argument("estimate_volume: r must be finite");
  if (resolution_or_samples < 1)
    throw std::invalid_argument("estimate_volume: resolution/sample count must be positive");
  if (max_box < 1) throw std::invalid_argument("estimate_volume: max_box must be positive");
  if (!volume_profile(f).finite)
    throw std::invalid_argument("estimate_volume: this map has infinite volume");
  const long probe = method == VolumeMethod::Grid ? resolution_or_samples
                                                  : (f.dimension() <= 2 ? 256 : 128);
  const long B = find_volume_box(f, r, probe, max_box);
  return method == VolumeMethod::Grid
             ? grid_estimate(f, r, resolution_or_samples, B, threads)
             : mc_estimate(f, r, resolution_or_samples, B, seed, threads);
}

std::vector<double> default_schedule() {
  std::vector<double> s;
  for (int i = 0; i <= 8; ++i) s.push_back(std::pow(10.0, 2.0 + 0.5 * i));
  return s;
}

SweepResult sweep(const PolynomialMap& f, SweepKind kind, const std::vector<double>& r_schedule,
                  const SweepBudget& budget, std::uint64_t seed) {
  for (std::size_t i = 0; i < r_schedule.size(); ++i) {
    if (!(r_schedule[i] > 0) || !std::isfinite(r_schedule[i]))
      throw std::invalid_argument("sweep: r values must be positive and finite");
    if (i > 0 && r_schedule[i] <= r_schedule[i - 1])
      throw std::invalid_argument("sweep: r values must be strictly increasing");
  }
  SweepResult out;
  out.kind = kind;
  for (std::size_t i = 0; i < r_schedule.size(); ++i) {
    const double r = r_schedule[i];
    if (r > budget.max_r) continue;
    if (kind == SweepKind::LatticeCount) {
      const Integer c = count_lattice(f, r, budget.max_box, budget.threads);
      out.measurements.push_back(to_double(Rational(c)));
    } else {
      const long work = budget.method == VolumeMethod::Grid ? budget.grid_resolution
                                                            : budget.sample_count;
      const VolumeEstimate est = estimate_volume(f, r, budget.method, work,
                                                 derive_stream(seed, i).key, budget.threads);
      out.measurements.push_back(est.value);
      out.error_bars.push_back(est.std_error);
    }
    out.r_values.push_back(r);
  }
  for (std::size_t i = 0; i < out.measurements.size(); ++i) {
    if (out.measurements[i] < 0)
      throw InternalConsistencyError("sweep: negative measurement");
    if (kind == SweepKind::LatticeCount && i > 0 &&
        out.measurements[i] < out.measurements[i - 1])
      throw InternalConsistencyError("sweep: lattice count decreased as r grew");
  }
  return out;
}

ExponentFit fit_exponents(const SweepResult& s, std::optional<int> kappa) {
  if (s.r_values.size() != s.measurements.size())
    throw std::invalid_argument("fit_exponents: malformed sweep");
  const double rmin = std::exp(2.0);
  std::vector<double> lr, llr, ly;
  for (std::size_t i = 0; i < s.r_values.size(); ++i) {
    if (s.r_values[i] < rmin) continue;
    if (!(s.measurements[i] > 0))
      throw std::invalid_argument("fit_exponents: nonpositive measurement");
    lr.push_back(std::log(s.r_values[i]));
    llr.push_back(std::log(std::log(s.r_values[i])));
    ly.push_back(std::log(s.measurements[i]));
  }
  const int N = static_cast<int>(lr.size());
  if (N < 4) throw std::invalid_argument("fit_exponents: need at least 4 points with r >= e^2");
  const int p = kappa ? 2 : 3;
  const auto col = [&](int i, int j) -> double {
    if (j == 0) return lr[i];
    if (j == p - 1) return 1.0;
    return llr[i];
  };
  std::vector<double> y(N);
  for (int i = 0; i < N; ++i) y[i] = ly[i] - (kappa ? static_cast<double>(*kappa) * llr[i] : 0.0);

  double A[3][3] = {{0}}, b[3] = {0}, e0[3] = {1, 0, 0};
  for (int i = 0; i < N; ++i)
    for (int j1 = 0; j1 < p; ++j1) {
      for (int j2 = 0; j2 < p; ++j2) A[j1][j2] += col(i, j1) * col(i, j2);
      b[j1] += col(i, j1) * y[i];
    }
  const auto solve = [&](const double rhs[3]) {
    double M[3][4];
    double scale = 0;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        M[i][j] = A[i][j];
        scale = std::max(scale, std::fabs(A[i][j]));
      }
    for (int i = 0; i < p; ++i) M[i][p] = rhs[i];
    for (int c = 0; c < p; ++c) {
      int piv = c;
      for (int i = c + 1; i < p; ++i)
        if (std::fabs(M[i][c]) > std::fabs(M[piv][c])) piv = i;
      if (std::fabs(M[piv][c]) <= 1e-12 * scale)
        throw std::invalid_argument("fit_exponents: singular design matrix");
      for (int j = 0; j <= p; ++j) std::swap(M[c][j], M[piv][j]);
      for (int i = 0; i < p; ++i) {
        if (i == c) continue;
        const double fct = M[i][c] / M[c][c];
        for (int j = c; j <= p; ++j) M[i][j] -= fct * M[c][j];
      }
    }
    std::array<double, 3> out{0, 0, 0};
    for (int i = 0; i < p; ++i) out[i] = M[i][p] / M[i][i];
    return out;
  };
  const std::array<double, 3> beta = solve(b);
  const std::array<double, 3> z = solve(e0);

  double rss = 0, ybar = 0;
  for (int i = 0; i < N; ++i) ybar += y[i];
  ybar /= N;
  double tss = 0;
  for (int i = 0; i < N; ++i) {
    double pred = 0;
    for (int j = 0; j < p; ++j) pred += beta[j] * col(i, j);
    rss += (y[i] - pred) * (y[i] - pred);
    tss += (y[i] - ybar) * (y[i] - ybar);
  }
  const int dof = N - p;
  const double sigma2 = dof > 0 ? rss / dof : 0.0;

  ExponentFit fit;
  fit.theta_hat = beta[0];
  fit.kappa_hat = kappa ? static_cast<double>(*kappa) : beta[1];
  fit.kappa_was_fixed = kappa.has_value();
  fit.stderr_theta = std::sqrt(std::max(0.0, sigma2 * z[0]));
  fit.r_squared = tss > 0 ? 1.0 - rss / tss : 1.0;
  return fit;
}

std::string to_csv(const SweepResult& s) {
  if (s.r_values.size() != s.measurements.size())
    throw std::invalid_argument("csv: malformed sweep");
  std::ostringstream os;
  os << "r,measurement,stderr\n";
  for (std::size_t i = 0; i < s.r_values.size(); ++i) {
    const double eb = i < s.error_bars.size() ? s.error_bars[i] : 0.0;
    os << format_decimal(s.r_values[i]) << ',' << format_decimal(s.measurements[i]) << ','
       << format_decimal(eb) << '\n';
  }
  return os.str();
}

}  // namespace polyasym
