#include "polyasym/report.hpp"

#include "polyasym/rng.hpp"

#include <chrono>
#include <ctime>
#include <limits>

namespace polyasym {

namespace {

Json integer_json(const Integer& v) {
  static const Integer lo = Integer(std::numeric_limits<std::int64_t>::min());
  static const Integer hi = Integer(std::numeric_limits<std::int64_t>::max());
  if (v < lo || v > hi) return Json(v.str());
  return Json(v.convert_to<std::int64_t>());
}

const char* status_name(MGStatus s) {
  switch (s) {
    case MGStatus::Passed: return "PASSED";
    case MGStatus::ViolationSuspected: return "VIOLATION_SUSPECTED";
    case MGStatus::ViolationCertified: return "VIOLATION_CERTIFIED";
  }
  return "PASSED";
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rational>)
    return json_of(*v);
  else
    return Json(*v);
}

}  // namespace

std::string library_version() { return "0.1.0"; }

Json json_of(const Rational& q) { return Json::array({integer_json(numerator(q)), integer_json(denominator(q))}); }

Json json_of(const QVector& v) {
  Json a = Json::array();
  for (const Rational& q : v) a.push_back(json_of(q));
  return a;
}

Json json_of(const Polytope& p) {
  Json j;
  j["n"] = p.n;
  j["affine_dim"] = p.affine_dim;
  j["vertices"] = Json::array();
  for (const QVector& v : p.vertices) j["vertices"].push_back(json_of(v));
  j["facets"] = Json::array();
  for (const Facet& f : p.facets) {
    Json row;
    row["normal"] = json_of(f.normal);
    row["offset"] = json_of(f.offset);
    j["facets"].push_back(std::move(row));
  }
  return j;
}

Json json_of(const Face& face) {
  Json j;
  j["dim"] = face.dim;
  j["tight_facets"] = face.tight_facets;
  j["vertices"] = Json::array();
  for (const QVector& v : face.vertices) j["vertices"].push_back(json_of(v));
  return j;
}

Json json_of(const AsymptoticProfile& p) {
  Json j;
  j["n"] = p.n;
  Json vol;
  vol["finite"] = p.volume_finite;
  vol["theta"] = optional_json(p.theta);
  vol["k"] = optional_json(p.k);
  vol["log_exponent"] = optional_json(p.log_exp_volume);
  j["volume"] = std::move(vol);
  Json lat;
  lat["finite"] = p.lattice_finite;
  lat["theta"] = optional_json(p.theta_prime);
  lat["k"] = optional_json(p.k_prime);
  lat["log_exponent"] = optional_json(p.log_exp_lattice);
  j["lattice"] = std::move(lat);
  j["faces_equal"] = p.faces_equal;
  return j;
}

Json json_of(const LpCrossCheck& c) {
  const auto side = [](const std::optional<RouteComparison>& rc) -> Json {
    if (!rc) return nullptr;
    Json j;
    j["geometric_value"] = json_of(rc->geometric_value);
    j["geometric_dim"] = rc->geometric_dim;
    j["lp_value"] = json_of(rc->lp_value);
    j["lp_dim"] = rc->lp_dim;
    j["agree"] = rc->geometric_value == rc->lp_value && rc->geometric_dim == rc->lp_dim;
    return j;
  };
  Json j;
  j["volume"] = side(c.volume);
  j["lattice"] = side(c.lattice);
  return j;
}

Json json_of(const MGVerdict& v) {
  Json j;
  j["status"] = status_name(v.status);
  j["face"] = json_of(v.face);
  j["witness"] = v.witness ? json_of(*v.witness) : Json(nullptr);
  j["residual"] = optional_json(v.residual);
  j["samples_used"] = v.samples_used;
  return j;
}

Json json_of(const MGEstimate& e) {
  Json j;
  j["c1_hat"] = e.c1_hat;
  j["c2_hat"] = e.c2_hat;
  j["rho"] = e.rho;
  j["sample_count"] = e.sample_count;
  return j;
}

Json json_of(const PerturbationReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["unfalsified"] = r.unfalsified;
  j["epsilon_used"] = r.epsilon_used;
  j["recipe_epsilon"] = r.recipe_epsilon;
  j["eta"] = r.eta;
  j["smallest_suspect_shift"] = optional_json(r.smallest_suspect_shift);
  return j;
}

Json json_of(const SweepResult& s) {
  Json j;
  j["kind"] = s.kind == SweepKind::LatticeCount ? "LATTICE_COUNT" : "VOLUME";
  j["r_values"] = s.r_values;
  j["measurements"] = s.measurements;
  j["error_bars"] = s.error_bars;
  return j;
}

Json json_of(const ExponentFit& f) {
  Json j;
  j["theta_hat"] = f.theta_hat;
  j["kappa_hat"] = f.kappa_hat;
  j["kappa_was_fixed"] = f.kappa_was_fixed;
  j["stderr_theta"] = f.stderr_theta;
  j["r_squared"] = f.r_squared;
  return j;
}

std::string current_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json report_envelope(const std::string& map_text, const PolynomialMap& f, std::uint64_t seed) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["generated_at"] = current_timestamp();
  Json versions;
  versions["polyasym"] = library_version();
  versions["rng"] = rng_name();
  j["versions"] = std::move(versions);
  j["seed"] = seed;
  Json input;
  input["map"] = map_text;
  input["n"] = f.dimension();
  input["m"] = f.size();
  j["input"] = std::move(input);
  return j;
}

}  // namespace polyasym
