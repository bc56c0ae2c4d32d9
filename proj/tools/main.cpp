#include "CLI11.hpp"

#include "polyasym/counting.hpp"
#include "polyasym/errors.hpp"
#include "polyasym/mg.hpp"
#include "polyasym/polynomial.hpp"
#include "polyasym/polytope.hpp"
#include "polyasym/profile.hpp"
#include "polyasym/report.hpp"
#include "polyasym/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using polyasym::Json;

// A precondition the user's input fails (e.g. asking for volume empirics of an
// infinite-volume map); surfaces as exit code 5.
struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PresetEntry {
  const char* name;
  const char* text;
  int n;
};

const std::vector<PresetEntry>& preset_corpus() {
  static const std::vector<PresetEntry> corpus = {
      {"disk", "x1^2+x2^2", 2},
      {"sextic-quartic", "x1^6+x2^4", 2},
      {"hyperbola", "x1*x2", 2},
      {"sign-split", "x1^2-x2^2", 2},
      {"monomial-pair", "x1^2*x2; x1*x2^2", 2},
  };
  return corpus;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::invalid_argument("cannot write file: " + out);
  f << text;
}

struct Common {
  int n = 0;
  std::string text;
  std::string file;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string preset;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-n", c.n, "ambient dimension (number of variables)");
  sub->add_option("-f", c.text, "polynomial map text, components separated by ';'");
  sub->add_option("--file", c.file, "read the map text from a file");
  sub->add_option("--seed", c.seed, "64-bit master seed recorded in the report");
  sub->add_option("--threads", c.threads, "worker threads (never changes results)");
  sub->add_option("--out", c.out, "write the JSON report here instead of stdout");
  sub->add_option("--preset", c.preset, "run the built-in example corpus (examples)");
}

std::string resolve_text(const Common& c) {
  if (!c.text.empty() && !c.file.empty())
    throw std::invalid_argument("give the map either inline (-f) or via --file, not both");
  if (!c.text.empty()) return c.text;
  if (!c.file.empty()) return slurp(c.file);
  throw std::invalid_argument("no map given: use -f, --file, or --preset");
}

void check_preset_name(const std::string& preset) {
  if (preset != "examples")
    throw std::invalid_argument("unknown preset: " + preset);
}

// ---- analyze ----------------------------------------------------------------

Json analyze_one(const std::string& text, int n, std::uint64_t seed) {
  const polyasym::PolynomialMap f = polyasym::parse_map(text, n);
  Json j = polyasym::report_envelope(text, f, seed);
  const polyasym::Polytope gamma = polyasym::newton_polytope(f);
  Json newton;
  newton["gamma"] = polyasym::json_of(gamma);
  newton["gamma_tilde"] = polyasym::json_of(polyasym::downward_closure(gamma));
  j["newton"] = std::move(newton);
  const polyasym::AsymptoticProfile prof = polyasym::analyze_profile(f);
  polyasym::compare_profiles(prof);  // cross-asserts the face comparison
  j["profile"] = polyasym::json_of(prof);
  j["lp_cross_check"] = polyasym::json_of(polyasym::lp_cross_check(f));
  return j;
}

// ---- check-mg ---------------------------------------------------------------

struct MgOptions {
  double budget_scale = 1.0;
  int perturb = 0;
  std::string epsilon = "auto";
};

Json checkmg_one(const std::string& text, int n, std::uint64_t seed, const MgOptions& mo,
                 int threads, bool& certified) {
  const polyasym::PolynomialMap f = polyasym::parse_map(text, n);
  polyasym::MGBudget budget;
  budget.starts = std::max(1, static_cast<int>(std::lround(budget.starts * mo.budget_scale)));
  budget.iterations =
      std::max(1, static_cast<int>(std::lround(budget.iterations * mo.budget_scale)));
  budget.seed = seed;
  budget.threads = threads;

  Json j = polyasym::report_envelope(text, f, seed);
  const std::vector<polyasym::MGVerdict> verdicts = polyasym::check_mg(f, budget);
  Json mg;
  mg["verdicts"] = Json::array();
  for (const polyasym::MGVerdict& v : verdicts) {
    certified = certified || v.status == polyasym::MGStatus::ViolationCertified;
    mg["verdicts"].push_back(polyasym::json_of(v));
  }
  bool any_certified = false;
  for (const polyasym::MGVerdict& v : verdicts)
    any_certified = any_certified || v.status == polyasym::MGStatus::ViolationCertified;
  // Two-sided constants are only meaningful when no face has a certified
  // common zero (a zero drives the lower constant to nothing).
  mg["estimate"] = any_certified
                       ? Json(nullptr)
                       : polyasym::json_of(polyasym::estimate_constants(
                             f, 20000, 1.0, polyasym::derive_stream(seed, 0xC0457AULL).key));
  if (mo.perturb > 0) {
    const double eps = mo.epsilon == "auto" ? 0.0 : std::stod(mo.epsilon);
    mg["perturbation"] = polyasym::json_of(polyasym::perturbation_probe(f, mo.perturb, eps, budget));
  }
  j["mg"] = std::move(mg);
  return j;
}

// ---- verify -----------------------------------------------------------------

struct VerifyOptions {
  std::string kind;
  double r_cap = 1e5;
  std::string csv;
};

Json verify_one(const std::string& text, int n, std::uint64_t seed, const VerifyOptions& vo,
                int threads, const std::string& csv_path) {
  const polyasym::PolynomialMap f = polyasym::parse_map(text, n);
  const polyasym::AsymptoticProfile prof = polyasym::analyze_profile(f);
  const bool lattice = vo.kind == "lattice";
  const bool finite = lattice ? prof.lattice_finite : prof.volume_finite;
  if (!finite)
    throw Refusal("verify: the " + vo.kind + " of the sublevel sets of '" + text +
                  "' is infinite; nothing to fit");
  const polyasym::Rational theta = lattice ? *prof.theta_prime : *prof.theta;
  const int log_exp = lattice ? *prof.log_exp_lattice : *prof.log_exp_volume;

  polyasym::SweepBudget budget;
  budget.max_r = vo.r_cap;
  budget.threads = threads;
  const std::vector<double> schedule = polyasym::default_schedule();
  const long usable =
      std::count_if(schedule.begin(), schedule.end(), [&](double r) { return r <= budget.max_r; });
  if (usable < 4) {
    std::ostringstream msg;
    msg << "verify: --budget " << vo.r_cap << " keeps only " << usable
        << " sweep radii; the exponent fit needs 4 (raise --budget to at least 3163)";
    throw std::invalid_argument(msg.str());
  }
  const polyasym::SweepKind kind =
      lattice ? polyasym::SweepKind::LatticeCount : polyasym::SweepKind::Volume;
  const polyasym::SweepResult sweep_result =
      polyasym::sweep(f, kind, schedule, budget, seed);
  const polyasym::ExponentFit fixed = polyasym::fit_exponents(sweep_result, log_exp);
  const polyasym::ExponentFit free_fit = polyasym::fit_exponents(sweep_result, std::nullopt);

  std::cerr << "map: " << text << " (n=" << n << "), kind=" << vo.kind << "\n"
            << "  predicted: theta=" << polyasym::to_string(theta) << " ("
            << polyasym::to_double(theta) << "), log exponent=" << log_exp << "\n"
            << "  fitted (kappa fixed " << log_exp << "): theta_hat=" << fixed.theta_hat
            << " +/- " << fixed.stderr_theta << ", R^2=" << fixed.r_squared << "\n"
            << "  fitted (kappa free): theta_hat=" << free_fit.theta_hat
            << ", kappa_hat=" << free_fit.kappa_hat << "\n";

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot write file: " + csv_path);
    csv << polyasym::to_csv(sweep_result);
  }

  Json j = polyasym::report_envelope(text, f, seed);
  Json emp;
  emp["kind"] = lattice ? "LATTICE_COUNT" : "VOLUME";
  Json pred;
  pred["theta"] = polyasym::json_of(theta);
  pred["log_exponent"] = log_exp;
  emp["prediction"] = std::move(pred);
  emp["sweep"] = polyasym::json_of(sweep_result);
  emp["fit_fixed"] = polyasym::json_of(fixed);
  emp["fit_free"] = polyasym::json_of(free_fit);
  emp["csv"] = csv_path.empty() ? Json(nullptr) : Json(csv_path);
  j["empirics"] = std::move(emp);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact growth exponents of polynomial sublevel sets via Newton polytopes"};
  app.require_subcommand(1);

  Common ca, cm, cv;
  MgOptions mo;
  VerifyOptions vo;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Newton polytopes, finiteness, exact exponents, LP cross-check");
  add_common(analyze, ca);

  CLI::App* checkmg = app.add_subcommand(
      "check-mg", "search every face for common zeros with nonzero coordinates");
  add_common(checkmg, cm);
  checkmg->add_option("--budget", mo.budget_scale, "search effort multiplier (default 1.0)");
  checkmg->add_option("--perturb", mo.perturb, "run this many coefficient-perturbation trials");
  checkmg->add_option("--epsilon", mo.epsilon,
                      "perturbation bound: a number, or 'auto' for c1_hat/(2*eta)");

  CLI::App* verify = app.add_subcommand(
      "verify", "measure counts or volumes over an r sweep and fit the exponents");
  add_common(verify, cv);
  verify->add_option("--kind", vo.kind, "lattice or volume")
      ->required()
      ->check(CLI::IsMember({"lattice", "volume"}));
  verify->add_option("--budget", vo.r_cap, "largest r of the sweep schedule (default 1e5)");
  verify->add_option("--csv", vo.csv, "also write the sweep as CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bool certified = false;
  try {
    if (analyze->parsed()) {
      if (!ca.preset.empty()) {
        check_preset_name(ca.preset);
        Json j;
        j["schema_version"] = polyasym::kSchemaVersion;
        j["preset"] = ca.preset;
        j["reports"] = Json::array();
        for (std::size_t i = 0; i < preset_corpus().size(); ++i) {
          const PresetEntry& e = preset_corpus()[i];
          Json r = analyze_one(e.text, e.n, polyasym::derive_stream(ca.seed, i).key);
          r["preset_name"] = e.name;
          j["reports"].push_back(std::move(r));
        }
        emit(j, ca.out);
      } else {
        emit(analyze_one(resolve_text(ca), ca.n, ca.seed), ca.out);
      }
    } else if (checkmg->parsed()) {
      if (!cm.preset.empty()) {
        check_preset_name(cm.preset);
        Json j;
        j["schema_version"] = polyasym::kSchemaVersion;
        j["preset"] = cm.preset;
        j["reports"] = Json::array();
        for (std::size_t i = 0; i < preset_corpus().size(); ++i) {
          const PresetEntry& e = preset_corpus()[i];
          Json r = checkmg_one(e.text, e.n, polyasym::derive_stream(cm.seed, i).key, mo,
                               cm.threads, certified);
          r["preset_name"] = e.name;
          j["reports"].push_back(std::move(r));
        }
        emit(j, cm.out);
      } else {
        emit(checkmg_one(resolve_text(cm), cm.n, cm.seed, mo, cm.threads, certified), cm.out);
      }
    } else if (verify->parsed()) {
      if (!cv.preset.empty()) {
        check_preset_name(cv.preset);
        Json j;
        j["schema_version"] = polyasym::kSchemaVersion;
        j["preset"] = cv.preset;
        j["reports"] = Json::array();
        for (std::size_t i = 0; i < preset_corpus().size(); ++i) {
          const PresetEntry& e = preset_corpus()[i];
          try {
            Json r = verify_one(e.text, e.n, polyasym::derive_stream(cv.seed, i).key, vo,
                                cv.threads, "");
            r["preset_name"] = e.name;
            j["reports"].push_back(std::move(r));
          } catch (const Refusal& ex) {
            Json r;
            r["preset_name"] = e.name;
            r["skipped"] = ex.what();
            j["reports"].push_back(std::move(r));
          }
        }
        emit(j, cv.out);
      } else {
        emit(verify_one(resolve_text(cv), cv.n, cv.seed, vo, cv.threads, vo.csv), cv.out);
      }
    }
  } catch (const polyasym::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const polyasym::InternalConsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const polyasym::ShellNonTermination& e) {
    std::cerr << "error: " << e.what() << " (partial count " << e.partial_count.str() << ")\n";
    return 5;
  } catch (const polyasym::UnsupportedShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const Refusal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return certified ? 4 : 0;
}
