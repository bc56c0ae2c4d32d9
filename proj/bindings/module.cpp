#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polyasym/counting.hpp"
#include "polyasym/mg.hpp"
#include "polyasym/polynomial.hpp"
#include "polyasym/profile.hpp"
#include "polyasym/report.hpp"
#include "polyasym/rng.hpp"

#include <string>

namespace py = pybind11;

namespace {

// Reports cross into Python as JSON text; the package wrapper parses them.
// That keeps exact rationals intact ([num, den] pairs) without custom types.

std::string analyze_json(const std::string& text, int n, std::uint64_t seed) {
  const polyasym::PolynomialMap f = polyasym::parse_map(text, n);
  polyasym::Json j = polyasym::report_envelope(text, f, seed);
  const polyasym::AsymptoticProfile prof = polyasym::analyze_profile(f);
  polyasym::compare_profiles(prof);
  polyasym::Json newton;
  const polyasym::Polytope gamma = polyasym::newton_polytope(f);
  newton["gamma"] = polyasym::json_of(gamma);
  newton["gamma_tilde"] = polyasym::json_of(polyasym::downward_closure(gamma));
  j["newton"] = std::move(newton);
  j["profile"] = polyasym::json_of(prof);
  j["lp_cross_check"] = polyasym::json_of(polyasym::lp_cross_check(f));
  return j.dump();
}

std::string check_mg_json(const std::string& text, int n, std::uint64_t seed, int starts,
                          int iterations, int threads) {
  const polyasym::PolynomialMap f = polyasym::parse_map(text, n);
  polyasym::MGBudget budget;
  if (starts > 0) budget.starts = starts;
  if (iterations > 0) budget.iterations = iterations;
  budget.seed = seed;
  budget.threads = threads;
  polyasym::Json j = polyasym::report_envelope(text, f, seed);
  polyasym::Json verdicts = polyasym::Json::array();
  for (const polyasym::MGVerdict& v : polyasym::check_mg(f, budget))
    verdicts.push_back(polyasym::json_of(v));
  j["mg"] = {{"verdicts", std::move(verdicts)}};
  return j.dump();
}

py::object count_lattice_py(const std::string& text, int n, double r, long max_box) {
  const polyasym::Integer c =
      polyasym::count_lattice(polyasym::parse_map(text, n), r, max_box);
  return py::module_::import("builtins").attr("int")(c.str());
}

py::tuple estimate_volume_py(const std::string& text, int n, double r, const std::string& method,
                             long work, std::uint64_t seed) {
  polyasym::VolumeMethod m;
  if (method == "grid")
    m = polyasym::VolumeMethod::Grid;
  else if (method == "monte-carlo")
    m = polyasym::VolumeMethod::MonteCarlo;
  else
    throw py::value_error("method must be 'grid' or 'monte-carlo'");
  const polyasym::VolumeEstimate e =
      polyasym::estimate_volume(polyasym::parse_map(text, n), r, m, work, seed);
  return py::make_tuple(e.value, e.std_error);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact growth exponents of polynomial sublevel sets via Newton polytopes";
  mod.def("version", &polyasym::library_version, "library version string");
  mod.def("rng_name", &polyasym::rng_name, "name of the counter-based generator");
  mod.def("analyze_json", &analyze_json, py::arg("text"), py::arg("n"), py::arg("seed") = 0,
          "full analysis report (Newton polytopes, exponents, LP cross-check) as JSON text");
  mod.def("check_mg_json", &check_mg_json, py::arg("text"), py::arg("n"), py::arg("seed") = 0,
          py::arg("starts") = 0, py::arg("iterations") = 0, py::arg("threads") = 1,
          "face common-zero search verdicts as JSON text");
  mod.def("count_lattice", &count_lattice_py, py::arg("text"), py::arg("n"), py::arg("r"),
          py::arg("max_box") = 4000000,
          "exact count of integer points with nonzero coordinates and max|f_i| <= r");
  mod.def("estimate_volume", &estimate_volume_py, py::arg("text"), py::arg("n"), py::arg("r"),
          py::arg("method") = "grid", py::arg("work") = 512, py::arg("seed") = 0,
          "(estimate, stderr) for the sublevel-set volume");
}
