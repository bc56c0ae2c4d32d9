#pragma once

#include "polyasym/counting.hpp"
#include "polyasym/mg.hpp"
#include "polyasym/polytope.hpp"
#include "polyasym/profile.hpp"
#include "polyasym/rational.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace polyasym {

// Key order is part of the byte-identical reproducibility contract, so every
// serializer emits ordered JSON.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string library_version();

// Exact rationals cross the wire as [numerator, denominator] pairs (JSON
// integers while they fit in 64 bits, decimal strings beyond that).
Json json_of(const Rational& q);
Json json_of(const QVector& v);
Json json_of(const Polytope& p);
Json json_of(const Face& face);
Json json_of(const AsymptoticProfile& p);
Json json_of(const LpCrossCheck& c);
Json json_of(const MGVerdict& v);
Json json_of(const MGEstimate& e);
Json json_of(const PerturbationReport& r);
Json json_of(const SweepResult& s);
Json json_of(const ExponentFit& f);

// ISO-8601 UTC wall clock; the one report field excluded from reproducibility
// comparisons.
std::string current_timestamp();

// Common report head: schema_version, generated_at, versions, seed, and the
// input echo (map text, n, m).
Json report_envelope(const std::string& map_text, const PolynomialMap& f, std::uint64_t seed);

}  // namespace polyasym
