#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace polyasym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using QVector = std::vector<Rational>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_of_double(double x);

/// Largest integer <= q.
Integer floor_rational(const Rational& q);

Rational dot(const QVector& a, const QVector& b);

/// "3/4", "-2", "0" -- canonical form (denominator positive, reduced).
std::string to_string(const Rational& q);

}  // namespace polyasym
