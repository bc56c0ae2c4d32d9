#include "polyasym/rational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polyasym {

Rational rational_of_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_of_double: non-finite value");
  // cpp_rational's double constructor performs the exact binary expansion.
  return Rational(x);
}

Integer floor_rational(const Rational& q) {
  Integer n = numerator(q);
  Integer d = denominator(q);  // always > 0
  if (n >= 0) return n / d;
  return -((-n + d - 1) / d);
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace polyasym
