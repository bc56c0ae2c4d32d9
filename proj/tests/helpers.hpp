#pragma once

#include "polyasym/polynomial.hpp"
#include "polyasym/polytope.hpp"
#include "polyasym/rational.hpp"
#include "polyasym/rng.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace testutil {

inline polyasym::Rational q(long num, long den = 1) { return polyasym::Rational(num, den); }

inline polyasym::QVector qv(std::initializer_list<long> xs) {
  polyasym::QVector v;
  for (long x : xs) v.push_back(polyasym::Rational(x));
  return v;
}

inline polyasym::QVector qvr(std::initializer_list<polyasym::Rational> xs) {
  return polyasym::QVector(xs);
}

inline polyasym::PolynomialMap pm(const std::string& text, int n) {
  return polyasym::parse_map(text, n);
}

inline polyasym::Polynomial poly(const std::string& text, int n) {
  return polyasym::parse_polynomial(text, n);
}

inline polyasym::Monomial mono(std::initializer_list<int> es) {
  polyasym::Monomial m;
  m.exponents = es;
  return m;
}

// Deterministic random polynomial map: `terms` terms per component, exponents
// below `max_exp` per variable, small nonzero integer coefficients.
inline polyasym::PolynomialMap random_map(const polyasym::RngStream& st, int n, int m, int terms,
                                          int max_exp) {
  std::uint64_t ctr = 0;
  for (;;) {
    std::vector<polyasym::Polynomial> comps;
    bool nonzero = false;
    for (int i = 0; i < m; ++i) {
      polyasym::Polynomial p(n);
      for (int t = 0; t < terms; ++t) {
        polyasym::Monomial mo;
        for (int j = 0; j < n; ++j)
          mo.exponents.push_back(static_cast<int>(st.below(ctr++, max_exp + 1)));
        const long c = static_cast<long>(st.below(ctr++, 9)) - 4;  // -4..4
        if (c != 0) p.add_term(mo, polyasym::Rational(c));
      }
      nonzero = nonzero || !p.is_zero();
      comps.push_back(std::move(p));
    }
    if (nonzero) return polyasym::PolynomialMap(std::move(comps));
  }
}

}  // namespace testutil
