#pragma once

#include "polyasym/rational.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyasym {

/// Multi-index α of a term x^α. Length = ambient dimension, entries ≥ 0.
struct Monomial {
  std::vector<int> exponents;

  int degree() const;
  bool operator==(const Monomial& o) const { return exponents == o.exponents; }
  // Graded lexicographic: total degree first, then lex on the exponent vector.
  bool operator<(const Monomial& o) const;
};

/// Polynomial with exact rational coefficients; zero coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(int n);

  int dimension() const { return n_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Merge c·x^m into the term map, dropping the term if it cancels to zero.
  void add_term(const Monomial& m, const Rational& c);

  std::vector<Monomial> support() const;
  Rational evaluate(const QVector& x) const;
  double evaluate(const std::vector<double>& x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  bool operator==(const Polynomial& o) const;

  /// Canonical form: graded-lex descending terms, explicit '*', '^' only for
  /// exponents > 1. Accepted verbatim by parse_polynomial.
  std::string to_string() const;

 private:
  int n_;
  std::map<Monomial, Rational> terms_;
};

/// f = (f_1, …, f_m), all components sharing one ambient dimension.
class PolynomialMap {
 public:
  /// Requires m ≥ 1 and at least one nonzero component.
  explicit PolynomialMap(std::vector<Polynomial> components);

  int dimension() const { return components_[0].dimension(); }
  int size() const { return static_cast<int>(components_.size()); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](int i) const { return components_[i]; }

  /// Union of the component supports.
  std::vector<Monomial> support() const;

  std::string to_string() const;

 private:
  std::vector<Polynomial> components_;
};

struct ParseError : std::runtime_error {
  std::size_t position;  // 0-based offset into the input text
  ParseError(const std::string& message, std::size_t pos);
};

/// Grammar (whitespace-insensitive):
///   map    := expr (';' expr)*
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | var ('^' uint)?
///   rational := uint ('/' uint)?
///   var    := 'x' uint          (index in 1..n, digits adjacent to the 'x')
/// Implicit multiplication ("2x1") is rejected on purpose.
Polynomial parse_polynomial(const std::string& text, int n);
PolynomialMap parse_map(const std::string& text, int n);

}  // namespace polyasym
