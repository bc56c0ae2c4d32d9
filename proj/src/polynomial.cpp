#include "polyasym/polynomial.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <utility>

namespace polyasym {

int Monomial::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

bool Monomial::operator<(const Monomial& o) const {
  const int da = degree(), db = o.degree();
  if (da != db) return da < db;
  return exponents < o.exponents;
}

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.exponents.size()) != n_)
    throw std::invalid_argument("monomial dimension mismatch");
  for (int e : m.exponents)
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<Monomial> Polynomial::support() const {
  std::vector<Monomial> s;
  s.reserve(terms_.size());
  for (const auto& [m, c] : terms_) s.push_back(m);
  return s;
}

Rational Polynomial::evaluate(const QVector& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int j = 0; j < n_; ++j)
      for (int e = 0; e < m.exponents[j]; ++e) t *= x[j];
    acc += t;
  }
  return acc;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("evaluation point dimension mismatch");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (int j = 0; j < n_; ++j)
      for (int e = 0; e < m.exponents[j]; ++e) t *= x[j];
    acc += t;
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial dimension mismatch");
  Polynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o.scaled(Rational(-1));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (n_ != o.n_) throw std::invalid_argument("polynomial dimension mismatch");
  Polynomial r(n_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m;
      m.exponents.resize(n_);
      for (int j = 0; j < n_; ++j) m.exponents[j] = ma.exponents[j] + mb.exponents[j];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial r(n_);
  if (c == 0) return r;
  for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return n_ == o.n_ && terms_ == o.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  // Iterate graded-lex descending.
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    const Rational& c = it->second;
    const bool negative = c < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational a = negative ? Rational(-c) : c;
    const bool constant_term = m.degree() == 0;
    if (a != 1 || constant_term) {
      out << polyasym::to_string(a);
      if (!constant_term) out << "*";
    }
    bool first_var = true;
    for (int j = 0; j < n_; ++j) {
      const int e = m.exponents[j];
      if (e == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << "x" << (j + 1);
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

PolynomialMap::PolynomialMap(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("polynomial map needs at least one component");
  const int n = components_[0].dimension();
  bool any_nonzero = false;
  for (const Polynomial& p : components_) {
    if (p.dimension() != n)
      throw std::invalid_argument("polynomial map components disagree on dimension");
    if (!p.is_zero()) any_nonzero = true;
  }
  if (!any_nonzero)
    throw std::invalid_argument("polynomial map must have a nonzero component");
}

std::vector<Monomial> PolynomialMap::support() const {
  std::map<Monomial, bool> seen;
  for (const Polynomial& p : components_)
    for (const auto& [m, c] : p.terms()) seen[m] = true;
  std::vector<Monomial> s;
  s.reserve(seen.size());
  for (const auto& [m, b] : seen) s.push_back(m);
  return s;
}

std::string PolynomialMap::to_string() const {
  std::ostringstream out;
  for (int i = 0; i < size(); ++i) {
    if (i) out << "; ";
    out << components_[i].to_string();
  }
  return out.str();
}

ParseError::ParseError(const std::string& message, std::size_t pos)
    : std::runtime_error("parse error at position " + std::to_string(pos) + ": " + message),
      position(pos) {}

namespace {

struct Lexer {
  enum class Kind { Plus, Minus, Star, Caret, Slash, Semicolon, Number, Var, End };
  struct Token {
    Kind kind;
    std::size_t pos;
    Integer number;  // Number: the literal value; Var: the 1-based index
  };

  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token eat() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    current_.pos = i_;
    if (i_ >= text_.size()) {
      current_.kind = Kind::End;
      return;
    }
    const char c = text_[i_];
    switch (c) {
      case '+': current_.kind = Kind::Plus; ++i_; return;
      case '-': current_.kind = Kind::Minus; ++i_; return;
      case '*': current_.kind = Kind::Star; ++i_; return;
      case '^': current_.kind = Kind::Caret; ++i_; return;
      case '/': current_.kind = Kind::Slash; ++i_; return;
      case ';': current_.kind = Kind::Semicolon; ++i_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      current_.kind = Kind::Number;
      current_.number = read_digits();
      return;
    }
    if (c == 'x') {
      ++i_;
      if (i_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[i_])))
        throw ParseError("expected variable index right after 'x'", current_.pos);
      current_.kind = Kind::Var;
      current_.number = read_digits();
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i_);
  }

  Integer read_digits() {
    Integer v = 0;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      v = v * 10 + (text_[i_] - '0');
      ++i_;
    }
    return v;
  }

  const std::string& text_;
  std::size_t i_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(const std::string& text, int n) : lex_(text), n_(n) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  }

  std::vector<Polynomial> parse_components() {
    std::vector<Polynomial> out;
    out.push_back(parse_expr());
    while (lex_.peek().kind == Lexer::Kind::Semicolon) {
      lex_.eat();
      out.push_back(parse_expr());
    }
    if (lex_.peek().kind != Lexer::Kind::End)
      throw ParseError("unexpected token after expression", lex_.peek().pos);
    return out;
  }

 private:
  using Kind = Lexer::Kind;

  Polynomial parse_expr() {
    Polynomial acc(n_);
    bool negate = false;
    if (lex_.peek().kind == Kind::Plus || lex_.peek().kind == Kind::Minus) {
      negate = lex_.eat().kind == Kind::Minus;
    }
    acc = acc + maybe_negate(parse_term(), negate);
    while (lex_.peek().kind == Kind::Plus || lex_.peek().kind == Kind::Minus) {
      const bool minus = lex_.eat().kind == Kind::Minus;
      acc = acc + maybe_negate(parse_term(), minus);
    }
    return acc;
  }

  static Polynomial maybe_negate(Polynomial p, bool negate) {
    return negate ? p.scaled(Rational(-1)) : p;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (lex_.peek().kind == Kind::Star) {
      lex_.eat();
      acc = acc * parse_factor();
    }
    return acc;
  }

  Polynomial parse_factor() {
    const Lexer::Token t = lex_.peek();
    if (t.kind == Kind::Number) return parse_rational();
    if (t.kind == Kind::Var) return parse_variable();
    throw ParseError("expected a number or a variable", t.pos);
  }

  Polynomial parse_rational() {
    const Lexer::Token num = lex_.eat();
    Rational value(num.number);
    if (lex_.peek().kind == Kind::Slash) {
      lex_.eat();
      const Lexer::Token den = lex_.peek();
      if (den.kind != Kind::Number)
        throw ParseError("expected denominator after '/'", den.pos);
      lex_.eat();
      if (den.number == 0) throw ParseError("zero denominator", den.pos);
      value /= Rational(den.number);
    }
    Polynomial p(n_);
    Monomial one;
    one.exponents.assign(n_, 0);
    p.add_term(one, value);
    return p;
  }

  Polynomial parse_variable() {
    const Lexer::Token var = lex_.eat();
    if (var.number < 1 || var.number > n_)
      throw ParseError("variable index out of range 1.." + std::to_string(n_), var.pos);
    const int index = var.number.convert_to<int>() - 1;
    int exponent = 1;
    if (lex_.peek().kind == Kind::Caret) {
      lex_.eat();
      const Lexer::Token e = lex_.peek();
      if (e.kind == Kind::Minus)
        throw ParseError("negative exponent not allowed", e.pos);
      if (e.kind != Kind::Number)
        throw ParseError("expected a nonnegative integer exponent after '^'", e.pos);
      lex_.eat();
      if (e.number > std::numeric_limits<int>::max())
        throw ParseError("exponent too large", e.pos);
      exponent = e.number.convert_to<int>();
    }
    Polynomial p(n_);
    Monomial m;
    m.exponents.assign(n_, 0);
    m.exponents[index] = exponent;
    p.add_term(m, Rational(1));
    return p;
  }

  Lexer lex_;
  int n_;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, int n) {
  Parser parser(text, n);
  std::vector<Polynomial> parts = parser.parse_components();
  if (parts.size() != 1)
    throw ParseError("expected a single polynomial, found ';'", 0);
  return parts[0];
}

PolynomialMap parse_map(const std::string& text, int n) {
  Parser parser(text, n);
  return PolynomialMap(parser.parse_components());
}

}  // namespace polyasym
