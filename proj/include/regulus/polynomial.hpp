#pragma once

#include <map>
#include <string>
#include <vector>

#include "regulus/rational.hpp"

namespace regulus {

// Exact sparse multivariate polynomial over Q in canonical form: the variable
// list is sorted and contains only variables that actually occur, terms are
// kept in descending graded-lex order with nonzero coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  struct GrLexDesc {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, GrLexDesc>;

  Polynomial() = default;  // zero
  static Polynomial constant(const Rational& c);
  static Polynomial variable(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || vars_.empty(); }
  // Requires is_constant().
  Rational constant_value() const;

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool uses_var(const std::string& v) const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(const std::string& var) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial derivative(const std::string& var) const;
  Polynomial substitute(const std::string& var, const Rational& value) const;
  Polynomial substitute(const std::string& var, const Polynomial& value) const;
  Rational eval(const std::vector<std::pair<std::string, Rational>>& point) const;
  QInterval eval_interval(const std::vector<std::pair<std::string, QInterval>>& box) const;

  // Dense coefficient list w.r.t. one variable; c[k] does not involve `var`.
  std::vector<Polynomial> coeffs_in(const std::string& var) const;
  static Polynomial from_coeffs_in(const std::string& var, const std::vector<Polynomial>& coeffs);
  Polynomial leading_coeff_in(const std::string& var) const;

  // p = unit * primitive where primitive has coprime integer coefficients and
  // positive leading (graded-lex) coefficient.
  Polynomial primitive(Rational* unit = nullptr) const;

  // Total order on canonical polynomials, for deterministic containers.
  static int compare(const Polynomial& a, const Polynomial& b);
  bool operator<(const Polynomial& o) const { return compare(*this, o) < 0; }

  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  TermMap terms_;

  void add_term(const Exponents& e, const Rational& c);
  void canonicalize_vars();
  friend Polynomial embed(const Polynomial& p, const std::vector<std::string>& vars);
};

// Re-expresses p over a variable superset (context embedding).
Polynomial embed(const Polynomial& p, const std::vector<std::string>& vars);
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

Polynomial pow(const Polynomial& base, unsigned e);

// Quotient of exact division; nullopt if b does not divide a.
std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b);

// Pseudo-remainder of a by b w.r.t. var: lc(b)^(da-db+1) * a = q*b + prem.
Polynomial prem(const Polynomial& a, const Polynomial& b, const std::string& var);

// Multivariate gcd (primitive, positive leading coefficient); gcd(0,0) = 0.
Polynomial gcd_poly(const Polynomial& a, const Polynomial& b);

// Classical resultant w.r.t. var via the subresultant PRS.
Polynomial resultant(const Polynomial& a, const Polynomial& b, const std::string& var);
// res(p, dp/dvar, var); the lc factor is kept (vanishing set is what matters).
Polynomial discriminant_like(const Polynomial& p, const std::string& var);

// p / gcd(p, p') taken over all variables: same zero set, all factors simple.
Polynomial squarefree_part(const Polynomial& p);

// Text syntax: vars [a-z][a-z0-9_]*, rational literals, + - * ^, parentheses.
Polynomial parse_poly(const std::string& text);

}  // namespace regulus
