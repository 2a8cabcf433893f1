#pragma once

#include <vector>

#include "regulus/polynomial.hpp"
#include "regulus/rational.hpp"

namespace regulus {

// Dense univariate polynomial over Q: c[k] is the coefficient of x^k.
// Trailing zero coefficients are trimmed; the zero polynomial has empty c.
struct UPoly {
  std::vector<Rational> c;

  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rational& q);
  static UPoly from_poly(const Polynomial& p);  // requires <= 1 variable
  Polynomial to_poly(const std::string& var) const;

  void trim();
  bool is_zero() const { return c.empty(); }
  int degree() const { return (int)c.size() - 1; }
  const Rational& lc() const { return c.back(); }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const { return sign_of(eval(x)); }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rational& k) const;
  bool operator==(const UPoly& o) const { return c == o.c; }

  UPoly derivative() const;
  UPoly monic() const;
  // Euclidean division (field coefficients): returns quotient, sets rem.
  UPoly divmod(const UPoly& d, UPoly& rem) const;
  UPoly mod(const UPoly& d) const;

  UPoly shift(const Rational& a) const;      // p(x + a)
  UPoly scale_arg(const Rational& k) const;  // p(k * x)
  UPoly reverse() const;                     // x^deg * p(1/x)
  std::string to_string(const std::string& var = "t") const;
};

UPoly gcd_upoly(const UPoly& a, const UPoly& b);  // monic gcd
UPoly squarefree_upoly(const UPoly& p);           // monic squarefree part

// Scales by a positive rational so coefficients are coprime integers.
void upoly_normalize(UPoly& p);

// Sturm chain of p (p need not be squarefree; chain built from p, p').
std::vector<UPoly> sturm_chain(const UPoly& p);
// Number of distinct real roots in (a, b], given a chain for p. Endpoints may
// be roots of p; the half-open convention is the classical one.
int sturm_count(const std::vector<UPoly>& chain, const Rational& a, const Rational& b);
int sturm_count_all(const std::vector<UPoly>& chain);  // roots in (-inf, +inf)
int sign_variations_at(const std::vector<UPoly>& chain, const Rational& x);
int sign_variations_at_inf(const std::vector<UPoly>& chain, int dir);  // dir=+1/-1

// Cauchy bound: all real roots lie in (-M, M).
Rational root_bound(const UPoly& p);
// Positive lower bound r such that ever nonzero root z has |z| > r.
Rational min_root_magnitude(const UPoly& p);

// Isolating intervals (lo, hi) for the distinct real roots of p, in increasing
// order; endpoints are never roots. Exact rational roots come back as
// degenerate hints via lo == hi (the caller promotes them).
struct RootInterval {
  Rational lo, hi;
  bool exact = false;  // root == lo == hi
};
std::vector<RootInterval> isolate_real_roots(const UPoly& p);

}  // namespace regulus
