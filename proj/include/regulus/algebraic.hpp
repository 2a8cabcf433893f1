#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "regulus/factor.hpp"
#include "regulus/upoly.hpp"

namespace regulus {

// A real algebraic number: a squarefree defining polynomial together with an
// isolating interval whose endpoints are not roots. Exact rationals carry a
// linear defining polynomial. Values are immutable as numbers; refine() only
// shrinks the enclosure.
class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  explicit AlgebraicNumber(const Rational& q);
  AlgebraicNumber(UPoly defining, Rational lo, Rational hi);

  bool is_rational() const { return exact_.has_value(); }
  const Rational& rat() const { return *exact_; }
  const UPoly& defining() const { return *defining_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  QInterval enclosure() const { return is_rational() ? QInterval::point(*exact_) : QInterval(lo_, hi_); }

  void refine();
  void refine_below(const Rational& width);
  int sign();

  static int compare(AlgebraicNumber& a, AlgebraicNumber& b);
  int compare_rational(const Rational& q);

  std::string to_string() const;

 private:
  std::shared_ptr<const UPoly> defining_;
  Rational lo_, hi_;
  std::optional<Rational> exact_;
};

// Distinct real roots of p in increasing order.
std::vector<AlgebraicNumber> real_roots(const UPoly& p);

// Sign of q at a (exact; refines a's enclosure as needed).
int upoly_sign_at(const UPoly& q, AlgebraicNumber& a);

// ----- number field Q(alpha), alpha with irreducible minimal polynomial -----

// Elements are represented mod the minimal polynomial; the zero test is
// syntactic, which is what makes every downstream sign decision terminate.
class NumberField {
 public:
  // `minimal` must be irreducible over Q; alpha is its root in (lo, hi).
  NumberField(UPoly minimal, Rational lo, Rational hi);
  static NumberField rational();  // degenerate field Q (alpha = 0)

  using Elem = UPoly;  // degree < deg(minimal)

  const UPoly& minimal() const { return min_; }
  AlgebraicNumber& alpha() { return alpha_; }
  int degree() const { return min_.degree(); }

  Elem reduce(const UPoly& p) const { return degree() == 0 ? p : p.mod(min_); }
  Elem from_rational(const Rational& q) const { return UPoly::constant(q); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(a * b); }
  Elem inverse(const Elem& a) const;
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  int sign(const Elem& a);
  QInterval enclose(const Elem& a);
  Rational abs_upper_bound(const Elem& a);

 private:
  UPoly min_;
  AlgebraicNumber alpha_;
};

// Univariate polynomials over a number field.
struct NFPoly {
  std::vector<NumberField::Elem> c;  // c[k] * y^k

  void trim(const NumberField& K);
  bool is_zero() const { return c.empty(); }
  int degree() const { return (int)c.size() - 1; }
  std::string to_string() const;
};

NFPoly nf_from_bivariate(NumberField& K, const Polynomial& p, const std::string& alpha_var,
                         const std::string& y_var);
NFPoly nf_from_upoly(const UPoly& p);

NFPoly nf_add(const NumberField& K, const NFPoly& a, const NFPoly& b);
NFPoly nf_sub(const NumberField& K, const NFPoly& a, const NFPoly& b);
NFPoly nf_mul(const NumberField& K, const NFPoly& a, const NFPoly& b);
NFPoly nf_derivative(const NumberField& K, const NFPoly& a);
NFPoly nf_mod(const NumberField& K, const NFPoly& a, const NFPoly& d);
NFPoly nf_gcd(NumberField& K, const NFPoly& a, const NFPoly& b);
NFPoly nf_squarefree(NumberField& K, const NFPoly& a);
NumberField::Elem nf_eval(const NumberField& K, const NFPoly& a, const Rational& y);

std::vector<NFPoly> nf_sturm_chain(NumberField& K, const NFPoly& p);
int nf_sign_variations_at(NumberField& K, const std::vector<NFPoly>& chain, const Rational& y);
int nf_sturm_count(NumberField& K, const std::vector<NFPoly>& chain, const Rational& a,
                   const Rational& b);

// Fully exact root isolation over the reals for an NFPoly.
struct NFRoot {
  Rational lo, hi;
  std::optional<Rational> exact;
};
std::vector<NFRoot> nf_isolate_roots(NumberField& K, const NFPoly& p);

// Whether v vanishes at the root of u_star isolated by r (u_star squarefree).
bool nf_vanishes_at_root(NumberField& K, const NFPoly& v, const NFPoly& u_star, const NFRoot& r);
// Exact sign of v(beta) for beta given over Q by its defining polynomial and
// isolating interval (zero certified by a small gcd in Q(alpha)[y]).
int nf_sign_at_q_root(NumberField& K, const NFPoly& v, AlgebraicNumber& beta);
// Exact sign of v at that root (refines both enclosures; v(root) may be 0).
int nf_sign_at_root(NumberField& K, const NFPoly& v, const NFPoly& u_star, NFRoot& r);
// Shrinks the isolating interval of the root by one bisection step.
void nf_refine_root(NumberField& K, const NFPoly& u_star, NFRoot& r);

// ----- points with exact coordinates -----

using Coordinate = std::variant<Rational, AlgebraicNumber>;

struct Point {
  std::vector<std::string> vars;
  std::vector<Coordinate> coords;

  static Point rational(const std::vector<std::string>& vars, const std::vector<Rational>& vals);
  const Coordinate& at(const std::string& var) const;
  bool all_rational() const;
  std::string to_string() const;
};

// Exact sign of p at pt; enclosures inside pt refine as needed. At most two
// algebraic coordinates are supported (plenty for ambient dimension <= 2 plus
// rational slices).
int sign_at_point(const Polynomial& p, Point& pt);

// Exact value at an all-rational point.
Rational eval_at_rational_point(const Polynomial& p, const Point& pt);

// Replaces a squarefree defining polynomial by the irreducible factor that
// actually vanishes at the number (needed to build a NumberField on it).
AlgebraicNumber normalize_to_irreducible(const AlgebraicNumber& a);

}  // namespace regulus
