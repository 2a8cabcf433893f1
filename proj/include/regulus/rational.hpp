#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace regulus {

using Integer = mpz_class;
using Rational = mpq_class;

// Error kinds used across the library. The CLI maps these to exit codes.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(const Integer& z) { return sgn(z); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational rat_pow(const Rational& base, unsigned long e);

// Canonical text: "0", "3", "-5", "1/2", "-7/3".
std::string rat_str(const Rational& q);

// Accepts integer and a/b literals, with optional sign.
Rational parse_rational(const std::string& s);

// Closed rational interval [lo, hi]; the basic tool for certified sign
// evaluation at algebraic points.
struct QInterval {
  Rational lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  static QInterval point(const Rational& q) { return QInterval(q, q); }

  bool contains_zero() const { return sign_of(lo) <= 0 && sign_of(hi) >= 0; }
  // Sign of every element, when constant; nullopt if the interval straddles 0.
  std::optional<int> sign() const {
    if (sign_of(lo) > 0) return 1;
    if (sign_of(hi) < 0) return -1;
    if (sign_of(lo) == 0 && sign_of(hi) == 0) return 0;
    return std::nullopt;
  }
  Rational width() const { return hi - lo; }

  QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  QInterval operator*(const QInterval& o) const;
  QInterval pow(unsigned e) const;
};

}  // namespace regulus
