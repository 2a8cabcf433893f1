#include "regulus/rational.hpp"

namespace regulus {

Rational rat_pow(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

std::string rat_str(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  try {
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + s);
  }
}

QInterval QInterval::operator*(const QInterval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  Rational mn = a, mx = a;
  for (const Rational* p : {&b, &c, &d}) {
    if (*p < mn) mn = *p;
    if (*p > mx) mx = *p;
  }
  return {mn, mx};
}

QInterval QInterval::pow(unsigned e) const {
  QInterval r = QInterval::point(1);
  QInterval b = *this;
  unsigned k = e;
  while (k > 0) {
    if (k & 1u) r = r * b;
    b = b * b;
    k >>= 1u;
  }
  return r;
}

}  // namespace regulus
