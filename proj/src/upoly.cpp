#include "regulus/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace regulus {

UPoly UPoly::constant(const Rational& q) {
  UPoly p;
  if (sign_of(q) != 0) p.c = {q};
  return p;
}

UPoly UPoly::from_poly(const Polynomial& p) {
  if (p.vars().size() > 1) throw DomainError("UPoly::from_poly: polynomial is multivariate");
  UPoly r;
  if (p.is_zero()) return r;
  if (p.vars().empty()) {
    r.c = {p.constant_value()};
    return r;
  }
  const std::string& v = p.vars()[0];
  r.c.assign((size_t)p.degree_in(v) + 1, Rational(0));
  for (const auto& [e, q] : p.terms()) r.c[(size_t)e[0]] = q;
  return r;
}

Polynomial UPoly::to_poly(const std::string& var) const {
  Polynomial x = Polynomial::variable(var), r;
  for (size_t i = c.size(); i-- > 0;) r = r * x + Polynomial::constant(c[i]);
  return r;
}

void UPoly::trim() {
  while (!c.empty() && sign_of(c.back()) == 0) c.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
  Rational r(0);
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& q : r.c) q = -q;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
  r.trim();
  return r;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  UPoly r;
  r.c.assign(c.size() + o.c.size() - 1, Rational(0));
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.trim();
  return r;
}

UPoly UPoly::operator*(const Rational& k) const {
  if (sign_of(k) == 0) return UPoly();
  UPoly r = *this;
  for (auto& q : r.c) q *= k;
  return r;
}

UPoly UPoly::derivative() const {
  UPoly r;
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * (long)i;
  r.trim();
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / lc());
}

UPoly UPoly::divmod(const UPoly& d, UPoly& rem) const {
  if (d.is_zero()) throw DomainError("UPoly division by zero");
  UPoly q;
  rem = *this;
  int dd = d.degree();
  if (rem.degree() >= dd) q.c.assign((size_t)(rem.degree() - dd) + 1, Rational(0));
  while (!rem.is_zero() && rem.degree() >= dd) {
    int k = rem.degree() - dd;
    Rational f = rem.lc() / d.lc();
    q.c[(size_t)k] = f;
    for (int i = 0; i <= dd; ++i) rem.c[(size_t)(i + k)] -= f * d.c[(size_t)i];
    rem.trim();
  }
  q.trim();
  return q;
}

UPoly UPoly::mod(const UPoly& d) const {
  UPoly r;
  divmod(d, r);
  return r;
}

UPoly UPoly::shift(const Rational& a) const {
  // Horner: p(x + a)
  UPoly r;
  for (size_t i = c.size(); i-- > 0;) {
    // r = r * (x + a) + c[i]
    UPoly xa;
    xa.c = {a, Rational(1)};
    r = r * xa + UPoly::constant(c[i]);
  }
  return r;
}

UPoly UPoly::scale_arg(const Rational& k) const {
  UPoly r = *this;
  Rational f(1);
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.c[i] *= f;
    f *= k;
  }
  r.trim();
  return r;
}

UPoly UPoly::reverse() const {
  UPoly r = *this;
  std::reverse(r.c.begin(), r.c.end());
  r.trim();
  return r;
}

std::string UPoly::to_string(const std::string& var) const { return to_poly(var).to_string(); }

void upoly_normalize(UPoly& p) {
  Integer num_gcd(0), den_lcm(1);
  for (const auto& q : p.c) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  if (sign_of(num_gcd) == 0) return;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (scale == 1) return;
  for (auto& q : p.c) {
    q *= scale;
    q.canonicalize();
  }
}

UPoly gcd_upoly(const UPoly& a, const UPoly& b) {
  UPoly p = a, q = b;
  upoly_normalize(p);
  upoly_normalize(q);
  while (!q.is_zero()) {
    UPoly r = p.mod(q);
    upoly_normalize(r);
    p = q;
    q = r;
  }
  return p.monic();
}

UPoly squarefree_upoly(const UPoly& p) {
  if (p.is_zero() || p.degree() == 0) return p.monic();
  UPoly g = gcd_upoly(p, p.derivative());
  if (g.degree() == 0) return p.monic();
  UPoly rem;
  UPoly q = p.divmod(g, rem);
  return q.monic();
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  chain.push_back(p);
  upoly_normalize(chain.back());
  UPoly d = p.derivative();
  if (d.is_zero()) return chain;
  upoly_normalize(d);
  chain.push_back(std::move(d));
  while (true) {
    const UPoly& a = chain[chain.size() - 2];
    const UPoly& b = chain.back();
    UPoly r = a.mod(b);
    if (r.is_zero()) break;
    r = -r;
    upoly_normalize(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

int sign_variations_at(const std::vector<UPoly>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(p.sign_at(x));
  return count_variations(signs);
}

int sign_variations_at_inf(const std::vector<UPoly>& chain, int dir) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) {
    if (p.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sign_of(p.lc());
    if (dir < 0 && (p.degree() & 1)) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

int sturm_count(const std::vector<UPoly>& chain, const Rational& a, const Rational& b) {
  if (!(a < b)) return 0;
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

int sturm_count_all(const std::vector<UPoly>& chain) {
  return sign_variations_at_inf(chain, -1) - sign_variations_at_inf(chain, +1);
}

Rational root_bound(const UPoly& p) {
  if (p.is_zero() || p.degree() == 0) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational a = rat_abs(p.c[(size_t)i] / p.lc());
    if (a > m) m = a;
  }
  return m + 1;
}

Rational min_root_magnitude(const UPoly& p) {
  // Strip x^m, then bound below: |z| >= |a0| / (|a0| + max|ai|).
  UPoly q = p;
  size_t m = 0;
  while (m < q.c.size() && sign_of(q.c[m]) == 0) ++m;
  if (m >= q.c.size()) throw DomainError("min_root_magnitude: zero polynomial");
  std::vector<Rational> cs(q.c.begin() + (long)m, q.c.end());
  Rational a0 = rat_abs(cs[0]);
  Rational mx(0);
  for (size_t i = 1; i < cs.size(); ++i) {
    Rational a = rat_abs(cs[i]);
    if (a > mx) mx = a;
  }
  if (sign_of(mx) == 0) return a0 > 1 ? Rational(1) : a0;
  return a0 / (a0 + mx);
}

namespace {

// Number of sign variations of the coefficients of (x+1)^n p(1/(x+1)),
// bounding the number of roots of p in (0, 1).
int descartes_01(const UPoly& p) {
  UPoly r = p.reverse().shift(Rational(1));
  std::vector<int> signs;
  for (const auto& q : r.c) signs.push_back(sign_of(q));
  return count_variations(signs);
}

// Isolates roots of squarefree p in the open interval (0, 1), reporting
// subintervals of (0,1); `out` collects (lo, hi, exact) in binary order.
void isolate_01(const UPoly& p, const Rational& lo, const Rational& hi,
                std::vector<RootInterval>& out) {
  int v = descartes_01(p);
  if (v == 0) return;
  if (v == 1) {
    out.push_back({lo, hi, false});
    return;
  }
  Rational half(1, 2);
  // p(x/2) covers the left half, p((x+1)/2) the right half.
  UPoly pl = p.scale_arg(half);
  upoly_normalize(pl);
  UPoly pr = pl.shift(Rational(1));
  upoly_normalize(pr);
  Rational mid = (lo + hi) / 2;
  isolate_01(pl, lo, mid, out);
  if (p.sign_at(half) == 0) out.push_back({mid, mid, true});
  isolate_01(pr, mid, hi, out);
}

// Sturm-chain bisection; the workhorse for large inputs where the Descartes
// transforms inflate coefficients. Counts follow the (a, b] convention.
void sturm_isolate_rec(const UPoly& q, const std::vector<UPoly>& chain, const Rational& a,
                       const Rational& b, std::vector<RootInterval>& out) {
  int n = sturm_count(chain, a, b);
  if (n == 0) return;
  if (n == 1) {
    if (q.sign_at(b) == 0) {
      out.push_back({b, b, true});
      return;
    }
    if (q.sign_at(a) != 0) {
      out.push_back({a, b, false});
      return;
    }
    Rational m = (a + b) / 2;
    if (q.sign_at(m) == 0) {
      out.push_back({m, m, true});
      return;
    }
    if (sturm_count(chain, a, m) == 1)
      sturm_isolate_rec(q, chain, a, m, out);
    else
      sturm_isolate_rec(q, chain, m, b, out);
    return;
  }
  Rational m = (a + b) / 2;
  sturm_isolate_rec(q, chain, a, m, out);
  sturm_isolate_rec(q, chain, m, b, out);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
  UPoly q = squarefree_upoly(p);
  upoly_normalize(q);
  std::vector<RootInterval> out;
  if (q.degree() <= 0) return out;
  {
    // Descartes transforms square coefficient sizes; large inputs go through
    // Sturm bisection instead
    size_t bits = 0;
    for (const auto& c : q.c) bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    if (q.degree() > 24 || bits > 512) {
      std::vector<UPoly> chain = sturm_chain(q);
      Rational M = root_bound(q);
      Integer mi;
      mpz_cdiv_q(mi.get_mpz_t(), M.get_num_mpz_t(), M.get_den_mpz_t());
      Rational bound(mi + 1);
      sturm_isolate_rec(q, chain, -bound, bound, out);
      std::sort(out.begin(), out.end(),
                [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
      return out;
    }
  }
  Rational M = root_bound(q);
  // Negative roots: roots of q(-Mx) in (0,1) map to (-M, 0).
  {
    UPoly qm = q.scale_arg(-M);
    std::vector<RootInterval> neg;
    isolate_01(qm, Rational(0), Rational(1), neg);
    for (auto it = neg.rbegin(); it != neg.rend(); ++it) {
      if (it->exact)
        out.push_back({-M * it->lo, -M * it->lo, true});
      else
        out.push_back({-M * it->hi, -M * it->lo, false});
    }
  }
  if (q.sign_at(Rational(0)) == 0) out.push_back({Rational(0), Rational(0), true});
  {
    UPoly qp = q.scale_arg(M);
    std::vector<RootInterval> pos;
    isolate_01(qp, Rational(0), Rational(1), pos);
    for (const auto& r : pos) {
      if (r.exact)
        out.push_back({M * r.lo, M * r.lo, true});
      else
        out.push_back({M * r.lo, M * r.hi, false});
    }
  }
  // A split point that is itself a root was reported exactly; the intervals
  // flanking it then carry a root as an endpoint. Shrink until endpoints are
  // root-free, certified by a Sturm count of one.
  std::vector<UPoly> chain = sturm_chain(q);
  for (auto& r : out) {
    if (r.exact) continue;
    while (q.sign_at(r.lo) == 0 || q.sign_at(r.hi) == 0) {
      Rational mid = (r.lo + r.hi) / 2;
      if (q.sign_at(mid) == 0) {
        r.lo = mid;
        r.hi = mid;
        r.exact = true;
        break;
      }
      if (sturm_count(chain, r.lo, mid) == 1)
        r.hi = mid;
      else
        r.lo = mid;
    }
    if (!r.exact && sturm_count(chain, r.lo, r.hi) != 1)
      throw DomainError("isolate_real_roots: certification failed");
  }
  return out;
}

}  // namespace regulus
