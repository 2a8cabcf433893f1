#include "regulus/algebraic.hpp"

#include <algorithm>
#include <sstream>

namespace regulus {

AlgebraicNumber::AlgebraicNumber(const Rational& q)
    : defining_(std::make_shared<UPoly>(UPoly{{-q, Rational(1)}})),
      lo_(q - 1),
      hi_(q + 1),
      exact_(q) {}

AlgebraicNumber::AlgebraicNumber(UPoly defining, Rational lo, Rational hi)
    : defining_(std::make_shared<UPoly>(std::move(defining))), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (defining_->degree() < 1) throw DomainError("AlgebraicNumber: constant defining polynomial");
  if (defining_->degree() == 1) {
    exact_ = -defining_->c[0] / defining_->c[1];
    return;
  }
  if (defining_->sign_at(lo_) == 0 || defining_->sign_at(hi_) == 0)
    throw DomainError("AlgebraicNumber: interval endpoint is a root");
}

void AlgebraicNumber::refine() {
  if (exact_) {
    Rational m = (lo_ + hi_) / 2;
    // keep the exact value centered
    Rational w = (hi_ - lo_) / 4;
    lo_ = *exact_ - w;
    hi_ = *exact_ + w;
    return;
  }
  Rational m = (lo_ + hi_) / 2;
  int sm = defining_->sign_at(m);
  if (sm == 0) {
    exact_ = m;
    Rational w = (hi_ - lo_) / 4;
    lo_ = m - w;
    hi_ = m + w;
    return;
  }
  if (sm == defining_->sign_at(lo_))
    lo_ = m;
  else
    hi_ = m;
}

void AlgebraicNumber::refine_below(const Rational& width) {
  while (hi_ - lo_ >= width) refine();
}

int AlgebraicNumber::sign() {
  if (exact_) return sign_of(*exact_);
  while (true) {
    if (sign_of(lo_) > 0) return 1;
    if (sign_of(hi_) < 0) return -1;
    if (defining_->sign_at(Rational(0)) == 0 && lo_ < 0 && hi_ > 0) {
      // zero is a root inside the interval, hence it is the root
      exact_ = Rational(0);
      return 0;
    }
    refine();
  }
}

int AlgebraicNumber::compare_rational(const Rational& q) {
  if (exact_) return *exact_ < q ? -1 : (*exact_ == q ? 0 : 1);
  while (true) {
    if (q <= lo_) return 1;
    if (q >= hi_) return -1;
    if (defining_->sign_at(q) == 0) return 0;  // q in interval and a root => equal
    refine();
  }
}

int AlgebraicNumber::compare(AlgebraicNumber& a, AlgebraicNumber& b) {
  if (a.exact_) return -b.compare_rational(*a.exact_);
  if (b.exact_) return a.compare_rational(*b.exact_);
  UPoly g = gcd_upoly(a.defining(), b.defining());
  bool maybe_equal = g.degree() >= 1;
  std::vector<UPoly> chain;
  if (maybe_equal) chain = sturm_chain(g);
  while (true) {
    if (a.hi_ <= b.lo_) return -1;
    if (b.hi_ <= a.lo_) return 1;
    if (maybe_equal) {
      // A root of g inside both isolating intervals is simultaneously the
      // unique root of each defining polynomial there, so a == b.
      Rational lo = std::max(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
      if (lo < hi && sturm_count(chain, lo, hi) >= 1) return 0;
      maybe_equal = false;  // no shared root in the overlap: they must separate
    }
    a.refine();
    b.refine();
  }
}

std::string AlgebraicNumber::to_string() const {
  if (exact_) return rat_str(*exact_);
  std::ostringstream os;
  os << "root(" << defining_->to_string() << ", (" << rat_str(lo_) << ", " << rat_str(hi_) << "))";
  return os.str();
}

namespace {

// The rational with smallest denominator in the closed interval [a, b].
Rational simplest_rational_in(const Rational& a, const Rational& b) {
  Integer fa, cb;
  mpz_cdiv_q(fa.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());  // ceil(a)
  mpz_fdiv_q(cb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());  // floor(b)
  if (fa <= cb) {
    if (sign_of(a) <= 0 && sign_of(b) >= 0) return Rational(0);
    return sign_of(a) > 0 ? Rational(fa) : Rational(cb);
  }
  Integer n;
  mpz_fdiv_q(n.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());  // floor(a)
  Rational fn(n);
  Rational inner = simplest_rational_in(Rational(1) / (b - fn), Rational(1) / (a - fn));
  return fn + Rational(1) / inner;
}

}  // namespace

std::vector<AlgebraicNumber> real_roots(const UPoly& p) {
  UPoly q = squarefree_upoly(p);
  std::vector<AlgebraicNumber> out;
  for (const auto& ri : isolate_real_roots(q)) {
    if (ri.exact) {
      out.emplace_back(ri.lo);
      continue;
    }
    AlgebraicNumber a(q, ri.lo, ri.hi);
    // Snap small-denominator rational roots to their exact value.
    for (int round = 0; round < 3 && !a.is_rational(); ++round) {
      a.refine_below(Rational(1, 4096));
      Rational cand = simplest_rational_in(a.lo(), a.hi());
      if (q.sign_at(cand) == 0 && cand > a.lo() && cand < a.hi()) {
        a = AlgebraicNumber(cand);
        break;
      }
      a.refine();
      a.refine();
    }
    out.push_back(std::move(a));
  }
  return out;
}

namespace {
QInterval horner_interval(const UPoly& q, const QInterval& x) {
  QInterval v = QInterval::point(0);
  for (size_t i = q.c.size(); i-- > 0;) v = v * x + QInterval::point(q.c[i]);
  return v;
}
}  // namespace

int upoly_sign_at(const UPoly& q, AlgebraicNumber& a) {
  if (q.is_zero()) return 0;
  if (a.is_rational()) return q.sign_at(a.rat());
  // cheap interval passes before certifying a zero
  for (int i = 0; i < 2; ++i) {
    if (auto s = horner_interval(q, a.enclosure()).sign()) return *s;
    a.refine();
  }
  UPoly g = gcd_upoly(q, a.defining());
  if (g.degree() >= 1) {
    std::vector<UPoly> chain = sturm_chain(g);
    if (sturm_count(chain, a.lo(), a.hi()) == 1) return 0;
  }
  while (true) {
    if (auto s = horner_interval(q, a.enclosure()).sign()) return *s;
    a.refine();
  }
}

// ----- NumberField -----

NumberField::NumberField(UPoly minimal, Rational lo, Rational hi)
    : min_(minimal.monic()), alpha_(std::move(minimal), std::move(lo), std::move(hi)) {}

NumberField NumberField::rational() {
  UPoly x;
  x.c = {Rational(0), Rational(1)};
  return NumberField(x, Rational(-1), Rational(1));
}

NumberField::Elem NumberField::inverse(const Elem& a) const {
  if (a.is_zero()) throw DomainError("NumberField: division by zero");
  if (degree() <= 1 || a.degree() == 0) return UPoly::constant(Rational(1) / a.c[0]);
  // extended Euclid: s*a + t*min = gcd = const (min irreducible); the pair
  // (r, s) is rescaled together to keep coefficients small
  UPoly r0 = a, r1 = min_, s0 = UPoly::constant(1), s1;
  while (!r1.is_zero()) {
    UPoly rem;
    UPoly q = r0.divmod(r1, rem);
    UPoly s2 = s0 - q * s1;
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
    if (!r1.is_zero()) {
      Integer num_gcd(0), den_lcm(1);
      for (const auto& c : r1.c) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
      }
      if (sign_of(num_gcd) != 0) {
        Rational scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (scale != 1) {
          r1 = r1 * scale;
          s1 = s1 * scale;
        }
      }
    }
  }
  if (r0.degree() != 0) throw DomainError("NumberField: minimal polynomial not irreducible");
  return reduce(s0 * (Rational(1) / r0.c[0]));
}

int NumberField::sign(const Elem& a) {
  if (a.is_zero()) return 0;
  if (a.degree() == 0) return sign_of(a.c[0]);
  return upoly_sign_at(a, alpha_);
}

QInterval NumberField::enclose(const Elem& a) {
  QInterval v = QInterval::point(0);
  QInterval x = alpha_.enclosure();
  for (size_t i = a.c.size(); i-- > 0;) v = v * x + QInterval::point(a.c[i]);
  return v;
}

Rational NumberField::abs_upper_bound(const Elem& a) {
  QInterval v = enclose(a);
  Rational m = rat_abs(v.lo);
  Rational h = rat_abs(v.hi);
  return m > h ? m : h;
}

// ----- NFPoly -----

void NFPoly::trim(const NumberField& K) {
  while (!c.empty() && K.is_zero(c.back())) c.pop_back();
}

std::string NFPoly::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << "; ";
    os << c[i].to_string("a");
  }
  os << "]";
  return os.str();
}

NFPoly nf_from_bivariate(NumberField& K, const Polynomial& p, const std::string& alpha_var,
                         const std::string& y_var) {
  NFPoly r;
  for (const auto& coef : p.coeffs_in(y_var)) {
    // each coefficient involves alpha_var only
    for (const auto& v : coef.vars())
      if (v != alpha_var) throw DomainError("nf_from_bivariate: stray variable " + v);
    r.c.push_back(K.reduce(UPoly::from_poly(coef)));
  }
  r.trim(K);
  return r;
}

NFPoly nf_from_upoly(const UPoly& p) {
  NFPoly r;
  for (const auto& q : p.c) r.c.push_back(UPoly::constant(q));
  // rationals never reduce
  while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
  return r;
}

NFPoly nf_add(const NumberField& K, const NFPoly& a, const NFPoly& b) {
  NFPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  r.trim(K);
  return r;
}

NFPoly nf_sub(const NumberField& K, const NFPoly& a, const NFPoly& b) {
  NFPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
  r.trim(K);
  return r;
}

NFPoly nf_mul(const NumberField& K, const NFPoly& a, const NFPoly& b) {
  NFPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, UPoly());
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + K.mul(a.c[i], b.c[j]);
  for (auto& e : r.c) e = K.reduce(e);
  r.trim(K);
  return r;
}

NFPoly nf_derivative(const NumberField& K, const NFPoly& a) {
  NFPoly r;
  if (a.c.size() <= 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.c[i] * Rational((long)i);
  r.trim(K);
  return r;
}

// Positive rational rescaling; keeps every downstream sign decision intact
// while stopping coefficient blowup in remainder sequences.
static void nf_normalize(NFPoly& p) {
  Integer num_gcd(0), den_lcm(1);
  for (const auto& e : p.c)
    for (const auto& q : e.c) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
    }
  if (sign_of(num_gcd) == 0) return;
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (scale == 1) return;
  for (auto& e : p.c)
    for (auto& q : e.c) {
      q *= scale;
      q.canonicalize();
    }
}

NFPoly nf_mod(const NumberField& K, const NFPoly& a, const NFPoly& d) {
  if (d.is_zero()) throw DomainError("nf_mod by zero");
  NFPoly r = a;
  r.trim(K);
  int dd = d.degree();
  NumberField::Elem lc_inv = K.inverse(d.c.back());
  while (r.degree() >= dd) {
    NumberField::Elem f = K.mul(r.c.back(), lc_inv);
    int k = r.degree() - dd;
    for (int i = 0; i <= dd; ++i)
      r.c[(size_t)(i + k)] = r.c[(size_t)(i + k)] - K.mul(f, d.c[(size_t)i]);
    r.c.pop_back();
    r.trim(K);
  }
  return r;
}

NFPoly nf_gcd(NumberField& K, const NFPoly& a, const NFPoly& b) {
  NFPoly p = a, q = b;
  p.trim(K);
  q.trim(K);
  nf_normalize(p);
  nf_normalize(q);
  while (!q.is_zero()) {
    NFPoly r = nf_mod(K, p, q);
    nf_normalize(r);
    p = q;
    q = r;
  }
  if (!p.is_zero()) {
    NumberField::Elem inv = K.inverse(p.c.back());
    for (auto& e : p.c) e = K.mul(e, inv);
    nf_normalize(p);
  }
  return p;
}

NFPoly nf_squarefree(NumberField& K, const NFPoly& in) {
  NFPoly a = in;
  nf_normalize(a);
  if (a.degree() <= 1) return a;
  NFPoly g = nf_gcd(K, a, nf_derivative(K, a));
  if (g.degree() == 0) return a;
  // exact division a / g
  NFPoly r = a, q;
  q.c.assign((size_t)(a.degree() - g.degree()) + 1, UPoly());
  NumberField::Elem lc_inv = K.inverse(g.c.back());
  while (r.degree() >= g.degree()) {
    NumberField::Elem f = K.mul(r.c.back(), lc_inv);
    int k = r.degree() - g.degree();
    q.c[(size_t)k] = f;
    for (int i = 0; i <= g.degree(); ++i)
      r.c[(size_t)(i + k)] = r.c[(size_t)(i + k)] - K.mul(f, g.c[(size_t)i]);
    r.c.pop_back();
    r.trim(K);
  }
  if (!r.is_zero()) throw DomainError("nf_squarefree: inexact division");
  q.trim(K);
  return q;
}

NumberField::Elem nf_eval(const NumberField& K, const NFPoly& a, const Rational& y) {
  NumberField::Elem v;
  for (size_t i = a.c.size(); i-- > 0;) v = K.reduce(v * y + a.c[i]);
  return v;
}

std::vector<NFPoly> nf_sturm_chain(NumberField& K, const NFPoly& p) {
  std::vector<NFPoly> chain;
  chain.push_back(p);
  nf_normalize(chain.back());
  NFPoly d = nf_derivative(K, p);
  if (d.is_zero()) return chain;
  nf_normalize(d);
  chain.push_back(std::move(d));
  while (true) {
    NFPoly r = nf_mod(K, chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    for (auto& e : r.c) e = -e;
    nf_normalize(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {
int count_vars_list(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

int nf_sign_variations_at(NumberField& K, const std::vector<NFPoly>& chain, const Rational& y) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(K.sign(nf_eval(K, p, y)));
  return count_vars_list(signs);
}

int nf_sturm_count(NumberField& K, const std::vector<NFPoly>& chain, const Rational& a,
                   const Rational& b) {
  if (!(a < b)) return 0;
  return nf_sign_variations_at(K, chain, a) - nf_sign_variations_at(K, chain, b);
}

namespace {

Rational nf_root_bound(NumberField& K, const NFPoly& p) {
  // Cauchy-style: 1 + max |c_i| / |lc|, using certified interval bounds.
  while (true) {
    QInterval lc = K.enclose(p.c.back());
    if (!lc.contains_zero()) {
      Rational lc_low = std::min(rat_abs(lc.lo), rat_abs(lc.hi));
      Rational m(0);
      for (size_t i = 0; i + 1 < p.c.size(); ++i) {
        Rational b = K.abs_upper_bound(p.c[i]);
        if (b > m) m = b;
      }
      return m / lc_low + 1;
    }
    K.alpha().refine();
  }
}

// Counts follow the half-open (a, b] convention, so an exact root at a
// midpoint is discovered by the segment having it as right endpoint.
void nf_isolate_rec(NumberField& K, const NFPoly& p, const std::vector<NFPoly>& chain,
                    const Rational& a, const Rational& b, std::vector<NFRoot>& out) {
  int n = nf_sturm_count(K, chain, a, b);
  if (n == 0) return;
  if (n == 1) {
    if (K.is_zero(nf_eval(K, p, b))) {
      out.push_back({b, b, b});
      return;
    }
    if (!K.is_zero(nf_eval(K, p, a))) {
      out.push_back({a, b, std::nullopt});
      return;
    }
    // `a` is a root of p but excluded from the count; bisect away from it.
    Rational m = (a + b) / 2;
    if (K.is_zero(nf_eval(K, p, m))) {
      out.push_back({m, m, m});
      return;
    }
    if (nf_sturm_count(K, chain, a, m) == 1)
      nf_isolate_rec(K, p, chain, a, m, out);
    else
      nf_isolate_rec(K, p, chain, m, b, out);
    return;
  }
  Rational m = (a + b) / 2;
  nf_isolate_rec(K, p, chain, a, m, out);
  nf_isolate_rec(K, p, chain, m, b, out);
}

}  // namespace

std::vector<NFRoot> nf_isolate_roots(NumberField& K, const NFPoly& p) {
  std::vector<NFRoot> out;
  NFPoly sf = nf_squarefree(K, p);
  if (sf.degree() < 1) return out;
  std::vector<NFPoly> chain = nf_sturm_chain(K, sf);
  Rational M = nf_root_bound(K, sf);
  nf_isolate_rec(K, sf, chain, -M, M, out);
  std::sort(out.begin(), out.end(), [](const NFRoot& x, const NFRoot& y) { return x.lo < y.lo; });
  return out;
}

bool nf_vanishes_at_root(NumberField& K, const NFPoly& v, const NFPoly& u_star, const NFRoot& r) {
  if (r.exact) return K.is_zero(nf_eval(K, v, *r.exact));
  NFPoly g = nf_gcd(K, v, u_star);
  if (g.degree() < 1) return false;
  std::vector<NFPoly> chain = nf_sturm_chain(K, g);
  return nf_sturm_count(K, chain, r.lo, r.hi) >= 1;
}

void nf_refine_root(NumberField& K, const NFPoly& u_star, NFRoot& r) {
  if (r.exact) {
    Rational w = (r.hi - r.lo) / 4;
    r.lo = *r.exact - w;
    r.hi = *r.exact + w;
    return;
  }
  Rational m = (r.lo + r.hi) / 2;
  NumberField::Elem em = nf_eval(K, u_star, m);
  if (K.is_zero(em)) {
    r.exact = m;
    Rational w = (r.hi - r.lo) / 4;
    r.lo = m - w;
    r.hi = m + w;
    return;
  }
  int sm = K.sign(em);
  int sl = K.sign(nf_eval(K, u_star, r.lo));
  if (sm == sl)
    r.lo = m;
  else
    r.hi = m;
}

Point Point::rational(const std::vector<std::string>& vars, const std::vector<Rational>& vals) {
  if (vars.size() != vals.size()) throw DomainError("Point: dimension mismatch");
  Point p;
  p.vars = vars;
  for (const auto& v : vals) p.coords.emplace_back(v);
  return p;
}

const Coordinate& Point::at(const std::string& var) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == var) return coords[i];
  throw DomainError("Point: no coordinate for " + var);
}

bool Point::all_rational() const {
  for (const auto& c : coords)
    if (!std::holds_alternative<Rational>(c) && !std::get<AlgebraicNumber>(c).is_rational())
      return false;
  return true;
}

std::string Point::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ", ";
    if (std::holds_alternative<Rational>(coords[i]))
      s += rat_str(std::get<Rational>(coords[i]));
    else
      s += std::get<AlgebraicNumber>(coords[i]).to_string();
  }
  return s + ")";
}

AlgebraicNumber normalize_to_irreducible(const AlgebraicNumber& a) {
  if (a.is_rational()) return a;
  for (const auto& [f, mult] : factor_upoly(a.defining())) {
    std::vector<UPoly> chain = sturm_chain(f);
    if (sturm_count(chain, a.lo(), a.hi()) == 1) return AlgebraicNumber(f, a.lo(), a.hi());
  }
  throw DomainError("normalize_to_irreducible: no factor isolates the root");
}

Rational eval_at_rational_point(const Polynomial& p, const Point& pt) {
  std::vector<std::pair<std::string, Rational>> subs;
  for (size_t i = 0; i < pt.vars.size(); ++i) {
    if (std::holds_alternative<Rational>(pt.coords[i]))
      subs.emplace_back(pt.vars[i], std::get<Rational>(pt.coords[i]));
    else if (std::get<AlgebraicNumber>(pt.coords[i]).is_rational())
      subs.emplace_back(pt.vars[i], std::get<AlgebraicNumber>(pt.coords[i]).rat());
    else
      throw DomainError("eval_at_rational_point: non-rational coordinate");
  }
  return p.eval(subs);
}

int sign_at_point(const Polynomial& p, Point& pt) {
  if (p.is_zero()) return 0;
  Polynomial q = p;
  std::vector<std::pair<std::string, AlgebraicNumber*>> alg;
  for (size_t i = 0; i < pt.vars.size(); ++i) {
    if (!q.uses_var(pt.vars[i])) continue;
    if (std::holds_alternative<Rational>(pt.coords[i])) {
      q = q.substitute(pt.vars[i], std::get<Rational>(pt.coords[i]));
    } else {
      AlgebraicNumber& a = std::get<AlgebraicNumber>(pt.coords[i]);
      if (a.is_rational())
        q = q.substitute(pt.vars[i], a.rat());
      else
        alg.emplace_back(pt.vars[i], &a);
    }
  }
  if (!q.is_constant() && alg.empty()) throw DomainError("sign_at_point: unbound variables");
  if (alg.empty()) return sign_of(q.constant_value());
  if (q.is_constant()) return sign_of(q.constant_value());
  if (alg.size() == 1) {
    UPoly u = UPoly::from_poly(q);
    return upoly_sign_at(u, *alg[0].second);
  }
  if (alg.size() > 2) throw DomainError("sign_at_point: more than two algebraic coordinates");
  // Two algebraic coordinates: work in Q(alpha)[y] for alpha the first one.
  AlgebraicNumber alpha = normalize_to_irreducible(*alg[0].second);
  AlgebraicNumber& beta = *alg[1].second;
  NumberField K(alpha.defining(), alpha.lo(), alpha.hi());
  NFPoly v = nf_from_bivariate(K, q, alg[0].first, alg[1].first);
  NFPoly e = nf_from_upoly(beta.defining());
  NFRoot r{beta.lo(), beta.hi(), beta.is_rational() ? std::optional<Rational>(beta.rat()) : std::nullopt};
  return nf_sign_at_root(K, v, e, r);
}

int nf_sign_at_q_root(NumberField& K, const NFPoly& v, AlgebraicNumber& beta) {
  if (v.is_zero()) return 0;
  if (beta.is_rational()) return K.sign(nf_eval(K, v, beta.rat()));
  auto interval_pass = [&]() -> std::optional<int> {
    QInterval acc = QInterval::point(0);
    QInterval y = beta.enclosure();
    for (size_t i = v.c.size(); i-- > 0;) acc = acc * y + K.enclose(v.c[i]);
    return acc.sign();
  };
  for (int i = 0; i < 2; ++i) {
    if (auto s = interval_pass()) return *s;
    beta.refine();
    K.alpha().refine();
  }
  // zero certification: g = gcd(v, e) divides e, whose only root in the
  // isolating interval is beta
  NFPoly e = nf_from_upoly(beta.defining());
  NFPoly g = nf_gcd(K, v, e);
  if (g.degree() >= 1) {
    std::vector<NFPoly> chain = nf_sturm_chain(K, g);
    if (nf_sturm_count(K, chain, beta.lo(), beta.hi()) >= 1) return 0;
  }
  while (true) {
    if (auto s = interval_pass()) return *s;
    beta.refine();
    K.alpha().refine();
  }
}

int nf_sign_at_root(NumberField& K, const NFPoly& v, const NFPoly& u_star, NFRoot& r) {
  if (v.is_zero()) return 0;
  if (r.exact) return K.sign(nf_eval(K, v, *r.exact));
  auto interval_pass = [&]() -> std::optional<int> {
    QInterval acc = QInterval::point(0);
    QInterval y(r.lo, r.hi);
    for (size_t i = v.c.size(); i-- > 0;) acc = acc * y + K.enclose(v.c[i]);
    return acc.sign();
  };
  for (int i = 0; i < 2; ++i) {
    if (auto s = interval_pass()) return *s;
    nf_refine_root(K, u_star, r);
    if (r.exact) return K.sign(nf_eval(K, v, *r.exact));
    K.alpha().refine();
  }
  if (nf_vanishes_at_root(K, v, u_star, r)) return 0;
  while (true) {
    if (auto s = interval_pass()) return *s;
    nf_refine_root(K, u_star, r);
    if (r.exact) return K.sign(nf_eval(K, v, *r.exact));
    K.alpha().refine();
  }
}

}  // namespace regulus
