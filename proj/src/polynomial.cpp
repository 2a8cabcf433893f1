#include "regulus/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace regulus {

bool Polynomial::GrLexDesc::operator()(const Exponents& a, const Exponents& b) const {
  // Descending graded lex: higher total degree first, then lex on exponents.
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da > db;
  return a > b;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  if (sign_of(c) != 0) p.terms_.emplace(Exponents{}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.vars_ = {name};
  p.terms_.emplace(Exponents{1}, Rational(1));
  return p;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

bool Polynomial::uses_var(const std::string& v) const {
  return std::find(vars_.begin(), vars_.end(), v) != vars_.end();
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const Exponents& e = terms_.begin()->first;
  return (int)std::accumulate(e.begin(), e.end(), 0L);
}

int Polynomial::degree_in(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return is_zero() ? -1 : 0;
  size_t idx = it - vars_.begin();
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (sign_of(c) != 0) terms_.emplace(e, c);
  } else {
    it->second += c;
    if (sign_of(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::canonicalize_vars() {
  if (vars_.empty()) return;
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> nv;
  std::vector<size_t> keep;
  for (size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) {
      nv.push_back(vars_[i]);
      keep.push_back(i);
    }
  TermMap nt;
  for (const auto& [e, c] : terms_) {
    Exponents ne(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
    nt.emplace(std::move(ne), c);
  }
  vars_ = std::move(nv);
  terms_ = std::move(nt);
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> m;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

Polynomial embed(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.vars_ == vars) return p;
  Polynomial r;
  r.vars_ = vars;
  std::vector<size_t> pos(p.vars_.size());
  for (size_t i = 0; i < p.vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), p.vars_[i]);
    if (it == vars.end() || *it != p.vars_[i])
      throw DomainError("embed: variable " + p.vars_[i] + " missing from context");
    pos[i] = it - vars.begin();
  }
  for (const auto& [e, c] : p.terms_) {
    Polynomial::Exponents ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<std::string> mv = merge_vars(vars_, o.vars_);
  Polynomial a = embed(*this, mv), b = embed(o, mv);
  for (const auto& [e, c] : b.terms_) a.add_term(e, c);
  a.canonicalize_vars();
  return a;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<std::string> mv = merge_vars(vars_, o.vars_);
  Polynomial a = embed(*this, mv), b = embed(o, mv);
  Polynomial r;
  r.vars_ = mv;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(mv.size());
      for (size_t i = 0; i < mv.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  r.canonicalize_vars();
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

Polynomial Polynomial::derivative(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return Polynomial();
  size_t idx = it - vars_.begin();
  Polynomial r;
  r.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents ne = e;
    ne[idx] -= 1;
    r.add_term(ne, c * e[idx]);
  }
  r.canonicalize_vars();
  return r;
}

Polynomial Polynomial::substitute(const std::string& var, const Rational& value) const {
  return substitute(var, Polynomial::constant(value));
}

Polynomial Polynomial::substitute(const std::string& var, const Polynomial& value) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return *this;
  std::vector<Polynomial> cs = coeffs_in(var);
  // Horner in the substituted variable.
  Polynomial r;
  for (size_t i = cs.size(); i-- > 0;) r = r * value + cs[i];
  return r;
}

Rational Polynomial::eval(const std::vector<std::pair<std::string, Rational>>& point) const {
  Polynomial p = *this;
  for (const auto& [v, q] : point)
    if (p.uses_var(v)) p = p.substitute(v, q);
  if (!p.is_constant()) throw DomainError("eval: unbound variables remain");
  return p.constant_value();
}

QInterval Polynomial::eval_interval(const std::vector<std::pair<std::string, QInterval>>& box) const {
  QInterval acc = QInterval::point(0);
  for (const auto& [e, c] : terms_) {
    QInterval t = QInterval::point(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = std::find_if(box.begin(), box.end(),
                             [&](const auto& kv) { return kv.first == vars_[i]; });
      if (it == box.end()) throw DomainError("eval_interval: unbound variable " + vars_[i]);
      t = t * it->second.pow((unsigned)e[i]);
    }
    acc = acc + t;
  }
  return acc;
}

std::vector<Polynomial> Polynomial::coeffs_in(const std::string& var) const {
  int d = degree_in(var);
  if (d < 0) d = 0;
  std::vector<Polynomial> cs((size_t)d + 1);
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) {
    cs[0] = *this;
    return cs;
  }
  size_t idx = it - vars_.begin();
  for (auto& p : cs) p.vars_ = vars_;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    int k = ne[idx];
    ne[idx] = 0;
    cs[(size_t)k].add_term(ne, c);
  }
  for (auto& p : cs) p.canonicalize_vars();
  return cs;
}

Polynomial Polynomial::from_coeffs_in(const std::string& var, const std::vector<Polynomial>& coeffs) {
  Polynomial x = Polynomial::variable(var);
  Polynomial r;
  for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

Polynomial Polynomial::leading_coeff_in(const std::string& var) const {
  if (is_zero()) return Polynomial();
  std::vector<Polynomial> cs = coeffs_in(var);
  return cs.back();
}

Polynomial Polynomial::primitive(Rational* unit) const {
  if (is_zero()) {
    if (unit) *unit = 1;
    return *this;
  }
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sign_of(terms_.begin()->second) < 0) scale = -scale;
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) {
    c *= scale;
    c.canonicalize();
  }
  if (unit) *unit = Rational(1) / scale;
  return r;
}

int Polynomial::compare(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_) return a.vars_ < b.vars_ ? -1 : 1;
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return GrLexDesc()(ia->first, ib->first) ? 1 : -1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms_.end()) return 1;
  if (ib != b.terms_.end()) return -1;
  return 0;
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational ac = rat_abs(c);
    if (first) {
      if (sign_of(c) < 0) os << "-";
      first = false;
    } else {
      os << (sign_of(c) < 0 ? " - " : " + ");
    }
    bool has_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
    bool coeff_shown = !has_var || ac != 1;
    if (coeff_shown) os << rat_str(ac);
    bool need_star = coeff_shown;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

Polynomial pow(const Polynomial& base, unsigned e) {
  Polynomial r = Polynomial::constant(1);
  Polynomial b = base;
  while (e > 0) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

std::optional<Polynomial> try_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Polynomial();
  std::vector<std::string> mv = merge_vars(a.vars(), b.vars());
  Polynomial r = embed(a, mv), d = embed(b, mv), q;
  const auto& ltd = d.terms().begin()->first;
  const Rational& lcd = d.terms().begin()->second;
  while (!r.is_zero()) {
    Polynomial re = embed(r, mv);
    const auto& ltr = re.terms().begin()->first;
    Polynomial::Exponents qe(mv.size());
    for (size_t i = 0; i < mv.size(); ++i) {
      qe[i] = ltr[i] - ltd[i];
      if (qe[i] < 0) return std::nullopt;
    }
    Polynomial mono;
    {
      Polynomial m;
      // build monomial term qe with coefficient lcr/lcd
      m = Polynomial::constant(re.terms().begin()->second / lcd);
      for (size_t i = 0; i < mv.size(); ++i)
        if (qe[i] > 0) m = m * pow(Polynomial::variable(mv[i]), (unsigned)qe[i]);
      mono = m;
    }
    q = q + mono;
    r = r - mono * d;
  }
  return q;
}

Polynomial prem(const Polynomial& a, const Polynomial& b, const std::string& var) {
  int db = b.degree_in(var);
  if (db < 0) throw DomainError("prem: zero divisor");
  Polynomial r = a;
  int dr = r.degree_in(var);
  if (dr < db) return r;
  Polynomial lc_b = b.leading_coeff_in(var);
  int steps = dr - db + 1;
  Polynomial xv = Polynomial::variable(var);
  int done = 0;
  while (!r.is_zero() && (dr = r.degree_in(var)) >= db) {
    Polynomial lc_r = r.leading_coeff_in(var);
    r = lc_b * r - lc_r * pow(xv, (unsigned)(dr - db)) * b;
    ++done;
  }
  // Normalize to the exact prem definition lc(b)^(da-db+1)*a mod b.
  for (; done < steps; ++done) r = lc_b * r;
  return r;
}

Polynomial gcd_poly(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(1);
  std::vector<std::string> mv = merge_vars(a.vars(), b.vars());
  const std::string& v = mv.back();

  // content/primitive-part split w.r.t. v
  auto content_in = [&](const Polynomial& p) {
    std::vector<Polynomial> cs = p.coeffs_in(v);
    Polynomial g;
    for (const auto& c : cs) g = gcd_poly(g, c);
    return g;
  };
  auto pp_in = [&](const Polynomial& p, const Polynomial& cont) {
    auto q = try_divide(p, cont);
    if (!q) throw DomainError("gcd: content division failed");
    return *q;
  };

  if (a.degree_in(v) == 0 || b.degree_in(v) == 0) {
    // v occurs in at most one of them: gcd divides the v-free contents.
    Polynomial ca = a.degree_in(v) == 0 ? a : content_in(a);
    Polynomial cb = b.degree_in(v) == 0 ? b : content_in(b);
    return gcd_poly(ca, cb);
  }

  Polynomial ca = content_in(a), cb = content_in(b);
  Polynomial p = pp_in(a, ca), q = pp_in(b, cb);
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
  // Primitive PRS (desk scale; contents are re-stripped each step).
  while (!q.is_zero()) {
    Polynomial r = prem(p, q, v);
    p = q;
    if (r.is_zero()) {
      q = Polynomial();
    } else {
      Polynomial cr = content_in(r);
      q = pp_in(r, cr).primitive();
    }
  }
  Polynomial g = gcd_poly(ca, cb) * p.primitive();
  return g.primitive();
}

Polynomial resultant(const Polynomial& a, const Polynomial& b, const std::string& var) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  int da = a.degree_in(var), db = b.degree_in(var);
  if (da == 0 && db == 0) return Polynomial::constant(1);
  if (da == 0) return pow(a, (unsigned)db);
  if (db == 0) return pow(b, (unsigned)da);
  int s = 1;
  Polynomial A = a, B = b;
  if (da < db) {
    std::swap(A, B);
    std::swap(da, db);
    if ((da & 1) && (db & 1)) s = -s;
  }
  // Subresultant PRS (Cohen, Alg. 3.3.7).
  Polynomial g = Polynomial::constant(1), h = Polynomial::constant(1);
  Polynomial res;
  while (true) {
    int dA = A.degree_in(var), dB = B.degree_in(var);
    int delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = -s;
    Polynomial R = prem(A, B, var);
    A = B;
    {
      Polynomial divisor = g * pow(h, (unsigned)delta);
      auto q = try_divide(R, divisor);
      if (!q) throw DomainError("resultant: subresultant division failed");
      B = *q;
    }
    g = A.leading_coeff_in(var);
    if (delta >= 1) {
      Polynomial num = pow(g, (unsigned)delta);
      auto q = try_divide(num, pow(h, (unsigned)(delta - 1)));
      if (!q) throw DomainError("resultant: h update failed");
      h = *q;
    }
    if (B.is_zero()) return Polynomial();
    if (B.degree_in(var) == 0) {
      int dAf = A.degree_in(var);
      Polynomial num = pow(B, (unsigned)dAf);
      auto q = try_divide(num, pow(h, (unsigned)(dAf - 1)));
      if (!q) throw DomainError("resultant: final division failed");
      res = *q;
      break;
    }
  }
  return s < 0 ? -res : res;
}

Polynomial discriminant_like(const Polynomial& p, const std::string& var) {
  Polynomial d = p.derivative(var);
  if (d.is_zero()) return Polynomial::constant(1);
  return resultant(p, d, var);
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero() || p.is_constant()) return p;
  Polynomial d;  // gcd of all partial derivatives
  for (const auto& v : p.vars()) d = gcd_poly(d, p.derivative(v));
  Polynomial c = gcd_poly(p, d);
  if (c.is_constant()) return p.primitive();
  auto q = try_divide(p, c);
  if (!q) throw DomainError("squarefree_part: division failed");
  return q->primitive();
}

namespace {

// Recursive-descent parser for the polynomial text syntax.
struct PolyParser {
  const std::string& s;
  size_t i = 0;

  explicit PolyParser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("polynomial parse error at position " + std::to_string(i) + ": " + msg +
                     " in \"" + s + "\"");
  }

  Polynomial parse_expr() {
    Polynomial r = parse_term();
    while (true) {
      skip_ws();
      if (eat('+'))
        r = r + parse_term();
      else if (eat('-'))
        r = r - parse_term();
      else
        break;
    }
    return r;
  }

  Polynomial parse_term() {
    Polynomial r = parse_factor();
    while (true) {
      skip_ws();
      if (eat('*')) {
        r = r * parse_factor();
      } else if (i < s.size() && (std::isalpha((unsigned char)s[i]) || s[i] == '(')) {
        // implicit multiplication: 2x, 3(x+1), x y
        r = r * parse_factor();
      } else {
        break;
      }
    }
    return r;
  }

  Polynomial parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    if (eat('+')) return parse_factor();
    Polynomial base = parse_atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
      if (start == i) fail("expected integer exponent");
      unsigned long e = std::stoul(s.substr(start, i - start));
      return pow(base, (unsigned)e);
    }
    return base;
  }

  Polynomial parse_atom() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input");
    if (eat('(')) {
      Polynomial r = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    char c = s[i];
    if (std::isdigit((unsigned char)c)) {
      size_t start = i;
      while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
      std::string num = s.substr(start, i - start);
      skip_ws();
      if (i < s.size() && s[i] == '/') {
        // rational literal a/b (only when followed by digits)
        size_t save = i;
        ++i;
        skip_ws();
        size_t ds = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (ds == i) {
          i = save;  // not a literal; leave '/' for caller (unsupported op)
          fail("'/' is not an operator; use rational literals like 1/2");
        }
        return Polynomial::constant(parse_rational(num + "/" + s.substr(ds, i - ds)));
      }
      return Polynomial::constant(parse_rational(num));
    }
    if (std::islower((unsigned char)c)) {
      size_t start = i;
      ++i;
      while (i < s.size() &&
             (std::islower((unsigned char)s[i]) || std::isdigit((unsigned char)s[i]) || s[i] == '_'))
        ++i;
      return Polynomial::variable(s.substr(start, i - start));
    }
    fail("unexpected character");
  }
};

}  // namespace

Polynomial parse_poly(const std::string& text) {
  PolyParser p(text);
  Polynomial r = p.parse_expr();
  p.skip_ws();
  if (p.i != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace regulus
