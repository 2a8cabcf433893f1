#include "regulus/factor.hpp"

#include <algorithm>
#include <numeric>

namespace regulus {

namespace {

// ---------- dense integer polynomials (Zassenhaus machinery) ----------

using ZPoly = std::vector<Integer>;  // c[k] * x^k, trimmed

void ztrim(ZPoly& p) {
  while (!p.empty() && sign_of(p.back()) == 0) p.pop_back();
}
int zdeg(const ZPoly& p) { return (int)p.size() - 1; }

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  ztrim(r);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ztrim(r);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

void zmod_coeffs(ZPoly& p, const Integer& m) {
  for (auto& c : p) {
    c %= m;
    if (sign_of(c) < 0) c += m;
  }
  ztrim(p);
}

ZPoly zmulmod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly r = zmul(a, b);
  zmod_coeffs(r, m);
  return r;
}

// Centered representative in (-m/2, m/2].
void zcenter(ZPoly& p, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : p) {
    c %= m;
    if (sign_of(c) < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(p);
}

// Division by a monic divisor, coefficients mod m.
void zdivmod_monic_mod(const ZPoly& a, const ZPoly& d, const Integer& m, ZPoly& q, ZPoly& r) {
  if (d.empty() || d.back() != 1) throw FactorError("zdivmod: divisor not monic");
  r = a;
  zmod_coeffs(r, m);
  q.clear();
  int dd = zdeg(d);
  if (zdeg(r) >= dd) q.assign((size_t)(zdeg(r) - dd) + 1, Integer(0));
  while (zdeg(r) >= dd) {
    int k = zdeg(r) - dd;
    Integer f = r.back();
    q[(size_t)k] += f;
    for (int i = 0; i <= dd; ++i) r[(size_t)(i + k)] -= f * d[(size_t)i];
    zmod_coeffs(r, m);
  }
  zmod_coeffs(q, m);
}

// Exact division in Z[x] (returns false if not divisible).
bool zdivide_exact(const ZPoly& a, const ZPoly& d, ZPoly& q) {
  if (d.empty()) return false;
  ZPoly r = a;
  q.clear();
  int dd = zdeg(d);
  if (zdeg(r) >= dd) q.assign((size_t)(zdeg(r) - dd) + 1, Integer(0));
  while (zdeg(r) >= dd) {
    Integer rem;
    Integer f;
    mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), d.back().get_mpz_t());
    if (sign_of(rem) != 0) return false;
    int k = zdeg(r) - dd;
    q[(size_t)k] = f;
    for (int i = 0; i <= dd; ++i) r[(size_t)(i + k)] -= f * d[(size_t)i];
    ztrim(r);
  }
  return r.empty();
}

ZPoly zprimitive(const ZPoly& p) {
  Integer g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  ZPoly r = p;
  if (sign_of(g) != 0)
    for (auto& c : r) c /= g;
  if (!r.empty() && sign_of(r.back()) < 0)
    for (auto& c : r) c = -c;
  ztrim(r);
  return r;
}

ZPoly from_upoly_primitive(const UPoly& p) {
  Integer lcm(1);
  for (const auto& c : p.c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  ZPoly z(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    Rational q = p.c[i] * Rational(lcm);
    q.canonicalize();
    z[i] = q.get_num();
  }
  return zprimitive(z);
}

UPoly to_upoly(const ZPoly& z) {
  UPoly p;
  p.c.reserve(z.size());
  for (const auto& c : z) p.c.emplace_back(c);
  p.trim();
  return p;
}

// ---------- arithmetic mod a small prime ----------

using FpPoly = std::vector<long>;

void ftrim(FpPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
int fdeg(const FpPoly& p) { return (int)p.size() - 1; }

long fp_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  if (nr < 0) nr += p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return t;
}

FpPoly fmul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (long)((r[i + j] + (long long)a[i] * b[j]) % p);
  ftrim(r);
  return r;
}

FpPoly fsub(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (long)(((r[i] - (long long)b[i]) % p + p) % p);
  ftrim(r);
  return r;
}

void fdivmod(const FpPoly& a, const FpPoly& d, long p, FpPoly& q, FpPoly& r) {
  r = a;
  ftrim(r);
  q.clear();
  int dd = fdeg(d);
  if (dd < 0) throw FactorError("fdivmod by zero");
  long inv = fp_inv(d.back(), p);
  if (fdeg(r) >= dd) q.assign((size_t)(fdeg(r) - dd) + 1, 0);
  while (fdeg(r) >= dd) {
    int k = fdeg(r) - dd;
    long f = (long)(((long long)r.back() * inv) % p);
    q[(size_t)k] = f;
    for (int i = 0; i <= dd; ++i)
      r[(size_t)(i + k)] = (long)((((long long)r[(size_t)(i + k)] - (long long)f * d[(size_t)i]) % p + p) % p);
    ftrim(r);
  }
}

FpPoly fmod_poly(const FpPoly& a, const FpPoly& d, long p) {
  FpPoly q, r;
  fdivmod(a, d, p, q, r);
  return r;
}

FpPoly fgcd(FpPoly a, FpPoly b, long p) {
  ftrim(a);
  ftrim(b);
  while (!b.empty()) {
    FpPoly r = fmod_poly(a, b, p);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    long inv = fp_inv(a.back(), p);
    for (auto& c : a) c = (long)(((long long)c * inv) % p);
  }
  return a;
}

FpPoly fderiv(const FpPoly& a, long p) {
  FpPoly r;
  if (a.size() <= 1) return r;
  r.resize(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (long)(((long long)a[i] * (long long)(i % (size_t)p)) % p);
  ftrim(r);
  return r;
}

FpPoly fpowmod(const FpPoly& base, Integer e, const FpPoly& f, long p) {
  FpPoly r = {1}, b = fmod_poly(base, f, p);
  while (sign_of(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fmod_poly(fmul(r, b, p), f, p);
    b = fmod_poly(fmul(b, b, p), f, p);
    e >>= 1;
  }
  return r;
}

FpPoly to_fp(const ZPoly& z, long p) {
  FpPoly r(z.size());
  for (size_t i = 0; i < z.size(); ++i) {
    Integer c = z[i] % p;
    if (sign_of(c) < 0) c += p;
    r[i] = (long)c.get_ui();
  }
  ftrim(r);
  return r;
}

ZPoly fp_to_z(const FpPoly& f) {
  ZPoly z;
  z.reserve(f.size());
  for (long c : f) z.emplace_back(c);
  ztrim(z);
  return z;
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
std::vector<FpPoly> berlekamp(const FpPoly& f, long p) {
  int n = fdeg(f);
  if (n <= 1) return {f};
  std::vector<FpPoly> rows((size_t)n);
  FpPoly xp = fpowmod({0, 1}, Integer(p), f, p);
  FpPoly cur = {1};
  for (int i = 0; i < n; ++i) {
    rows[(size_t)i] = cur;
    cur = fmod_poly(fmul(cur, xp, p), f, p);
  }
  // Solve v (Q - I) = 0: set up M = (Q - I)^T and find its nullspace.
  std::vector<std::vector<long>> M((size_t)n, std::vector<long>((size_t)n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      long qij = (size_t)j < rows[(size_t)i].size() ? rows[(size_t)i][(size_t)j] : 0;
      M[(size_t)j][(size_t)i] = qij;
    }
  }
  for (int i = 0; i < n; ++i) M[(size_t)i][(size_t)i] = (M[(size_t)i][(size_t)i] + p - 1) % p;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int sel = -1;
    for (int r = rank; r < n; ++r)
      if (M[(size_t)r][(size_t)col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(M[(size_t)sel], M[(size_t)rank]);
    long inv = fp_inv(M[(size_t)rank][(size_t)col], p);
    for (int j = 0; j < n; ++j)
      M[(size_t)rank][(size_t)j] = (long)(((long long)M[(size_t)rank][(size_t)j] * inv) % p);
    for (int r = 0; r < n; ++r) {
      if (r == rank || M[(size_t)r][(size_t)col] == 0) continue;
      long fac = M[(size_t)r][(size_t)col];
      for (int j = 0; j < n; ++j)
        M[(size_t)r][(size_t)j] = (long)((((long long)M[(size_t)r][(size_t)j] -
                                           (long long)fac * M[(size_t)rank][(size_t)j]) %
                                              p +
                                          p) %
                                         p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot((size_t)n, false);
  for (int c : pivot_col) is_pivot[(size_t)c] = true;
  std::vector<FpPoly> basis;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[(size_t)col]) continue;
    FpPoly v((size_t)n, 0);
    v[(size_t)col] = 1;
    for (int r = 0; r < rank; ++r) {
      long val = M[(size_t)r][(size_t)col];
      if (val != 0) v[(size_t)pivot_col[(size_t)r]] = (p - val) % p;
    }
    ftrim(v);
    basis.push_back(v);
  }
  size_t nfactors = basis.size();
  std::vector<FpPoly> factors = {f};
  if (nfactors <= 1) return factors;
  for (const auto& v : basis) {
    if (factors.size() >= nfactors) break;
    if (fdeg(v) < 1) continue;
    std::vector<FpPoly> next;
    for (auto& u : factors) {
      if (fdeg(u) <= 1) {
        next.push_back(u);
        continue;
      }
      FpPoly rem_u = u;
      for (long c = 0; c < p && fdeg(rem_u) > 0; ++c) {
        FpPoly vc = fmod_poly(v, rem_u, p);
        if (vc.empty()) vc = {0};
        vc[0] = (vc[0] + p - c) % p;
        ftrim(vc);
        if (vc.empty()) continue;
        FpPoly g = fgcd(rem_u, vc, p);
        if (fdeg(g) > 0 && fdeg(g) < fdeg(rem_u)) {
          next.push_back(g);
          FpPoly q, r;
          fdivmod(rem_u, g, p, q, r);
          rem_u = q;
        }
      }
      if (fdeg(rem_u) > 0) next.push_back(rem_u);
    }
    factors = next;
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

// ---------- Hensel lifting over Z (vzG & Gerhard, Alg. 15.10) ----------

struct HenselPair {
  ZPoly g, h, s, t;
};

// One quadratic step: modulus m -> m^2.
void hensel_step(const ZPoly& f, HenselPair& P, const Integer& m) {
  Integer m2 = m * m;
  ZPoly e = zsub(f, zmul(P.g, P.h));
  zmod_coeffs(e, m2);
  ZPoly q, r;
  zdivmod_monic_mod(zmulmod(P.s, e, m2), P.h, m2, q, r);
  ZPoly gs = zadd(P.g, zadd(zmulmod(P.t, e, m2), zmulmod(q, P.g, m2)));
  zmod_coeffs(gs, m2);
  ZPoly hs = zadd(P.h, r);
  zmod_coeffs(hs, m2);
  ZPoly b = zsub(zadd(zmulmod(P.s, gs, m2), zmulmod(P.t, hs, m2)), ZPoly{Integer(1)});
  zmod_coeffs(b, m2);
  ZPoly c, d;
  zdivmod_monic_mod(zmulmod(P.s, b, m2), hs, m2, c, d);
  ZPoly ss = zsub(P.s, d);
  zmod_coeffs(ss, m2);
  ZPoly ts = zsub(P.t, zadd(zmulmod(P.t, b, m2), zmulmod(c, gs, m2)));
  zmod_coeffs(ts, m2);
  P.g = std::move(gs);
  P.h = std::move(hs);
  P.s = std::move(ss);
  P.t = std::move(ts);
}

// Lifts f = g*h (mod p), g,h monic and coprime mod p, to modulus >= bound.
HenselPair hensel_lift_pair(const ZPoly& f, const ZPoly& g, const ZPoly& h, long p,
                            const Integer& bound, Integer& modulus_out) {
  FpPoly gf = to_fp(g, p), hf = to_fp(h, p);
  FpPoly r0 = gf, r1 = hf, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    FpPoly q, r;
    fdivmod(r0, r1, p, q, r);
    FpPoly s2 = fsub(s0, fmul(q, s1, p), p);
    FpPoly t2 = fsub(t0, fmul(q, t1, p), p);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (fdeg(r0) != 0) throw FactorError("hensel: factors not coprime mod p");
  long inv = fp_inv(r0[0], p);
  for (auto& c : s0) c = (long)(((long long)c * inv) % p);
  for (auto& c : t0) c = (long)(((long long)c * inv) % p);
  HenselPair P{g, h, fp_to_z(s0), fp_to_z(t0)};
  Integer m(p);
  while (m < bound) {
    hensel_step(f, P, m);
    m = m * m;
  }
  modulus_out = m;
  return P;
}

// Lifts the full list of monic mod-p factors of monic f to modulus >= bound.
void hensel_multifactor(const ZPoly& f, const std::vector<FpPoly>& fs, size_t lo, size_t hi,
                        long p, const Integer& bound, std::vector<ZPoly>& out) {
  if (hi - lo == 1) {
    ZPoly z = f;
    out.push_back(std::move(z));
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  FpPoly A = {1}, B = {1};
  for (size_t i = lo; i < mid; ++i) A = fmul(A, fs[i], p);
  for (size_t i = mid; i < hi; ++i) B = fmul(B, fs[i], p);
  Integer m;
  HenselPair P = hensel_lift_pair(f, fp_to_z(A), fp_to_z(B), p, bound, m);
  hensel_multifactor(P.g, fs, lo, mid, p, bound, out);
  hensel_multifactor(P.h, fs, mid, hi, p, bound, out);
}

const long kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                        47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103,
                        107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
                        179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233};

// Factors a squarefree primitive integer polynomial with positive lc.
std::vector<ZPoly> factor_squarefree_z(const ZPoly& g) {
  int n = zdeg(g);
  if (n <= 1) return {g};
  const Integer& L = g.back();
  // Monicize: M(x) = L^(n-1) g(x/L), integer and monic.
  ZPoly M((size_t)n + 1);
  {
    Integer power(1);  // L^(n-1-i) built downward
    std::vector<Integer> pw((size_t)n + 1, Integer(1));
    for (int i = n - 1; i >= 0; --i) pw[(size_t)i] = pw[(size_t)i + 1] * L;
    for (int i = 0; i <= n; ++i) {
      // coefficient of x^i: g_i * L^(n-1-i); for i=n this is g_n / L = 1
      if (i == n)
        M[(size_t)i] = 1;
      else
        M[(size_t)i] = g[(size_t)i] * pw[(size_t)(i + 1)];
    }
  }
  // Among the first few primes keeping M squarefree, pick the one with the
  // fewest modular factors (keeps the recombination subsets small).
  long p = 0;
  std::vector<FpPoly> fs;
  int tried = 0;
  for (long cand : kPrimes) {
    FpPoly Mc = to_fp(M, cand);
    if (fdeg(Mc) != n) continue;
    FpPoly d = fderiv(Mc, cand);
    if (d.empty()) continue;
    if (fdeg(fgcd(Mc, d, cand)) != 0) continue;
    std::vector<FpPoly> cand_fs = berlekamp(Mc, cand);
    if (cand_fs.size() == 1) return {g};  // irreducible
    if (p == 0 || cand_fs.size() < fs.size()) {
      p = cand;
      fs = std::move(cand_fs);
    }
    if (++tried >= 3 || fs.size() <= 2) break;
  }
  if (p == 0) throw FactorError("no suitable prime for factorization");
  // Coefficient bound for monic factors of M: 2^n * ||M||_1.
  Integer norm1(0);
  for (const auto& c : M) norm1 += abs(c);
  Integer bound = (norm1 << (unsigned)n) * 2 + 1;
  std::vector<ZPoly> lifted;
  hensel_multifactor(M, fs, 0, fs.size(), p, bound, lifted);
  Integer m(p);
  while (m < bound) m = m * m;
  // Recombination.
  std::vector<ZPoly> result;
  std::vector<size_t> active(lifted.size());
  std::iota(active.begin(), active.end(), 0);
  ZPoly rem = M;
  size_t take = 1;
  while (2 * take <= active.size()) {
    // iterate subsets of `active` of size `take` in lexicographic order
    std::vector<size_t> idx(take);
    std::iota(idx.begin(), idx.end(), 0);
    bool found = false;
    while (true) {
      ZPoly cand = {Integer(1)};
      for (size_t k : idx) cand = zmulmod(cand, lifted[active[k]], m);
      zcenter(cand, m);
      ZPoly quot;
      if (zdivide_exact(rem, cand, quot)) {
        result.push_back(cand);
        rem = quot;
        std::vector<size_t> na;
        for (size_t i = 0; i < active.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) na.push_back(active[i]);
        active = na;
        found = true;
        break;
      }
      // next subset
      long pos = (long)take - 1;
      while (pos >= 0 && idx[(size_t)pos] == active.size() - take + (size_t)pos) --pos;
      if (pos < 0) break;
      ++idx[(size_t)pos];
      for (size_t j = (size_t)pos + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++take;
  }
  if (zdeg(rem) >= 1) result.push_back(rem);
  // Undo the monicization: factor of g = primitive(C(L x)).
  std::vector<ZPoly> out;
  for (const auto& C : result) {
    ZPoly t = C;
    Integer pw(1);
    for (size_t i = 0; i < t.size(); ++i) {
      t[i] *= pw;
      pw *= L;
    }
    out.push_back(zprimitive(t));
  }
  std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return out;
}

// Yun's squarefree decomposition for primitive integer polynomials, as UPoly.
std::vector<std::pair<UPoly, int>> yun_decompose(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly fp = f.derivative();
  UPoly a = gcd_upoly(f, fp);
  UPoly rem;
  UPoly b = f.divmod(a, rem);
  UPoly c = fp.divmod(a, rem);
  UPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UPoly g = gcd_upoly(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b.divmod(g, rem);
    c = d.divmod(g, rem);
    d = c - b.derivative();
  }
  return out;
}

}  // namespace

std::vector<std::pair<UPoly, int>> factor_upoly(const UPoly& p) {
  if (p.is_zero()) throw FactorError("factor: zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() == 0) return out;
  UPoly mon = p.monic();
  for (const auto& [g, mult] : yun_decompose(mon)) {
    ZPoly gz = from_upoly_primitive(g);
    for (const auto& irr : factor_squarefree_z(gz)) out.emplace_back(to_upoly(irr), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    for (size_t i = a.first.c.size(); i-- > 0;)
      if (a.first.c[i] != b.first.c[i]) return a.first.c[i] < b.first.c[i];
    return a.second < b.second;
  });
  return out;
}

namespace {

// ---------- bivariate factorization: y-adic Hensel lifting ----------

// Polynomials in (Q[y] / y^K)[x]: x-dense with truncated UPoly coefficients.
struct TB {
  int K = 1;
  std::vector<UPoly> cx;

  void trim() {
    while (!cx.empty() && cx.back().is_zero()) cx.pop_back();
  }
  int deg() const { return (int)cx.size() - 1; }
};

UPoly utrunc(const UPoly& u, int K) {
  UPoly r = u;
  if ((int)r.c.size() > K) r.c.resize((size_t)K);
  r.trim();
  return r;
}

TB tb_mul(const TB& a, const TB& b) {
  TB r;
  r.K = a.K;
  if (a.cx.empty() || b.cx.empty()) return r;
  r.cx.assign(a.cx.size() + b.cx.size() - 1, UPoly());
  for (size_t i = 0; i < a.cx.size(); ++i)
    for (size_t j = 0; j < b.cx.size(); ++j)
      r.cx[i + j] = r.cx[i + j] + utrunc(a.cx[i] * b.cx[j], r.K);
  for (auto& u : r.cx) u = utrunc(u, r.K);
  r.trim();
  return r;
}

TB tb_add(const TB& a, const TB& b) {
  TB r;
  r.K = a.K;
  r.cx.resize(std::max(a.cx.size(), b.cx.size()));
  for (size_t i = 0; i < a.cx.size(); ++i) r.cx[i] = a.cx[i];
  for (size_t i = 0; i < b.cx.size(); ++i) r.cx[i] = utrunc(r.cx[i] + b.cx[i], r.K);
  r.trim();
  return r;
}

TB tb_sub(const TB& a, const TB& b) {
  TB r;
  r.K = a.K;
  r.cx.resize(std::max(a.cx.size(), b.cx.size()));
  for (size_t i = 0; i < a.cx.size(); ++i) r.cx[i] = a.cx[i];
  for (size_t i = 0; i < b.cx.size(); ++i) r.cx[i] = utrunc(r.cx[i] - b.cx[i], r.K);
  r.trim();
  return r;
}

TB tb_one(int K) {
  TB r;
  r.K = K;
  r.cx = {UPoly::constant(1)};
  return r;
}

// Truncate all coefficients to y^j (the current modulus power).
TB tb_mod_yj(const TB& a, int j) {
  TB r = a;
  for (auto& u : r.cx) u = utrunc(u, j);
  r.trim();
  return r;
}

bool tb_is_monic(const TB& a) {
  return !a.cx.empty() && a.cx.back().degree() == 0 && a.cx.back().c[0] == 1;
}

// Division by a monic-in-x divisor; all coefficient arithmetic truncated.
void tb_divmod_monic(const TB& a, const TB& d, TB& q, TB& r) {
  if (!tb_is_monic(d)) throw FactorError("tb_divmod: divisor not monic");
  r = a;
  q.K = a.K;
  q.cx.clear();
  int dd = d.deg();
  if (r.deg() >= dd) q.cx.assign((size_t)(r.deg() - dd) + 1, UPoly());
  while (r.deg() >= dd) {
    int k = r.deg() - dd;
    UPoly f = r.cx.back();
    q.cx[(size_t)k] = q.cx[(size_t)k] + f;
    for (int i = 0; i <= dd; ++i)
      r.cx[(size_t)(i + k)] = utrunc(r.cx[(size_t)(i + k)] - f * d.cx[(size_t)i], r.K);
    r.trim();
    if (r.deg() >= dd + k + 1) throw FactorError("tb division failed");
  }
  q.trim();
}

TB tb_from_polynomial(const Polynomial& p, const std::string& xv, int K) {
  TB r;
  r.K = K;
  for (const auto& c : p.coeffs_in(xv)) r.cx.push_back(utrunc(UPoly::from_poly(c), K));
  r.trim();
  return r;
}

Polynomial tb_to_polynomial(const TB& a, const std::string& xv, const std::string& yv) {
  Polynomial r;
  Polynomial x = Polynomial::variable(xv);
  for (size_t i = a.cx.size(); i-- > 0;) r = r * x + a.cx[i].to_poly(yv);
  return r;
}

struct TBHenselPair {
  TB g, h, s, t;
};

// Quadratic y-adic Hensel step: modulus y^j -> y^(2j).
void tb_hensel_step(const TB& f, TBHenselPair& P, int j) {
  int j2 = std::min(2 * j, f.K);
  auto M = [&](const TB& t) { return tb_mod_yj(t, j2); };
  TB e = M(tb_sub(f, tb_mul(P.g, P.h)));
  TB q, r;
  tb_divmod_monic(M(tb_mul(P.s, e)), P.h, q, r);
  TB gs = M(tb_add(P.g, tb_add(tb_mul(P.t, e), tb_mul(q, P.g))));
  TB hs = M(tb_add(P.h, r));
  TB b = M(tb_sub(tb_add(tb_mul(P.s, gs), tb_mul(P.t, hs)), tb_one(f.K)));
  TB c, d;
  tb_divmod_monic(M(tb_mul(P.s, b)), hs, c, d);
  TB ss = M(tb_sub(P.s, d));
  TB ts = M(tb_sub(P.t, tb_add(tb_mul(P.t, b), tb_mul(c, gs))));
  P.g = gs;
  P.h = hs;
  P.s = ss;
  P.t = ts;
}

// f monic in x over Q[y]/y^K; g0,h0 monic coprime over Q with f(x,0)=g0*h0.
TBHenselPair tb_hensel_lift_pair(const TB& f, const UPoly& g0, const UPoly& h0) {
  // Bezout over Q: s g0 + t h0 = 1.
  UPoly r0 = g0, r1 = h0, s0 = UPoly::constant(1), s1, t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    UPoly rem;
    UPoly q = r0.divmod(r1, rem);
    UPoly s2 = s0 - q * s1;
    UPoly t2 = t0 - q * t1;
    r0 = r1;
    r1 = rem;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.degree() != 0) throw FactorError("bivariate hensel: factors not coprime");
  Rational inv = Rational(1) / r0.c[0];
  s0 = s0 * inv;
  t0 = t0 * inv;
  auto lift_const = [&](const UPoly& u) {
    TB t;
    t.K = f.K;
    for (const auto& c : u.c) t.cx.push_back(UPoly::constant(c));
    t.trim();
    return t;
  };
  TBHenselPair P{lift_const(g0), lift_const(h0), lift_const(s0), lift_const(t0)};
  int j = 1;
  while (j < f.K) {
    tb_hensel_step(f, P, j);
    j = std::min(2 * j, f.K);
  }
  return P;
}

void tb_hensel_multifactor(const TB& f, const std::vector<UPoly>& fs, size_t lo, size_t hi,
                           std::vector<TB>& out) {
  if (hi - lo == 1) {
    out.push_back(f);
    return;
  }
  size_t mid = lo + (hi - lo) / 2;
  UPoly A = UPoly::constant(1), B = UPoly::constant(1);
  for (size_t i = lo; i < mid; ++i) A = A * fs[i];
  for (size_t i = mid; i < hi; ++i) B = B * fs[i];
  TBHenselPair P = tb_hensel_lift_pair(f, A, B);
  tb_hensel_multifactor(P.g, fs, lo, mid, out);
  tb_hensel_multifactor(P.h, fs, mid, hi, out);
}

// Factors a squarefree primitive (w.r.t. x-content) bivariate polynomial with
// deg_x >= 1; `xv` is the main variable.
std::vector<Polynomial> factor_squarefree_bivariate(const Polynomial& f, const std::string& xv,
                                                    const std::string& yv) {
  int n = f.degree_in(xv);
  Polynomial L = f.leading_coeff_in(xv);
  // Specialize y at a point where lc does not vanish and f stays squarefree.
  Rational a;
  UPoly u0;
  bool found = false;
  for (int k = 0; k <= 80 && !found; ++k) {
    Rational cand((k + 1) / 2 * ((k % 2) ? 1 : -1));
    if (sign_of(L.substitute(yv, cand).constant_value()) == 0) continue;
    Polynomial s = f.substitute(yv, cand);
    UPoly su = UPoly::from_poly(s);
    if (su.degree() != n) continue;
    if (gcd_upoly(su, su.derivative()).degree() != 0) continue;
    a = cand;
    u0 = su;
    found = true;
  }
  if (!found) throw FactorError("bivariate factor: no good specialization found");
  Polynomial F = f.substitute(yv, Polynomial::variable(yv) + Polynomial::constant(a));
  // Monicize in x: F*(x,y) = L(y)^(n-1) F(x / L(y), y).
  Polynomial Lsh = L.substitute(yv, Polynomial::variable(yv) + Polynomial::constant(a));
  std::vector<Polynomial> cs = F.coeffs_in(xv);
  Polynomial Fstar;
  {
    std::vector<Polynomial> cs2((size_t)n + 1);
    // cs2[i] = cs[i] * Lsh^(n-1-i)
    std::vector<Polynomial> pows((size_t)n + 1);
    pows[(size_t)n] = Polynomial::constant(1);
    for (int i = n - 1; i >= 0; --i) pows[(size_t)i] = pows[(size_t)i + 1] * Lsh;
    for (int i = 0; i <= n; ++i) {
      if (i == n)
        cs2[(size_t)i] = Polynomial::constant(1);
      else
        cs2[(size_t)i] = ((size_t)i < cs.size() ? cs[(size_t)i] : Polynomial()) * pows[(size_t)(i + 1)];
    }
    Fstar = Polynomial::from_coeffs_in(xv, cs2);
  }
  int K = Fstar.degree_in(yv) + 1;
  TB ft = tb_from_polynomial(Fstar, xv, K);
  // Factor the specialized monic polynomial over Q.
  Polynomial F0 = Fstar.substitute(yv, Rational(0));
  UPoly F0u = UPoly::from_poly(F0);
  std::vector<UPoly> parts;
  for (const auto& [irr, mult] : factor_upoly(F0u)) {
    if (mult != 1) throw FactorError("bivariate factor: specialization not squarefree");
    parts.push_back(irr.monic());
  }
  if (parts.size() == 1) return {f};
  std::sort(parts.begin(), parts.end(), [](const UPoly& A, const UPoly& B) {
    if (A.degree() != B.degree()) return A.degree() < B.degree();
    for (size_t i = A.c.size(); i-- > 0;)
      if (A.c[i] != B.c[i]) return A.c[i] < B.c[i];
    return false;
  });
  std::vector<TB> lifted;
  tb_hensel_multifactor(ft, parts, 0, parts.size(), lifted);
  // Recombination by subsets; candidates are exact factors once truncation
  // degree exceeds the true y-degrees.
  std::vector<size_t> active(lifted.size());
  std::iota(active.begin(), active.end(), 0);
  Polynomial rem_poly = Fstar;
  std::vector<Polynomial> monic_factors;
  size_t take = 1;
  while (2 * take <= active.size()) {
    std::vector<size_t> idx(take);
    std::iota(idx.begin(), idx.end(), 0);
    bool found_factor = false;
    while (true) {
      TB cand = tb_one(K);
      for (size_t k : idx) cand = tb_mul(cand, lifted[active[k]]);
      Polynomial cp = tb_to_polynomial(cand, xv, yv);
      auto q = try_divide(rem_poly, cp);
      if (q) {
        monic_factors.push_back(cp);
        rem_poly = *q;
        std::vector<size_t> na;
        for (size_t i = 0; i < active.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) na.push_back(active[i]);
        active = na;
        found_factor = true;
        break;
      }
      long pos = (long)take - 1;
      while (pos >= 0 && idx[(size_t)pos] == active.size() - take + (size_t)pos) --pos;
      if (pos < 0) break;
      ++idx[(size_t)pos];
      for (size_t j = (size_t)pos + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found_factor) ++take;
  }
  if (rem_poly.degree_in(xv) >= 1) monic_factors.push_back(rem_poly);
  // Map factors of F* back to factors of f: undo x -> L x (which introduces a
  // content in y: a power of L), then y -> y - a.
  std::vector<Polynomial> out;
  for (const auto& G : monic_factors) {
    Polynomial t = G.substitute(xv, Polynomial::variable(xv) * Lsh);
    Polynomial cont;
    for (const auto& c : t.coeffs_in(xv)) cont = gcd_poly(cont, c);
    if (!cont.is_constant()) t = *try_divide(t, cont);
    t = t.primitive();
    t = t.substitute(yv, Polynomial::variable(yv) - Polynomial::constant(a));
    out.push_back(t.primitive());
  }
  return out;
}

void push_factor(std::vector<std::pair<Polynomial, int>>& out, const Polynomial& f, int mult) {
  Polynomial p = f.primitive();
  for (auto& [g, m] : out)
    if (g == p) {
      m += mult;
      return;
    }
  out.emplace_back(p, mult);
}

// multiplicity of irreducible u in p
int multiplicity_of(Polynomial p, const Polynomial& u) {
  int m = 0;
  while (true) {
    auto q = try_divide(p, u);
    if (!q) break;
    p = *q;
    ++m;
  }
  return m;
}

}  // namespace

std::vector<std::pair<Polynomial, int>> factor_polynomial(const Polynomial& p, int cap) {
  if (p.is_zero()) throw FactorError("factor: zero polynomial");
  std::vector<std::pair<Polynomial, int>> out;
  if (p.is_constant()) return out;
  size_t nv = p.vars().size();
  if (nv == 1) {
    const std::string& v = p.vars()[0];
    for (const auto& [u, m] : factor_upoly(UPoly::from_poly(p))) push_factor(out, u.to_poly(v), m);
    return out;
  }
  if (nv > 2) throw FactorError("factorization supports at most 2 variables");
  if (p.total_degree() > cap)
    throw FactorError("factorization incomplete: total degree " +
                      std::to_string(p.total_degree()) + " exceeds cap " + std::to_string(cap));
  const std::string xv = p.vars()[0], yv = p.vars()[1];
  Polynomial work = p.primitive();
  // Split off univariate factors (contents w.r.t. each variable) first.
  for (const std::string& v : {xv, yv}) {
    if (!work.uses_var(v)) continue;
    Polynomial cont;
    for (const auto& c : work.coeffs_in(v)) cont = gcd_poly(cont, c);
    if (!cont.is_constant()) {
      for (const auto& [g, m] : factor_polynomial(cont, cap)) push_factor(out, g, m);
      auto q = try_divide(work, cont);
      work = *q;
    }
  }
  if (work.is_constant()) return out;
  if (work.vars().size() == 1) {
    for (const auto& [g, m] : factor_polynomial(work, cap)) push_factor(out, g, m);
    return out;
  }
  Polynomial sf = squarefree_part(work);
  // Prefer the variable of smaller degree as the lifting main variable.
  std::string mainv = xv, otherv = yv;
  if (sf.degree_in(xv) > sf.degree_in(yv)) std::swap(mainv, otherv);
  std::vector<Polynomial> irr = factor_squarefree_bivariate(sf.primitive(), mainv, otherv);
  for (const auto& u : irr) push_factor(out, u, multiplicity_of(work, u.primitive()));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return Polynomial::compare(a.first, b.first) < 0;
  });
  return out;
}

const std::vector<std::pair<Polynomial, int>>& FactorCache::factors(const Polynomial& p) {
  Polynomial key = p.primitive();
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  auto res = factor_polynomial(key, cap_);
  return memo_.emplace(std::move(key), std::move(res)).first->second;
}

}  // namespace regulus
