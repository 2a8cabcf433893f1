#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regulus/algebraic.hpp"
#include "regulus/factor.hpp"
#include "regulus/polynomial.hpp"
#include "regulus/upoly.hpp"

using namespace regulus;

namespace {

Polynomial P(const std::string& s) { return parse_poly(s); }

// Sylvester-matrix resultant via cofactor expansion: the independent oracle.
Polynomial sylvester_resultant(const Polynomial& a, const Polynomial& b, const std::string& var) {
  int m = a.degree_in(var), n = b.degree_in(var);
  if (m <= 0 && n <= 0) return Polynomial::constant(1);
  std::vector<Polynomial> ac = a.coeffs_in(var), bc = b.coeffs_in(var);
  int size = m + n;
  std::vector<std::vector<Polynomial>> M((size_t)size, std::vector<Polynomial>((size_t)size));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[(size_t)r][(size_t)(r + k)] = ac[(size_t)(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[(size_t)(n + r)][(size_t)(r + k)] = bc[(size_t)(n - k)];
  // cofactor expansion (sizes stay small in these tests)
  std::function<Polynomial(std::vector<std::vector<Polynomial>>&)> det =
      [&](std::vector<std::vector<Polynomial>>& mat) -> Polynomial {
    size_t s = mat.size();
    if (s == 1) return mat[0][0];
    Polynomial acc;
    for (size_t j = 0; j < s; ++j) {
      if (mat[0][j].is_zero()) continue;
      std::vector<std::vector<Polynomial>> sub(s - 1, std::vector<Polynomial>(s - 1));
      for (size_t r = 1; r < s; ++r) {
        size_t cc = 0;
        for (size_t c = 0; c < s; ++c) {
          if (c == j) continue;
          sub[r - 1][cc++] = mat[r][c];
        }
      }
      Polynomial term = mat[0][j] * det(sub);
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  };
  return det(M);
}

std::mt19937 rng(20240817);

Rational rand_rat(int num_range = 9, int den_range = 4) {
  std::uniform_int_distribution<int> dn(-num_range, num_range), dd(1, den_range);
  Rational q(dn(rng), dd(rng));
  q.canonicalize();
  return q;
}

Polynomial rand_poly(const std::vector<std::string>& vars, int deg, int terms) {
  Polynomial p;
  std::uniform_int_distribution<int> de(0, deg);
  for (int t = 0; t < terms; ++t) {
    Polynomial mono = Polynomial::constant(rand_rat());
    int budget = deg;
    for (const auto& v : vars) {
      int e = std::uniform_int_distribution<int>(0, budget)(rng);
      budget -= e;
      if (e) mono = mono * pow(Polynomial::variable(v), (unsigned)e);
    }
    p = p + mono;
  }
  return p;
}

}  // namespace

TEST_CASE("arithmetic on canonical forms") {
  CHECK(P("(x+y) + (x-y)") == P("2x"));
  CHECK(P("(x^2+y^2)*(x^2+y^2)") == P("x^4 + 2x^2*y^2 + y^4"));
  CHECK(P("(x^2+y^2-x^3) - (x^2+y^2)") == P("-x^3"));
  CHECK(P("0") == Polynomial());
  CHECK(P("1/2 * x + 1/2 * x") == P("x"));
  CHECK(P("x*y") == P("y*x"));
}

TEST_CASE("ring axioms on random triples") {
  std::vector<std::string> vars = {"x", "y"};
  for (int i = 0; i < 60; ++i) {
    Polynomial a = rand_poly(vars, 3, 3), b = rand_poly(vars, 3, 3), c = rand_poly(vars, 3, 3);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Polynomial());
  }
}

TEST_CASE("parser round trip") {
  for (const char* s : {"x^3 - x^2 - y^2", "1/2", "-x + 1/2", "x^2*y - 3*y + 7",
                        "(y^2 - x^2*(x - 1))*(x + y^2)"}) {
    Polynomial p = P(s);
    CHECK(parse_poly(p.to_string()) == p);
  }
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("x ** 2"), ParseError);
}

TEST_CASE("evaluation and signs at points") {
  Polynomial cubic = P("x^2 + y^2 - x^3");
  Point origin = Point::rational({"x", "y"}, {Rational(0), Rational(0)});
  CHECK(sign_at_point(cubic, origin) == 0);
  CHECK(eval_at_rational_point(cubic, origin) == 0);

  Polynomial f = P("x^3 - x^2 - y^2");
  Point p21 = Point::rational({"x", "y"}, {Rational(2), Rational(1)});
  CHECK(sign_at_point(f, p21) == 1);
  CHECK(eval_at_rational_point(f, p21) == 3);

  // x at x = sqrt(2), represented by (x^2 - 2, (1, 2))
  UPoly def{{Rational(-2), Rational(0), Rational(1)}};
  Point sq2{{"x"}, {AlgebraicNumber(def, Rational(1), Rational(2))}};
  CHECK(sign_at_point(P("x"), sq2) == 1);
  CHECK(sign_at_point(P("x^2 - 2"), sq2) == 0);
  CHECK(sign_at_point(P("x - 2"), sq2) == -1);
}

TEST_CASE("sign at points with two algebraic coordinates") {
  UPoly s2{{Rational(-2), Rational(0), Rational(1)}};  // sqrt2
  UPoly s3{{Rational(-3), Rational(0), Rational(1)}};  // sqrt3
  AlgebraicNumber a(s2, Rational(1), Rational(2));
  AlgebraicNumber b(s3, Rational(1), Rational(2));
  Point pt{{"x", "y"}, {a, b}};
  CHECK(sign_at_point(P("x^2 - 2"), pt) == 0);
  CHECK(sign_at_point(P("y^2 - 3"), pt) == 0);
  CHECK(sign_at_point(P("x*y"), pt) == 1);
  CHECK(sign_at_point(P("x^2*y^2 - 6"), pt) == 0);
  CHECK(sign_at_point(P("x - y"), pt) == -1);
  CHECK(sign_at_point(P("x^2 + y^2 - 5"), pt) == 0);
  CHECK(sign_at_point(P("x^2 + y^2 - 5 + x"), pt) == 1);
}

TEST_CASE("root isolation") {
  SUBCASE("x^2 - 2") {
    auto roots = real_roots(UPoly::from_poly(P("x^2 - 2")));
    REQUIRE(roots.size() == 2);
    // Sturm oracle: the two roots live in (-2,-1) and (1,2), one per interval.
    auto chain = sturm_chain(UPoly::from_poly(P("x^2 - 2")));
    CHECK(sturm_count(chain, Rational(-2), Rational(-1)) == 1);
    CHECK(sturm_count(chain, Rational(1), Rational(2)) == 1);
    CHECK(sturm_count_all(chain) == 2);
    CHECK(roots[0].compare_rational(Rational(-2)) > 0);
    CHECK(roots[0].compare_rational(Rational(-1)) < 0);
    CHECK(roots[1].compare_rational(Rational(1)) > 0);
    CHECK(roots[1].compare_rational(Rational(2)) < 0);
    CHECK(sturm_count(chain, roots[0].lo(), roots[0].hi()) == 1);
    CHECK(sturm_count(chain, roots[1].lo(), roots[1].hi()) == 1);
    CHECK_FALSE(roots[0].is_rational());
    CHECK_FALSE(roots[1].is_rational());
  }
  SUBCASE("x^2 + 1 has no real roots") {
    CHECK(real_roots(UPoly::from_poly(P("x^2 + 1"))).empty());
  }
  SUBCASE("multiplicities dropped: x^3 - x^2") {
    auto roots = real_roots(UPoly::from_poly(P("x^3 - x^2")));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].is_rational());
    CHECK(roots[0].rat() == 0);
    CHECK(roots[1].is_rational());
    CHECK(roots[1].rat() == 1);
  }
  SUBCASE("planted rational roots are recovered exactly") {
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<int> dn(1, 4);
      int k = dn(rng) + 1;
      std::vector<Rational> planted;
      Polynomial prod = Polynomial::constant(1);
      for (int i = 0; i < k; ++i) {
        Rational r = rand_rat(6, 3);
        if (std::find(planted.begin(), planted.end(), r) == planted.end()) planted.push_back(r);
        prod = prod * (Polynomial::variable("x") - Polynomial::constant(r));
      }
      std::sort(planted.begin(), planted.end());
      auto roots = real_roots(UPoly::from_poly(prod));
      REQUIRE(roots.size() == planted.size());
      for (size_t i = 0; i < roots.size(); ++i) {
        CHECK(roots[i].is_rational());
        CHECK(roots[i].rat() == planted[i]);
      }
    }
  }
  SUBCASE("ordering and comparisons") {
    // order: -sqrt3 < -sqrt2 < sqrt2 < 3/2 < sqrt3
    auto roots = real_roots(UPoly::from_poly(P("(x^2 - 2)*(x^2 - 3)*(x - 3/2)")));
    REQUIRE(roots.size() == 5);
    for (size_t i = 0; i + 1 < roots.size(); ++i)
      CHECK(AlgebraicNumber::compare(roots[i], roots[i + 1]) < 0);
    CHECK(roots[3].is_rational());
    CHECK(roots[3].rat() == Rational(3, 2));
    auto again = real_roots(UPoly::from_poly(P("x^2 - 2")));
    AlgebraicNumber sqrt2 = roots[2];
    CHECK(AlgebraicNumber::compare(sqrt2, again[1]) == 0);
    AlgebraicNumber three_half = roots[3];
    CHECK(AlgebraicNumber::compare(three_half, again[1]) != 0);
  }
}

TEST_CASE("resultants match the Sylvester determinant") {
  SUBCASE("documented examples") {
    CHECK(resultant(P("y^2 - x"), P("y"), "y") == P("-x"));
    CHECK(resultant(P("y - 1"), P("y + 1"), "y") == P("2"));
    CHECK(resultant(P("x^2 + y^2"), P("y"), "y") == P("x^2"));
  }
  SUBCASE("random bivariate pairs vs oracle") {
    for (int i = 0; i < 25; ++i) {
      Polynomial a = rand_poly({"x", "y"}, 3, 4), b = rand_poly({"x", "y"}, 2, 3);
      if (a.degree_in("y") < 1 || b.degree_in("y") < 1) continue;
      Polynomial prs = resultant(a, b, "y");
      Polynomial syl = sylvester_resultant(a, b, "y");
      CHECK(prs == syl);
    }
  }
  SUBCASE("vanishes exactly on common roots") {
    Polynomial r = resultant(P("y^2 - x"), P("y - x"), "y");
    // common root in y iff x = x^2
    CHECK(r.substitute("x", Rational(0)).constant_value() == 0);
    CHECK(r.substitute("x", Rational(1)).constant_value() == 0);
    CHECK(r.substitute("x", Rational(2)).constant_value() != 0);
  }
}

TEST_CASE("gcd and squarefree part") {
  Polynomial a = P("(x + y)^2 * (x - y)");
  Polynomial b = P("(x + y) * (x + 1)");
  Polynomial g = gcd_poly(a, b);
  CHECK(g == P("x + y"));
  CHECK(squarefree_part(a) == P("(x + y)*(x - y)").primitive());
  CHECK(gcd_poly(P("x^2 - 2"), P("x^2 - 3")).is_constant());
}

TEST_CASE("factorization") {
  SUBCASE("reducible curve from the gallery") {
    Polynomial p = P("(y^2 - x^2*(x - 1))*(x + y^2)");
    auto fs = factor_polynomial(p);
    REQUIRE(fs.size() == 2);
    bool saw_cubic = false, saw_parabola = false;
    for (const auto& [f, m] : fs) {
      CHECK(m == 1);
      if (f == P("y^2 - x^3 + x^2").primitive()) saw_cubic = true;
      if (f == P("x + y^2").primitive()) saw_parabola = true;
    }
    CHECK(saw_cubic);
    CHECK(saw_parabola);
  }
  SUBCASE("difference of squares") {
    auto fs = factor_polynomial(P("x^2 - y^2"));
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].second == 1);
    CHECK(fs[1].second == 1);
    Polynomial prod = fs[0].first * fs[1].first;
    CHECK(prod.primitive() == P("x^2 - y^2").primitive());
  }
  SUBCASE("x^2 + y^2 is irreducible over Q") {
    auto fs = factor_polynomial(P("x^2 + y^2"));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].second == 1);
    CHECK(fs[0].first == P("x^2 + y^2").primitive());
  }
  SUBCASE("univariate with multiplicities") {
    auto fs = factor_polynomial(P("(x - 1)^2 * (x^2 - 2) * 6"));
    REQUIRE(fs.size() == 2);
    Polynomial rebuilt = Polynomial::constant(1);
    for (const auto& [f, m] : fs) rebuilt = rebuilt * pow(f, (unsigned)m);
    CHECK(rebuilt.primitive() == P("(x - 1)^2 * (x^2 - 2)").primitive());
  }
  SUBCASE("cyclotomic-ish and swapped main variable") {
    auto fs = factor_polynomial(P("x^4 - 4"));
    REQUIRE(fs.size() == 2);
    auto gs = factor_polynomial(P("(y - x^2)*(y + x^2)"));
    REQUIRE(gs.size() == 2);
  }
  SUBCASE("random products rebuild and pass the irreducibility smoke test") {
    for (int trial = 0; trial < 10; ++trial) {
      Polynomial a = rand_poly({"x", "y"}, 2, 3) + Polynomial::variable("x");
      Polynomial b = rand_poly({"x", "y"}, 2, 3) + Polynomial::variable("y");
      if (a.is_constant() || b.is_constant()) continue;
      Polynomial p = a * b;
      if (p.total_degree() > 8) continue;
      auto fs = factor_polynomial(p);
      Polynomial rebuilt = Polynomial::constant(1);
      for (const auto& [f, m] : fs) {
        rebuilt = rebuilt * pow(f, (unsigned)m);
        auto refactored = factor_polynomial(f);
        CHECK(refactored.size() == 1);  // irreducibility smoke test
        CHECK(refactored[0].second == 1);
      }
      CHECK(rebuilt.primitive() == p.primitive());
    }
  }
  SUBCASE("degree cap reports incompleteness") {
    Polynomial big = pow(P("x + y"), 17) + Polynomial::constant(1);
    CHECK_THROWS_AS(factor_polynomial(big), FactorError);
  }
}

TEST_CASE("sign of eval agrees with 256-bit dyadic interval arithmetic") {
  // Oracle: outward-rounded dyadic interval evaluation at 2^-256 granularity.
  auto dyadic_round = [](const Rational& q, bool up) {
    Integer scaled;
    Integer two256 = Integer(1) << 256;
    Rational t = q * Rational(two256);
    if (up)
      mpz_cdiv_q(scaled.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    else
      mpz_fdiv_q(scaled.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return Rational(scaled) / Rational(two256);
  };
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Polynomial p = rand_poly({"x", "y"}, 4, 4);
    Rational x = rand_rat(20, 7), y = rand_rat(20, 7);
    Point pt = Point::rational({"x", "y"}, {x, y});
    int exact = p.is_zero() ? 0 : sign_at_point(p, pt);
    QInterval ix(dyadic_round(x, false), dyadic_round(x, true));
    QInterval iy(dyadic_round(y, false), dyadic_round(y, true));
    QInterval v = p.eval_interval({{"x", ix}, {"y", iy}});
    QInterval rounded(dyadic_round(v.lo, false), dyadic_round(v.hi, true));
    auto s = rounded.sign();
    if (s) {
      CHECK(*s == exact);
      ++checked;
    } else {
      CHECK(rounded.contains_zero());  // oracle indecisive only near zero
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("number field arithmetic over Q(sqrt2)") {
  UPoly minimal{{Rational(-2), Rational(0), Rational(1)}};
  NumberField K(minimal, Rational(1), Rational(2));
  // (sqrt2 + 1)(sqrt2 - 1) = 1
  NumberField::Elem a{{Rational(1), Rational(1)}};   // 1 + alpha
  NumberField::Elem b{{Rational(-1), Rational(1)}};  // -1 + alpha
  CHECK(K.mul(a, b) == UPoly::constant(1));
  CHECK(K.sign(a) == 1);
  CHECK(K.sign(b) == 1);  // sqrt2 - 1 > 0
  NumberField::Elem inv = K.inverse(a);
  CHECK(K.mul(inv, a) == UPoly::constant(1));
  // roots of (y^2 - alpha^2) are +-alpha ~ +-1.414
  Polynomial p = P("y^2 - x^2");
  NFPoly f = nf_from_bivariate(K, p, "x", "y");
  auto roots = nf_isolate_roots(K, f);
  REQUIRE(roots.size() == 2);
  NFPoly yminus = nf_from_bivariate(K, P("y - x"), "x", "y");
  NFPoly u_star = nf_squarefree(K, f);
  CHECK(nf_vanishes_at_root(K, yminus, u_star, roots[1]));
  CHECK(!nf_vanishes_at_root(K, yminus, u_star, roots[0]));
  NFRoot r0 = roots[0];
  CHECK(nf_sign_at_root(K, yminus, u_star, r0) == -1);
}
