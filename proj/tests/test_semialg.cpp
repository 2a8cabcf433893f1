#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regulus/semialg.hpp"

using namespace regulus;

namespace {
Polynomial P(const std::string& s) { return parse_poly(s); }
SASet S2(const std::string& s) { return parse_saset(s, {"x", "y"}); }
SASet S1(const std::string& s) { return parse_saset(s, {"x"}); }
std::mt19937 rng(4242);
Rational rrat() {
  std::uniform_int_distribution<int> dn(-9, 9), dd(1, 4);
  Rational q(dn(rng), dd(rng));
  q.canonicalize();
  return q;
}
}  // namespace

TEST_CASE("membership") {
  CHECK(member(S1("x > 0"), Point::rational({"x"}, {Rational(1)})));
  CHECK(!member(S1("x > 0"), Point::rational({"x"}, {Rational(0)})));
  CHECK(member(S2("x^2 + y^2 - x^3 = 0"), Point::rational({"x", "y"}, {Rational(0), Rational(0)})));
  CHECK(!member(S2("x^3 - x^2 - y^2 > 0"), Point::rational({"x", "y"}, {Rational(0), Rational(0)})));
  // set on an ambient variety: the cubic
  SASet on_cubic = S2("y > 0");
  on_cubic.ambient_variety = {P("x^2 + y^2 - x^3")};
  CHECK(!member(on_cubic, Point::rational({"x", "y"}, {Rational(0), Rational(0)})));
  CHECK(member(on_cubic, Point::rational({"x", "y"}, {Rational(2), Rational(2)})));
}

TEST_CASE("set parser and de-morgan invariance") {
  SASet a = S2("(x > 0 and y >= 0) or not (x^2 + y^2 - 1 < 0)");
  SASet b = S2("not ((x <= 0 or y < 0) and x^2 + y^2 - 1 < 0)");
  for (int t = 0; t < 500; ++t) {
    Point pt = Point::rational({"x", "y"}, {rrat(), rrat()});
    CHECK(member(a, pt) == member(b, pt));
  }
  CHECK_THROWS_AS(parse_saset("x >", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_saset("x > 1", {"x"}), ParseError);
}

TEST_CASE("member agrees with the adapted CAD") {
  CadCache cache;
  SASet s = S2("x^2 + y^2 - 1 < 0 and y - x^2 > 0");
  auto D = adapted_cad(s, cache);
  auto sel = cells_of(*D, s);
  for (int t = 0; t < 500; ++t) {
    std::vector<Rational> pt = {rrat(), rrat()};
    int c = D->locate(pt);
    CHECK((bool)sel[(size_t)c] == member(s, Point::rational({"x", "y"}, pt)));
  }
}

TEST_CASE("boundary in one variable") {
  CadCache cache;
  SASet s = S1("x > 0");
  SASet bd = boundary(s, cache);
  CHECK(sets_equal(bd, S1("x = 0"), cache));
}

TEST_CASE("boundary of the open unit disk is the circle") {
  CadCache cache;
  SASet disk = S2("x^2 + y^2 - 1 < 0");
  SASet bd = boundary(disk, cache);
  CHECK(sets_equal(bd, S2("x^2 + y^2 - 1 = 0"), cache));
  // boundary is inside the closure and misses the interior
  auto D = adapted_cad(disk, cache, bd.all_polys());
  auto sel = cells_of(*D, disk);
  auto bsel = cells_of(*D, bd);
  auto cl = D->closure_of(sel);
  auto inter = interior_cells(*D, sel, std::vector<char>(D->cells.size(), 1));
  for (size_t i = 0; i < bsel.size(); ++i) {
    if (bsel[i]) {
      CHECK(cl[i]);
      CHECK(!inter[i]);
    }
  }
}

TEST_CASE("boundary of the plane regulous set S(1 - x^3/(x^2+y^2))") {
  CadCache cache;
  // S = {x^2+y^2-x^3 > 0} plus the origin where the extension equals 1
  SASet s = S2("x^2 + y^2 - x^3 > 0 or (x = 0 and y = 0)");
  SASet bd = boundary(s, cache);
  // the boundary is the one-dimensional branch of the cubic; the isolated
  // point only shows up in the Zariski closure of the boundary
  SASet branch = S2("x^2 + y^2 - x^3 = 0 and not (x = 0 and y = 0)");
  CHECK(sets_equal(bd, branch, cache));
  CHECK(!member(bd, Point::rational({"x", "y"}, {Rational(0), Rational(0)})));
  Variety v = zariski_closure(bd, cache);
  REQUIRE(v.gens.size() == 1);
  CHECK(v.gens[0] == P("x^2 + y^2 - x^3").primitive());
  SASet vs = v.as_saset();
  vs.vars = {"x", "y"};
  CHECK(member(vs, Point::rational({"x", "y"}, {Rational(0), Rational(0)})));
}

TEST_CASE("zariski closures") {
  CadCache cache;
  SUBCASE("a rational point") {
    SASet pt = S2("x - 1 = 0 and y = 0");
    Variety v = zariski_closure(pt, cache);
    REQUIRE(v.gens.size() == 2);
    bool has_y = false, has_x1 = false;
    for (const auto& g : v.gens) {
      if (g == P("y").primitive()) has_y = true;
      if (g == P("x - 1").primitive()) has_x1 = true;
    }
    CHECK(has_y);
    CHECK(has_x1);
  }
  SUBCASE("half of the cubic branch closes to the full cubic") {
    SASet half = S2("x^2 + y^2 - x^3 = 0 and y > 0");
    Variety v = zariski_closure(half, cache);
    REQUIRE(v.gens.size() == 1);
    CHECK(v.gens[0] == P("x^2 + y^2 - x^3").primitive());
  }
  SUBCASE("empty set") {
    SASet e = S2("x^2 + 1 = 0");
    Variety v = zariski_closure(e, cache);
    REQUIRE(v.gens.size() == 1);
    CHECK(v.gens[0].is_constant());
  }
  SUBCASE("closure contains the set pointwise") {
    SASet s = S2("x^2 + y^2 - 1 = 0 and x > 0");
    Variety v = zariski_closure(s, cache);
    auto D = adapted_cad(s, cache);
    auto sel = cells_of(*D, s);
    for (size_t c = 0; c < sel.size(); ++c) {
      if (!sel[c]) continue;
      for (const auto& g : v.gens) CHECK(D->sign_at_sample((int)c, g) == 0);
    }
  }
}

TEST_CASE("is_zariski_closed") {
  CadCache cache;
  // the 1-dimensional branch F of the cubic: not Zariski closed (its closure
  // adds the isolated point)
  SASet branch = S2("x^2 + y^2 - x^3 = 0 and not (x = 0 and y = 0)");
  CHECK(!is_zariski_closed(branch, cache));
  CHECK(is_zariski_closed(S2("x^2 + y^2 - x^3 = 0"), cache));
  CHECK(is_zariski_closed(S2("x = 0 and y = 0"), cache));
}

TEST_CASE("principality criterion") {
  CadCache cache;
  SUBCASE("plane set with an isolated boundary-closure point: not principal") {
    SASet s = S2("x^2 + y^2 - x^3 > 0 or (x = 0 and y = 0)");
    auto rep = is_principal_open(s, cache);
    CHECK(!rep.principal);
    REQUIRE(rep.witness.has_value());
    // the witness is exactly the origin
    CHECK(eval_at_rational_point(P("x"), *rep.witness) == 0);
    CHECK(eval_at_rational_point(P("y"), *rep.witness) == 0);
  }
  SUBCASE("plane minus a point: principal") {
    SASet s = S2("not (x - 1 = 0 and y = 0)");
    auto rep = is_principal_open(s, cache);
    CHECK(rep.principal);
  }
  SUBCASE("half plane: principal") {
    SASet s = S1("x > 0");
    auto rep = is_principal_open(s, cache);
    CHECK(rep.principal);
  }
  SUBCASE("non-open input is rejected") {
    SASet s = S2("x >= 0");
    CHECK_THROWS_AS(is_principal_open(s, cache), DomainError);
  }
}
