#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regulus/regulous.hpp"

using namespace regulus;

namespace {
Polynomial P(const std::string& s) { return parse_poly(s); }

// f = 1 - x^3/(x^2+y^2) extended by 1 at the origin, on the plane
RegulousTower plane_cubic_tower() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::whole({"x", "y"}), P("x^2 + y^2 - x^3"), P("x^2 + y^2")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("1"), P("1")});
  return t;
}

// f = y^2/x on the cusp Z(x^2 - y^3), extended by 0 at the origin
RegulousTower cusp_tower() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::of({"x", "y"}, {P("x^2 - y^3")}), P("y^2"), P("x")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("0"), P("1")});
  return t;
}

RegulousTower cartan_tower() {
  RegulousTower t;
  t.vars = {"x", "y", "z"};
  t.levels.push_back({Variety::whole({"x", "y", "z"}), P("z*(x^2 + y^2) - x^3"), P("x^2 + y^2")});
  t.levels.push_back({Variety::of({"x", "y", "z"}, {P("x"), P("y")}), P("z"), P("1")});
  return t;
}
}  // namespace

TEST_CASE("tower validation") {
  CadCache cache;
  auto ok = validate_tower(plane_cubic_tower(), cache);
  CHECK(ok.ok);
  auto cu = validate_tower(cusp_tower(), cache);
  CHECK(cu.ok);
  auto ca = validate_tower(cartan_tower(), cache);
  CHECK(ca.ok);
  // malformed: q vanishes outside the next level
  RegulousTower bad;
  bad.vars = {"x", "y"};
  bad.levels.push_back({Variety::whole({"x", "y"}), P("1"), P("x^2 + y^2 - 1")});
  bad.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("1"), P("1")});
  auto br = validate_tower(bad, cache);
  CHECK(!br.ok);
  // polar locus of codimension 1 draws the lint warning
  RegulousTower thin;
  thin.vars = {"x", "y"};
  thin.levels.push_back({Variety::whole({"x", "y"}), P("x*y"), P("x")});
  thin.levels.push_back({Variety::of({"x", "y"}, {P("x")}), P("y"), P("1")});
  auto tr = validate_tower(thin, cache);
  CHECK(!tr.warnings.empty());
}

TEST_CASE("tower evaluation") {
  CadCache cache;
  RegulousTower f = plane_cubic_tower();
  SUBCASE("value 1 at the isolated point, level 1") {
    auto r = eval_tower(f, Point::rational({"x", "y"}, {Rational(0), Rational(0)}), cache);
    CHECK(r.level_used == 1);
    REQUIRE(std::holds_alternative<Rational>(r.value));
    CHECK(std::get<Rational>(r.value) == 1);
  }
  SUBCASE("regular value at (2,2), level 0") {
    auto r = eval_tower(f, Point::rational({"x", "y"}, {Rational(2), Rational(2)}), cache);
    CHECK(r.level_used == 0);
    REQUIRE(std::holds_alternative<Rational>(r.value));
    CHECK(std::get<Rational>(r.value) == 0);
  }
  SUBCASE("cusp value at (1,1)") {
    auto r = eval_tower(cusp_tower(), Point::rational({"x", "y"}, {Rational(1), Rational(1)}), cache);
    CHECK(r.level_used == 0);
    REQUIRE(std::holds_alternative<Rational>(r.value));
    CHECK(std::get<Rational>(r.value) == 1);
  }
  SUBCASE("points off the domain are rejected") {
    CHECK_THROWS_AS(
        eval_tower(cusp_tower(), Point::rational({"x", "y"}, {Rational(1), Rational(2)}), cache),
        DomainError);
  }
}

TEST_CASE("polar depth") {
  CHECK(plane_cubic_tower().poldepth() == 1);
  CHECK(cusp_tower().poldepth() == 1);
  CHECK(cartan_tower().poldepth() == 1);
  RegulousTower p = RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("x"));
  CHECK(p.poldepth() == 0);
  CHECK((int)p.levels.size() - 1 <= 2);  // poldepth <= dim X
}

TEST_CASE("zero sets") {
  CadCache cache;
  SUBCASE("plane tower restricted to the cubic: zero set is the branch") {
    RegulousTower f = plane_cubic_tower();
    Variety cubic = Variety::of({"x", "y"}, {P("x^2 + y^2 - x^3")});
    RegulousTower g = restrict_tower(f, cubic, cache);
    REQUIRE(g.levels.size() == 2);
    SASet z = zero_set(g);
    // the branch: cubic minus the isolated origin
    SASet branch = parse_saset("x^2 + y^2 - x^3 = 0 and not (x = 0 and y = 0)", {"x", "y"});
    CHECK(sets_equal(z, branch, cache));
    CHECK(!is_zariski_closed(z, cache));
  }
  SUBCASE("polynomial tower zero set") {
    RegulousTower p = RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("x"));
    CHECK(sets_equal(zero_set(p), parse_saset("x = 0", {"x", "y"}), cache));
  }
  SUBCASE("zero set membership agrees with evaluation on CAD samples") {
    RegulousTower f = plane_cubic_tower();
    SASet z = zero_set(f);
    auto D = adapted_cad(z, cache);
    auto sel = cells_of(*D, z);
    for (size_t c = 0; c < sel.size(); ++c) {
      Point pt = D->cells[c].sample;
      int s = tower_sign_at(f, pt);
      CHECK((s == 0) == (bool)sel[c]);
    }
  }
}

TEST_CASE("restriction") {
  CadCache cache;
  RegulousTower f = plane_cubic_tower();
  SUBCASE("restrict to the cubic keeps two levels") {
    Variety cubic = Variety::of({"x", "y"}, {P("x^2 + y^2 - x^3")});
    RegulousTower g = restrict_tower(f, cubic, cache);
    REQUIRE(g.levels.size() == 2);
    // eval commutes with restriction on domain points
    Point pt = Point::rational({"x", "y"}, {Rational(0), Rational(0)});
    auto a = eval_tower(f, pt, cache);
    auto b = eval_tower(g, pt, cache);
    CHECK(std::get<Rational>(a.value) == std::get<Rational>(b.value));
  }
  SUBCASE("restrict a polynomial tower") {
    RegulousTower p = RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("x + y"));
    Variety line = Variety::of({"x", "y"}, {P("y")});
    RegulousTower g = restrict_tower(p, line, cache);
    CHECK(g.levels.size() == 1);
  }
  SUBCASE("poldepth drops by one on the polar level") {
    Variety polar = Variety::of({"x", "y"}, {P("x"), P("y")});
    RegulousTower g = restrict_tower(f, polar, cache);
    CHECK(g.poldepth() == f.poldepth() - 1);
  }
  SUBCASE("restrict the cartan tower to its stick") {
    RegulousTower g =
        restrict_tower(cartan_tower(), Variety::of({"x", "y", "z"}, {P("x"), P("y")}), cache);
    REQUIRE(g.levels.size() == 1);
    CHECK(g.levels[0].p == P("z"));
    CHECK(g.levels[0].q == P("1"));
  }
  SUBCASE("restriction to a set outside the domain fails") {
    RegulousTower c = cusp_tower();
    CHECK_THROWS_AS(restrict_tower(c, Variety::of({"x", "y"}, {P("y")}), cache), DomainError);
  }
}

TEST_CASE("tower ring operations") {
  CadCache cache;
  RegulousTower f = plane_cubic_tower();
  SUBCASE("square has the expected sign everywhere") {
    RegulousTower f2 = tower_square(f, cache);
    CHECK(validate_tower(f2, cache).ok);
    for (auto& xy : {std::pair{Rational(0), Rational(0)}, {Rational(2), Rational(2)},
                     {Rational(3), Rational(1)}}) {
      Point pt = Point::rational({"x", "y"}, {xy.first, xy.second});
      Point pt2 = pt;
      int sf = tower_sign_at(f, pt);
      int sf2 = tower_sign_at(f2, pt2);
      CHECK(sf2 == sf * sf);
    }
  }
  SUBCASE("sum f + (-f) is zero everywhere") {
    RegulousTower z = tower_sum(f, tower_negate(f), cache);
    for (auto& xy : {std::pair{Rational(0), Rational(0)}, {Rational(1), Rational(2)}}) {
      Point pt = Point::rational({"x", "y"}, {xy.first, xy.second});
      CHECK(tower_sign_at(z, pt) == 0);
    }
  }
  SUBCASE("scaling by a polynomial") {
    RegulousTower g = tower_scale(f, P("x^2 + y^2"));
    Point pt = Point::rational({"x", "y"}, {Rational(2), Rational(2)});
    CHECK(tower_sign_at(g, pt) == 0);
    Point pt2 = Point::rational({"x", "y"}, {Rational(1), Rational(1)});
    Point pt3 = pt2;
    CHECK(tower_sign_at(g, pt2) == tower_sign_at(f, pt3));
  }
}

TEST_CASE("strata are consistent: q nonzero on each stratum sample") {
  CadCache cache;
  for (const RegulousTower& f : {plane_cubic_tower(), cusp_tower()}) {
    for (size_t i = 0; i < f.levels.size(); ++i) {
      SASet st = stratum_set(f, i);
      auto D = adapted_cad(st, cache, {f.levels[i].q});
      auto sel = cells_of(*D, st);
      for (size_t c = 0; c < sel.size(); ++c) {
        if (!sel[c]) continue;
        CHECK(D->sign_at_sample((int)c, f.levels[i].q) != 0);
      }
    }
  }
}

TEST_CASE("continuity audit") {
  CadCache cache;
  std::vector<std::pair<Rational, Rational>> box = {{Rational(-2), Rational(2)},
                                                    {Rational(-2), Rational(2)}};
  SUBCASE("plane tower passes") {
    auto rep = continuity_audit(plane_cubic_tower(), cache, box, 6, Rational(1, 100), 7);
    CHECK(rep.pass);
    CHECK(!rep.pairs.empty());
  }
  SUBCASE("cusp tower passes") {
    auto rep = continuity_audit(cusp_tower(), cache, box, 6, Rational(1, 10), 7);
    CHECK(rep.pass);
  }
  SUBCASE("a pole draws a warning") {
    RegulousTower bad;
    bad.vars = {"x", "y"};
    bad.levels.push_back({Variety::whole({"x", "y"}), P("1"), P("x")});
    bad.levels.push_back({Variety::of({"x", "y"}, {P("x")}), P("0"), P("1")});
    auto rep = continuity_audit(bad, cache, box, 6, Rational(1, 100), 7);
    CHECK(!rep.pass);
  }
}

TEST_CASE("tower json round trip") {
  RegulousTower f = plane_cubic_tower();
  auto j = f.to_json();
  RegulousTower g = RegulousTower::from_json(j);
  CHECK(g.to_json() == j);
  CHECK(g.levels.size() == f.levels.size());
  CHECK(g.levels[0].p == f.levels[0].p);
}
