#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regulus/decomp.hpp"

using namespace regulus;

namespace {
Polynomial P(const std::string& s) { return parse_poly(s); }

// f = -1 + x^3/(x^2+y^2), extended by -1 at the origin
RegulousTower plane_umbrella() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::whole({"x", "y"}), P("x^3 - x^2 - y^2"), P("x^2 + y^2")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("-1"), P("1")});
  return t;
}

// f = 1 - x^3/(x^2+y^2), extended by 1 at the origin
RegulousTower plane_umbrella_pos() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::whole({"x", "y"}), P("x^2 + y^2 - x^3"), P("x^2 + y^2")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("1"), P("1")});
  return t;
}

RegulousTower cusp_tower() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::of({"x", "y"}, {P("x^2 - y^3")}), P("y^2"), P("x")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("0"), P("1")});
  return t;
}

RegulousTower cubic_restricted() {
  RegulousTower t;
  t.vars = {"x", "y"};
  Variety X = Variety::of({"x", "y"}, {P("x^2 + y^2 - x^3")});
  t.levels.push_back({X, P("x^2 + y^2 - x^3"), P("x^2 + y^2")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("1"), P("1")});
  return t;
}

// f = (y^2 + x^2 (1-x)^2) / (x^2 + y^2), extended by 1 at the origin
RegulousTower puncture_tower() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::whole({"x", "y"}), P("y^2 + x^2*(1 - x)^2"), P("x^2 + y^2")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("1"), P("1")});
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

TEST_CASE("decompose_nbsignpol") {
  CadCache cache;
  SUBCASE("plane example emits the three-entry form") {
    auto d = decompose_nbsignpol(plane_umbrella(), cache);
    CHECK(d.verified);
    CHECK(d.length_upper == 3);
    REQUIRE(d.form.dimension() == 3);
    CHECK(std::get<Polynomial>(d.form.entries[0]) == P("(x^3 - x^2 - y^2)*(x^2 + y^2)"));
    CHECK(std::get<Polynomial>(d.form.entries[1]) == P("-1"));
    CHECK(std::get<Polynomial>(d.form.entries[2]) == P("(x^2 + y^2)^2"));
    SignForm paper = SignForm::of_polys({"x", "y"}, Variety::whole({"x", "y"}),
                                        {P("x^3 - x^2 - y^2"), P("-1"), P("x^2 + y^2")});
    CHECK(similar(d.form, paper, cache).equal);
  }
  SUBCASE("polynomial tower gives a single entry") {
    RegulousTower p = RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("x"));
    auto d = decompose_nbsignpol(p, cache);
    CHECK(d.length_upper == 1);
    REQUIRE(d.form.dimension() == 1);
    CHECK(std::get<Polynomial>(d.form.entries[0]) == P("x"));
  }
  SUBCASE("cartan tower verifies on slices") {
    auto d = decompose_nbsignpol(cartan_tower(), cache);
    CHECK(d.verified);
    CHECK(d.verification.mode == "slice-exact");
    CHECK(d.length_upper == 3);
  }
}

TEST_CASE("construct_length1") {
  CadCache cache;
  SUBCASE("cusp function reduces to a polynomial similar to x") {
    auto r = construct_length1(cusp_tower(), cache);
    REQUIRE(r.representable);
    Variety X = Variety::of({"x", "y"}, {P("x^2 - y^3")});
    SignForm mine = SignForm::of_polys({"x", "y"}, X, {r.poly});
    SignForm paper = SignForm::of_polys({"x", "y"}, X, {P("x")});
    CHECK(similar(mine, paper, cache).equal);
  }
  SUBCASE("restricted cubic is not representable; witness is the origin") {
    auto r = construct_length1(cubic_restricted(), cache);
    CHECK(!r.representable);
    REQUIRE(r.witness.has_value());
    CHECK(eval_at_rational_point(P("x"), *r.witness) == 0);
    CHECK(eval_at_rational_point(P("y"), *r.witness) == 0);
  }
  SUBCASE("plain polynomial returns itself") {
    RegulousTower p = RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("x"));
    auto r = construct_length1(p, cache);
    REQUIRE(r.representable);
    CHECK(r.poly == P("x"));
  }
}

TEST_CASE("principalize") {
  CadCache cache;
  SUBCASE("punctured plane: verified r with S(r) = R^2 minus a point") {
    auto r = principalize(puncture_tower(), cache);
    REQUIRE(r.principal);
    CHECK(!r.s_pq_equals_s);  // S(pq) also drops the origin
    SASet sr = parse_saset(r.r.to_string() + " > 0", {"x", "y"});
    SASet expect = parse_saset("not (x - 1 = 0 and y = 0)", {"x", "y"});
    CHECK(sets_equal(sr, expect, cache));
  }
  SUBCASE("pos umbrella is obstructed exactly at the origin") {
    auto r = principalize(plane_umbrella_pos(), cache);
    CHECK(!r.principal);
    REQUIRE(r.witness.has_value());
    CHECK(eval_at_rational_point(P("x"), *r.witness) == 0);
    CHECK(eval_at_rational_point(P("y"), *r.witness) == 0);
  }
  SUBCASE("fast path when S(f) misses the polar locus") {
    auto r = principalize(plane_umbrella(), cache);
    REQUIRE(r.principal);
    CHECK(r.s_pq_equals_s);
    CHECK(r.r == P("(x^3 - x^2 - y^2)*(x^2 + y^2)"));
  }
}

TEST_CASE("loj searches") {
  CadCache cache;
  SearchBudget budget;
  SUBCASE("hl1 with zero g verifies immediately") {
    SASet target = parse_saset("x >= 0", {"x", "y"});
    auto w = loj_search_hl1(P("x"), Polynomial(), target, cache, budget);
    CHECK(w.budget_used >= 1);
    CHECK(sign_of(w.p.constant_value()) > 0);
  }
  SUBCASE("hl2 finds a witness at the puncture point") {
    SASet target = parse_saset("x - 1 = 0 and y = 0", {"x", "y"});
    auto w = loj_search_hl2(P("-(x^2 + y^2)^2"), P("1"), target, cache, budget);
    Point pt = Point::rational({"x", "y"}, {Rational(1), Rational(0)});
    CHECK(sign_at_point(w.combined, pt) == -1);
  }
  SUBCASE("hl2 with vanishing g") {
    SASet target = parse_saset("x^2 + y^2 - 1 <= 0", {"x", "y"});
    auto w = loj_search_hl2(P("1"), P("0"), target, cache, budget);
    CHECK(w.l >= 1);
  }
  SUBCASE("hl3 keeps the multiplier positive") {
    SASet target = parse_saset("x >= 0", {"x"});
    auto w = loj_search_hl3(P("x"), P("0"), target, cache, budget);
    Point pt = Point::rational({"x"}, {Rational(3)});
    CHECK(sign_at_point(w.h, pt) > 0);
  }
}

TEST_CASE("decompose_truncated") {
  CadCache cache;
  SUBCASE("cusp truncates to a single polynomial") {
    auto d = decompose_truncated(cusp_tower(), cache);
    CHECK(d.verified);
    CHECK(d.length_upper == 1);
    REQUIRE(d.form.dimension() == 1);
  }
  SUBCASE("plane umbrella truncates at level one") {
    auto d = decompose_truncated(plane_umbrella(), cache);
    CHECK(d.verified);
    CHECK(d.length_upper == 3);
    auto full = decompose_nbsignpol(plane_umbrella(), cache);
    CHECK(d.length_upper <= full.length_upper);
  }
  SUBCASE("cartan: three-entry slice-verified form") {
    auto d = decompose_truncated(cartan_tower(), cache);
    CHECK(d.verified);
    CHECK(d.verification.mode == "slice-exact");
    CHECK(d.length_upper == 3);
    REQUIRE(d.form.dimension() == 3);
    SignForm paper = SignForm::of_polys(
        {"x", "y", "z"}, Variety::whole({"x", "y", "z"}),
        {P("(x^2 + y^2)*(z*(x^2 + y^2) - x^3)"), P("z"), P("-(x^2 + y^2)*z")});
    auto rep = similar_sliced(d.form, paper, SliceSpec::defaults("z"), 500, 20240817, cache);
    CHECK(rep.equal);
  }
}

TEST_CASE("decompose_polar_dim1") {
  CadCache cache;
  SUBCASE("plane umbrella: polar locus is a point") {
    auto d = decompose_polar_dim1(plane_umbrella(), cache);
    CHECK(d.verified);
    CHECK(d.length_upper <= 3);
  }
  SUBCASE("regular tower degenerates to one entry") {
    RegulousTower p =
        RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("y - x^2"));
    auto d = decompose_polar_dim1(p, cache);
    CHECK(d.length_upper == 1);
  }
}

TEST_CASE("sign_match_semialgebraic") {
  CadCache cache;
  SUBCASE("self-witnessing input") {
    RegulousTower f = cusp_tower();
    Variety X = f.domain();
    SASet sp = pos_set(f), sn = neg_set(f), z = zero_set(f);
    auto r = sign_match_semialgebraic(sp, sn, z, f, f, f, cache);
    CHECK(r.verified);
    auto rep = similar(SignForm::of_tower(r.g, X), SignForm::of_tower(f, X), cache);
    CHECK(rep.equal);
  }
  SUBCASE("partition violations are rejected") {
    RegulousTower f = cusp_tower();
    SASet sp = pos_set(f), z = zero_set(f);
    CHECK_THROWS_AS(sign_match_semialgebraic(sp, sp, z, f, f, f, cache), DomainError);
  }
}

TEST_CASE("length bounds") {
  CadCache cache;
  SUBCASE("plane umbrella: lower 2, upper 3") {
    auto rep = length_bound_report(plane_umbrella(), cache);
    CHECK(rep.lower == 2);
    CHECK(rep.upper == 3);
  }
  SUBCASE("cusp: exactly one") {
    auto rep = length_bound_report(cusp_tower(), cache);
    CHECK(rep.lower == 1);
    CHECK(rep.upper == 1);
  }
  SUBCASE("zero function") {
    RegulousTower z = RegulousTower::from_poly({"x", "y"}, Variety::whole({"x", "y"}), P("0"));
    auto rep = length_bound_report(z, cache);
    CHECK(rep.lower == 0);
    CHECK(rep.upper == 0);
  }
  SUBCASE("restricted cubic: lower 2 from the closedness test") {
    auto rep = length_bound_report(cubic_restricted(), cache);
    CHECK(rep.lower == 2);
    CHECK(rep.upper == 3);
  }
}
