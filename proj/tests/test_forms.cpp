#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regulus/forms.hpp"

using namespace regulus;

namespace {
Polynomial P(const std::string& s) { return parse_poly(s); }

SignForm F2(std::vector<std::string> polys, Variety amb = Variety::whole({"x", "y"})) {
  std::vector<Polynomial> ps;
  for (const auto& s : polys) ps.push_back(P(s));
  return SignForm::of_polys({"x", "y"}, std::move(amb), std::move(ps));
}

Variety cubic() { return Variety::of({"x", "y"}, {P("x^2 + y^2 - x^3")}); }

RegulousTower cusp_tower() {
  RegulousTower t;
  t.vars = {"x", "y"};
  t.levels.push_back({Variety::of({"x", "y"}, {P("x^2 - y^3")}), P("y^2"), P("x")});
  t.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("0"), P("1")});
  return t;
}

std::mt19937 rng(99);
Polynomial rpoly() {
  static const char* pool[] = {"x",       "y - 1", "x + y",     "x^2 - y", "x*y + 1",
                               "y^2 - x", "x - 2", "x^2 + y^2", "-x",      "2*y + x"};
  return P(pool[rng() % 10]);
}
}  // namespace

TEST_CASE("perp concatenates") {
  SignForm a = F2({"1"});
  SignForm b = F2({"-1"});
  SignForm c = perp(a, b);
  REQUIRE(c.dimension() == 2);
  CHECK(std::get<Polynomial>(c.entries[0]) == P("1"));
  CHECK(std::get<Polynomial>(c.entries[1]) == P("-1"));
  SignForm d = perp(F2({"x"}), F2({"y"}));
  CHECK(d.dimension() == 2);
}

TEST_CASE("tensor follows the displayed enumeration order") {
  CadCache cache;
  SignForm a = F2({"1", "-(x^2 + y^2)^2"});
  SignForm b = F2({"x + 1"});
  SignForm c = tensor(a, b, cache);
  REQUIRE(c.dimension() == 2);
  CHECK(std::get<Polynomial>(c.entries[0]) == P("x + 1"));
  CHECK(std::get<Polynomial>(c.entries[1]) == P("-(x^2 + y^2)^2 * (x + 1)"));
  SignForm e = tensor(F2({"1"}), F2({"x", "y"}), cache);
  REQUIRE(e.dimension() == 2);
  CHECK(std::get<Polynomial>(e.entries[0]) == P("x"));
  SignForm f = tensor(F2({"x"}), F2({"x"}), cache);
  CHECK(std::get<Polynomial>(f.entries[0]) == P("x^2"));
  SignForm g = tensor(F2({"x", "y"}), F2({"x + 1", "y + 1"}), cache);
  REQUIRE(g.dimension() == 4);
  CHECK(std::get<Polynomial>(g.entries[0]) == P("x*(x + 1)"));
  CHECK(std::get<Polynomial>(g.entries[1]) == P("y*(x + 1)"));
  CHECK(std::get<Polynomial>(g.entries[2]) == P("x*(y + 1)"));
  CHECK(std::get<Polynomial>(g.entries[3]) == P("y*(y + 1)"));
}

TEST_CASE("signatures as constructible functions") {
  CadCache cache;
  SUBCASE("isolated point indicator on the cubic") {
    SignForm rho = F2({"1", "-(x^2 + y^2)"}, cubic());
    ConstructibleFn sig = signature(rho, cache);
    SASet origin = parse_saset("x = 0 and y = 0", {"x", "y"});
    origin.ambient_variety = cubic().gens;
    CHECK(cfn_equal(sig, ConstructibleFn::indicator(origin), cache));
  }
  SUBCASE("constant two") {
    ConstructibleFn sig = signature(F2({"1", "1"}), cache);
    CHECK(cfn_equal(sig, ConstructibleFn::indicator(SASet::whole({"x", "y"}), 2), cache));
  }
  SUBCASE("cancellation") {
    ConstructibleFn sig = signature(F2({"x", "-x"}), cache);
    CHECK(cfn_equal(sig, ConstructibleFn::zero({"x", "y"}), cache));
  }
}

TEST_CASE("similarity") {
  CadCache cache;
  SUBCASE("cusp towers match <x>") {
    Variety X = Variety::of({"x", "y"}, {P("x^2 - y^3")});
    SignForm f = SignForm::of_tower(cusp_tower(), X);
    SignForm x = SignForm::of_polys({"x", "y"}, X, {P("x")});
    auto rep = similar(f, x, cache);
    CHECK(rep.equal);
  }
  SUBCASE("reducible curve representative") {
    Variety X = Variety::of({"x", "y"}, {P("(y^2 - x^2*(x - 1))*(x + y^2)")});
    RegulousTower f;
    f.vars = {"x", "y"};
    f.levels.push_back({X, P("x^2 + y^2 - x^3"), P("x^2 + y^2")});
    f.levels.push_back({Variety::of({"x", "y"}, {P("x"), P("y")}), P("1"), P("1")});
    SignForm lhs = SignForm::of_tower(f, X);
    SignForm rhs = SignForm::of_polys({"x", "y"}, X, {P("x + y^2"), P("-x + 1/2")});
    auto rep = similar(lhs, rhs, cache);
    CHECK(rep.equal);
  }
  SUBCASE("constants differ with a witness") {
    auto rep = similar(F2({"1"}), F2({"-1"}), cache);
    CHECK(!rep.equal);
    CHECK(rep.witness.has_value());
  }
  SUBCASE("equivalence relation on a small corpus") {
    std::vector<SignForm> corpus;
    for (int i = 0; i < 6; ++i) corpus.push_back(F2({rpoly().to_string(), rpoly().to_string()}));
    for (auto& a : corpus) CHECK(similar(a, a, cache).equal);
    for (auto& a : corpus)
      for (auto& b : corpus) {
        bool ab = similar(a, b, cache).equal;
        bool ba = similar(b, a, cache).equal;
        CHECK(ab == ba);
      }
    for (auto& a : corpus)
      for (auto& b : corpus)
        for (auto& c : corpus) {
          if (similar(a, b, cache).equal && similar(b, c, cache).equal)
            CHECK(similar(a, c, cache).equal);
        }
  }
}

TEST_CASE("signature is a ring homomorphism") {
  CadCache cache;
  for (int t = 0; t < 8; ++t) {
    SignForm a = F2({rpoly().to_string(), rpoly().to_string()});
    SignForm b = F2({rpoly().to_string()});
    ConstructibleFn sum = cfn_add(signature(a, cache), signature(b, cache));
    CHECK(cfn_equal(signature(perp(a, b), cache), sum, cache));
    ConstructibleFn prod = cfn_mul(signature(a, cache), signature(b, cache));
    CHECK(cfn_equal(signature(tensor(a, b, cache), cache), prod, cache));
  }
}

TEST_CASE("signature bounded by dimension") {
  CadCache cache;
  SignForm a = F2({"x", "y - 1", "x + y"});
  ConstructibleFn sig = signature(a, cache);
  auto D = decompose(sig.all_polys(), {"x", "y"}, cache);
  auto vals = cfn_cell_values(sig, *D);
  for (long v : vals) CHECK(std::abs(v) <= 3);
}

TEST_CASE("reduction") {
  CadCache cache;
  SUBCASE("cancelling pair drops") {
    SignForm r = reduce(F2({"x", "-x", "1"}), cache);
    REQUIRE(r.dimension() == 1);
    CHECK(std::get<Polynomial>(r.entries[0]) == P("1"));
  }
  SUBCASE("zero entry drops") {
    SignForm a = F2({"x + y", "0"});
    SignForm r = reduce(a, cache);
    REQUIRE(r.dimension() == 1);
    CHECK(std::get<Polynomial>(r.entries[0]) == P("x + y"));
  }
  SUBCASE("anisotropic plane form stays put") {
    SignForm a = F2({"x^3 - x^2 - y^2", "-1", "x^2 + y^2"});
    SignForm r = reduce(a, cache);
    CHECK(r.dimension() == 3);
  }
  SUBCASE("full cancellation leaves the zero form") {
    SignForm r = reduce(F2({"x", "-x"}), cache);
    REQUIRE(r.dimension() == 1);
    CHECK(std::get<Polynomial>(r.entries[0]).is_zero());
  }
}

TEST_CASE("sliced similarity for the cartan umbrella") {
  CadCache cache;
  RegulousTower cartan;
  cartan.vars = {"x", "y", "z"};
  cartan.levels.push_back(
      {Variety::whole({"x", "y", "z"}), P("z*(x^2 + y^2) - x^3"), P("x^2 + y^2")});
  cartan.levels.push_back({Variety::of({"x", "y", "z"}, {P("x"), P("y")}), P("z"), P("1")});
  Variety R3 = Variety::whole({"x", "y", "z"});
  SignForm lhs = SignForm::of_tower(cartan, R3);
  SignForm rhs = SignForm::of_polys(
      {"x", "y", "z"}, R3,
      {P("(x^2 + y^2)*(z*(x^2 + y^2) - x^3)"), P("z"), P("-(x^2 + y^2)*z")});
  SliceSpec slices = SliceSpec::defaults("z");
  auto rep = similar_sliced(lhs, rhs, slices, 200, 20240817, cache);
  CHECK(rep.equal);
  CHECK(rep.samples > 100);
  SignForm bad = SignForm::of_polys({"x", "y", "z"}, R3, {P("z")});
  auto rep2 = similar_sliced(lhs, bad, slices, 200, 20240817, cache);
  CHECK(!rep2.equal);
}

TEST_CASE("form text parsing") {
  auto resolver = [](const std::string& name) -> RegulousTower {
    if (name == "f") return cusp_tower();
    throw ParseError("unknown tower " + name);
  };
  SignForm f =
      parse_form("< 1; -(x^2 + y^2); @tower:f >", {"x", "y"}, Variety::whole({"x", "y"}), resolver);
  REQUIRE(f.dimension() == 3);
  CHECK(std::get<Polynomial>(f.entries[0]) == P("1"));
  CHECK(std::holds_alternative<RegulousTower>(f.entries[2]));
  CHECK_THROWS_AS(parse_form("<>", {"x", "y"}, Variety::whole({"x", "y"}), resolver), ParseError);
}
