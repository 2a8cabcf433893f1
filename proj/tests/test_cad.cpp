#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regulus/cad.hpp"

using namespace regulus;

namespace {
Polynomial P(const std::string& s) { return parse_poly(s); }
std::mt19937 rng(777);
Rational rrat(int range = 8, int den = 5) {
  std::uniform_int_distribution<int> dn(-range, range), dd(1, den);
  Rational q(dn(rng), dd(rng));
  q.canonicalize();
  return q;
}
}  // namespace

TEST_CASE("one-dimensional decomposition of [x]") {
  CadCache cache;
  auto d = decompose({P("x")}, {"x"}, cache);
  REQUIRE(d->cells.size() == 3);
  CHECK(d->cells[0].dim == 1);
  CHECK(d->cells[1].dim == 0);
  CHECK(d->cells[2].dim == 1);
  CHECK(d->cells[0].input_signs[0] == -1);
  CHECK(d->cells[1].input_signs[0] == 0);
  CHECK(d->cells[2].input_signs[0] == 1);
  CHECK(d->euler_char(std::vector<char>(3, 1)) == -1);  // chi_c(R) = -1
}

TEST_CASE("circle decomposition has 13 cells") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - 1")}, {"x", "y"}, cache);
  CHECK(d->cells.size() == 13);
  std::vector<char> all(d->cells.size(), 1);
  CHECK(d->euler_char(all) == 1);  // chi_c(R^2) = 1
  // circle itself: 2 points + 2 arcs -> chi 0
  std::vector<char> circ(d->cells.size(), 0);
  int n_sel = 0;
  for (size_t i = 0; i < d->cells.size(); ++i)
    if (d->cells[i].input_signs[0] == 0) {
      circ[i] = 1;
      ++n_sel;
    }
  CHECK(n_sel == 4);
  CHECK(d->euler_char(circ) == 0);
  // open disk
  std::vector<char> disk(d->cells.size(), 0);
  for (size_t i = 0; i < d->cells.size(); ++i)
    if (d->cells[i].input_signs[0] == -1) disk[i] = 1;
  CHECK(d->euler_char(disk) == 1);
  // closed disk via closure: chi stays 1
  CHECK(d->euler_char(d->closure_of(disk)) == 1);
}

TEST_CASE("cubic with isolated point") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - x^3")}, {"x", "y"}, cache);
  int origin = d->locate({Rational(0), Rational(0)});
  CHECK(d->cells[(size_t)origin].dim == 0);
  CHECK(d->cells[(size_t)origin].input_signs[0] == 0);
  // the isolated point is not in the closure of the other zero cells
  std::vector<char> others(d->cells.size(), 0);
  for (size_t i = 0; i < d->cells.size(); ++i)
    if ((int)i != origin && d->cells[i].input_signs[0] == 0) others[i] = 1;
  auto cl = d->closure_of(others);
  CHECK(!cl[(size_t)origin]);
  // chi_c of the full curve: isolated point (+1) plus branch (1 - 2 = -1)
  std::vector<char> curve(d->cells.size(), 0);
  for (size_t i = 0; i < d->cells.size(); ++i)
    if (d->cells[i].input_signs[0] == 0) curve[i] = 1;
  CHECK(d->euler_char(curve) == 0);
}

TEST_CASE("partition: random points land in exactly one matching cell") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - 1"), P("y - x^2"), P("x")}, {"x", "y"}, cache);
  for (int t = 0; t < 200; ++t) {
    std::vector<Rational> pt = {rrat(), rrat()};
    int c = d->locate(pt);
    REQUIRE(c >= 0);
    REQUIRE((size_t)c < d->cells.size());
    Point p = Point::rational({"x", "y"}, pt);
    for (size_t i = 0; i < d->inputs.size(); ++i)
      CHECK(sign_at_point(d->inputs[i], p) == d->cells[(size_t)c].input_signs[i]);
  }
}

TEST_CASE("sign invariance on extra cell samples") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - 1"), P("y - x^2")}, {"x", "y"}, cache);
  for (const auto& cell : d->cells) {
    if (cell.dim == 0) continue;
    for (auto& pt : d->extra_samples(cell.index, 3)) {
      for (size_t i = 0; i < d->inputs.size(); ++i)
        CHECK(sign_at_point(d->inputs[i], pt) == cell.input_signs[i]);
    }
  }
}

TEST_CASE("chi_c additivity over disjoint sign sets") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - 1")}, {"x", "y"}, cache);
  std::vector<char> inside(d->cells.size(), 0), outside(d->cells.size(), 0),
      either(d->cells.size(), 0);
  for (size_t i = 0; i < d->cells.size(); ++i) {
    int s = d->cells[i].input_signs[0];
    if (s < 0) inside[i] = 1;
    if (s > 0) outside[i] = 1;
    if (s != 0) either[i] = 1;
  }
  CHECK(d->euler_char(inside) + d->euler_char(outside) == d->euler_char(either));
}

TEST_CASE("degenerate constant input gives the single-cell decomposition") {
  CadCache cache;
  auto d1 = decompose({P("2")}, {"x"}, cache);
  CHECK(d1->cells.size() == 1);
  CHECK(d1->cells[0].dim == 1);
  auto d2 = decompose({P("1/2")}, {"x", "y"}, cache);
  CHECK(d2->cells.size() == 1);
  CHECK(d2->cells[0].dim == 2);
  CHECK(d2->cells[0].input_signs[0] == 1);
}

TEST_CASE("slices of the Cartan umbrella") {
  CadCache cache;
  Polynomial umbrella = P("z*(x^2 + y^2) - x^3");
  auto at0 = slice3({umbrella}, "z", Rational(0), {"x", "y", "z"}, cache);
  REQUIRE(at0->inputs.size() == 1);
  CHECK(at0->inputs[0] == P("-x^3"));
  auto at1 = slice3({umbrella}, "z", Rational(1), {"x", "y", "z"}, cache);
  CHECK(at1->inputs[0] == P("x^2 + y^2 - x^3"));
  int origin = at1->locate({Rational(0), Rational(0)});
  CHECK(at1->cells[(size_t)origin].dim == 0);
  auto atm1 = slice3({umbrella}, "z", Rational(-1), {"x", "y", "z"}, cache);
  CHECK(atm1->inputs[0] == P("-x^2 - y^2 - x^3"));
}

TEST_CASE("sample grid is deterministic and respects signs") {
  auto g1 = sample_grid({P("x")}, {"x"}, {{Rational(-1), Rational(1)}}, 3, 42);
  auto g2 = sample_grid({P("x")}, {"x"}, {{Rational(-1), Rational(1)}}, 3, 42);
  REQUIRE(g1.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(g1[i].coords[0] == g2[i].coords[0]);
    CHECK(g1[i].signs[0] == g2[i].signs[0]);
  }
  CHECK(g1.front().signs[0] == -1);
  CHECK(g1.back().signs[0] == 1);

  auto g3 = sample_grid({P("x^2 + y^2")}, {"x", "y"},
                        {{Rational(-2), Rational(2)}, {Rational(-2), Rational(2)}}, 4, 7);
  for (const auto& gp : g3) CHECK(gp.signs[0] >= 0);

  auto g4 = sample_grid({P("x^3 - x^2 - y^2")}, {"x", "y"},
                        {{Rational(-2), Rational(2)}, {Rational(-2), Rational(2)}}, 8, 11);
  bool saw_positive = false;
  for (const auto& gp : g4)
    if (gp.signs[0] > 0) {
      saw_positive = true;
      CHECK(gp.coords[0] > 1);
    }
  CHECK(saw_positive);
}

TEST_CASE("closure of cells is sane on a parabola") {
  CadCache cache;
  auto d = decompose({P("y - x^2")}, {"x", "y"}, cache);
  std::vector<char> curve(d->cells.size(), 0);
  for (size_t i = 0; i < d->cells.size(); ++i)
    if (d->cells[i].input_signs[0] == 0 && d->cells[i].dim == 1) curve[i] = 1;
  auto cl = d->closure_of(curve);
  int at_vertex = d->locate({Rational(0), Rational(0)});
  CHECK(cl[(size_t)at_vertex]);
  for (size_t i = 0; i < curve.size(); ++i)
    if (curve[i]) CHECK(cl[i]);
}

TEST_CASE("thom decomposition distinguishes cells by sign vectors") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - 1"), P("x")}, {"x", "y"}, cache, true);
  for (size_t i = 0; i < d->cells.size(); ++i)
    for (size_t j = i + 1; j < d->cells.size(); ++j) {
      bool differs = d->cells[i].thom_base_signs != d->cells[j].thom_base_signs ||
                     d->cells[i].thom_fiber_signs != d->cells[j].thom_fiber_signs ||
                     d->cells[i].basis_signs != d->cells[j].basis_signs;
      CHECK(differs);
    }
}

TEST_CASE("decomposition json shape and cache identity") {
  CadCache cache;
  auto d = decompose({P("x^2 + y^2 - 1")}, {"x", "y"}, cache);
  auto j = d->to_json();
  CHECK(j["ambient_dim"] == 2);
  CHECK(j["cells"].size() == 13);
  CHECK(j["inputs"].size() == 1);
  auto d2 = decompose({P("x^2 + y^2 - 1")}, {"x", "y"}, cache);
  CHECK(d.get() == d2.get());
}
