#include "doctest.h"
#include "oracles.hpp"
#include "psibundle/errors.hpp"
#include "psibundle/instances.hpp"
#include "psibundle/presalg.hpp"

using namespace psb;

TEST_CASE("cylinder reordering y^n x^m = q^{nm} x^m y^n") {
  const auto P = cylinder_presentation();
  for (int n = 0; n <= 4; ++n)
    for (int m = -3; m <= 3; ++m)
      CHECK(P->multiply(Mono{0, n}, Mono{m, 0}) == Element(Mono{m, n}, oracle::power(oracle::qv(), n * m)));
  CHECK(P->multiply(Mono{1, 0}, Mono{-1, 0}) == Element(P->one()));
  CHECK(P->str(P->multiply(Mono{0, 1}, Mono{-1, 0})) == "(1/q)*x^-1*y");
}

TEST_CASE("normal multiplication is associative") {
  const auto P = cylinder_presentation();
  const auto G = glq2_presentation();
  std::vector<Mono> cy;
  for (int a = -1; a <= 1; ++a)
    for (int b = 0; b <= 2; ++b) cy.push_back({a, b});
  for (const auto& u : cy)
    for (const auto& v : cy)
      for (const auto& w : cy)
        CHECK(P->multiply(P->multiply(u, v), Element(w)) == P->multiply(Element(u), P->multiply(v, w)));
  const std::vector<Mono> gl = {G->mono({{"α", 1}}), G->mono({{"δ", 1}}), G->mono({{"β", 1}}), G->mono({{"γ", 1}}),
                                G->mono({{"D", -1}})};
  for (const auto& u : gl)
    for (const auto& v : gl)
      for (const auto& w : gl)
        CHECK(G->multiply(G->multiply(u, v), Element(w)) == G->multiply(Element(u), G->multiply(v, w)));
}

TEST_CASE("GL_q(2) quantum determinant") {
  const auto G = glq2_presentation();
  const Element a(G->mono({{"α", 1}})), b(G->mono({{"β", 1}})), c(G->mono({{"γ", 1}})), d(G->mono({{"δ", 1}}));
  // αδ − qβγ = D⁻¹ and δα − q⁻¹βγ = D⁻¹.
  const Element Dinv(G->mono({{"D", -1}}));
  CHECK(G->multiply(a, d) - oracle::qv() * G->multiply(b, c) == Dinv);
  CHECK(G->multiply(d, a) - (Scalar(1) / oracle::qv()) * G->multiply(b, c) == Dinv);
  CHECK(G->check_local_confluence(4).empty());
}

TEST_CASE("confluence detects a bad rule set") {
  Presentation P({"n"}, {{"a", {1}, false}, {"b", {1}, false}});
  P.add_rule({{1, 1}, {0, 1}}, Element(Mono{1, 1}, Scalar(2)));  // ba → 2ab
  P.add_rule({{1, 1}, {1, 1}}, Element(Mono{2, 0}));             // bb → aa
  const auto amb = P.check_local_confluence(3);
  REQUIRE_FALSE(amb.empty());
  CHECK(P.str(amb.front().word) == "b b a");
}

TEST_CASE("textual presentations") {
  const auto P = parse_presentation(
      "axes x y\n"
      "gen x deg 1 0 invertible\n"
      "gen y deg 0 1  # comment\n"
      "rule y x -> q*x*y\n"
      "rule y x^-1 -> q^-1*x^-1*y\n");
  CHECK(P->ngens() == 2);
  CHECK(P->gens()[0].invertible);
  CHECK(P->multiply(Mono{0, 2}, Mono{-1, 0}) == Element(Mono{-1, 2}, oracle::power(oracle::qv(), -2)));
  CHECK(P->parse("2*x^-1*y + s") == Element(Mono{-1, 1}, Scalar(2)) + Element(Mono{0, 0}, Scalar::variable("s")));
  CHECK_THROWS_AS(parse_presentation("gen x 1"), ParseError);
  CHECK_THROWS_AS(parse_presentation("axes x\ngen x deg 1\ngen y deg 2\nrule y x -> x"), ConfigInvalid);
}

TEST_CASE("degree windows") {
  const auto P = cylinder_presentation();
  DegreeWindow w{{{-1, 1}, {0, 2}}, std::nullopt};
  CHECK(P->enumerate(w).size() == 9);
  CHECK_THROWS_AS(P->multiply(Element(Mono{0, 2}), Element(Mono{0, 1}), w), DegreeOverflow);
}

TEST_CASE("characters") {
  const auto P = cylinder_presentation();
  const Character good{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}, {{1, 1}, Scalar(0)}};
  const Character bad{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}, {{1, 1}, Scalar(1)}};
  CHECK(check_character(good, *P).ok);
  CHECK_FALSE(check_character(bad, *P).ok);
  CHECK(apply_character(good, *P, P->parse("3*x^2 + x*y")) == Scalar(3));
}
