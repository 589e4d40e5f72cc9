#include "doctest.h"
#include "oracles.hpp"
#include "psibundle/entwine.hpp"
#include "psibundle/errors.hpp"
#include "psibundle/instances.hpp"

using namespace psb;

namespace {

Tensor psi_oracle(int l, int m, int n) {
  Tensor t("PC");
  for (int k = 0; k <= n; ++k)
    t.add({{m, k}, {n + l - k}}, oracle::binom(n, k) * oracle::power(oracle::qv(), l * (k + m)));
  return t;
}

}  // namespace

TEST_CASE("cylinder ψ against the closed formula") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  CHECK(cy.psi->psi({2}, {1, 0}) == Tensor("PC", {{1, 0}, {2}}, qpow(2)));
  for (int l = 0; l <= 3; ++l)
    for (int m = -2; m <= 2; ++m)
      for (int n = 0; n <= 3; ++n) CHECK(cy.psi->psi({l}, {m, n}) == psi_oracle(l, m, n));
}

TEST_CASE("cylinder entwining axioms and coaction") {
  const Cylinder cy = build_cylinder({2, 3, 3});
  CHECK(check_entwining(*cy.psi, cy.cwindow, cy.window).ok);
  CHECK(check_coaction(*cy.psi, cylinder_window(*cy.P, 1, 2)).ok);
  for (int n = 0; n <= 4; ++n) {
    Tensor want("PC");
    for (int k = 0; k <= n; ++k) want.add({{0, k}, {n - k}}, oracle::binom(n, k));
    CHECK(coaction(*cy.psi, Tensor("P", {{0, n}})) == want);
  }
}

TEST_CASE("dropping the q-power breaks the entwining") {
  const Cylinder cy = build_cylinder({2, 3, 3, CylinderMutation::drop_q_power});
  const Verdict v = check_entwining(*cy.psi, cy.cwindow, cy.window);
  CHECK_FALSE(v.ok);
  REQUIRE_FALSE(v.failures.empty());
}

TEST_CASE("cylinder bundle: coinvariants, χ_M and τ") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  const auto& M = cy.bundle()->M();
  CHECK(M.basis.size() == 5);
  for (const auto& e : M.basis) {
    REQUIRE(e.terms().size() == 1);
    CHECK(e.terms().begin()->first[1] == 0);
  }
  CHECK(M.closure.ok);
  for (int a = -2; a <= 2; ++a)
    for (int n = 0; n <= 4; ++n) {
      const auto comp = cy.bundle()->component({a, n});
      CHECK(comp.bijective);
      CHECK_FALSE(comp.det.is_zero());
    }
  CHECK(cy.bundle()->check_tau().ok);
  const Tensor t = cy.bundle()->tau({1});
  CHECK(cy.bundle()->chi(t) == Tensor("PC", {{0, 0}, {1}}));
}

TEST_CASE("GL_q(2) spot values and coinvariants") {
  const Glq2 g = build_glq2(2, 3, 2);
  const auto& P = *g.P;
  const Mono a = P.mono({{"α", 1}}), d = P.mono({{"δ", 1}}), c = P.mono({{"γ", 1}});
  CHECK(g.psi->psi({1, 0}, a) == Tensor("PC", {a, {1, 0}}, Scalar(1) / oracle::qv()));
  Tensor want("PC", {c, {2, 0}});
  want.add({d, {1, 1}}, oracle::qv());
  CHECK(g.psi->psi({1, 0}, d) == want);
  // Degree ≤ 2 coinvariants: 1, γ, γ², α, γα, α².
  CHECK(g.bundle->M().basis.size() == 6);
  CHECK(P.multiply(c, a) == (Scalar(1) / oracle::qv()) * P.multiply(a, c));
}

TEST_CASE("self-bundle") {
  const SelfBundle sb = build_selfbundle(3);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) CHECK(sb.psi->psi({a}, {b}) == Tensor("PC", {{b}, {a + b}}));
  REQUIRE(sb.bundle->M().basis.size() == 1);
  CHECK(sb.bundle->M().basis[0] == Element(Mono{0}));
  const Character eps{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}};
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      CHECK(right_action(*sb.psi, eps, Tensor("C", {{a}}), {b}) == Tensor("C", {{a + b}}));
}

TEST_CASE("cylinder dual side") {
  const Cylinder cy = build_cylinder({2, 3, 3});
  const Character kappa{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}, {{1, 1}, Scalar(0)}};
  // c_l ◁ x = q^l c_l and c_l ◁ y = c_{l+1}.
  for (int l = 0; l <= 3; ++l) {
    CHECK(right_action(*cy.psi, kappa, Tensor("C", {{l}}), {1, 0}) == Tensor("C", {{l}}, oracle::power(oracle::qv(), l)));
    CHECK(right_action(*cy.psi, kappa, Tensor("C", {{l}}), {0, 1}) == Tensor("C", {{l + 1}}));
  }
  std::vector<CIdx> cs{{0}, {1}, {2}};
  const auto d = dual_side(*cy.psi, kappa, cs, cylinder_window(*cy.P, 1, 2));
  CHECK(d.action.ok);
  CHECK(d.delta_compat.ok);
  CHECK(d.coideal.ok);
  CHECK(d.zeta.ok);
}
