#include "doctest.h"
#include "oracles.hpp"
#include "psibundle/errors.hpp"
#include "psibundle/gauge.hpp"
#include "psibundle/instances.hpp"

using namespace psb;

namespace {

GaugeSeq symbolic(const std::string& stem, int length) {
  GaugeSeq g{Scalar(1)};
  for (int n = 1; n < length; ++n) g.push_back(Scalar::variable(stem + std::to_string(n)));
  return g;
}

std::vector<CIdx> upto(int n) {
  std::vector<CIdx> r;
  for (int i = 0; i <= n; ++i) r.push_back({i});
  return r;
}

}  // namespace

TEST_CASE("ψ^C closed form") {
  const Cylinder cy = build_cylinder({2, 3, 4});
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      Tensor want("CC");
      for (int k = 0; k <= n; ++k)
        want.add({{k}, {m + n - k}}, oracle::binom(n, k) * oracle::power(oracle::qv(), k * m));
      CHECK((*cy.psiC)({m}, {n}) == want);
    }
  CHECK(check_psiC(*cy.psiC, upto(4)).ok);
  const Cylinder wrong = build_cylinder({2, 3, 4, CylinderMutation::wrong_base});
  CHECK_FALSE(check_psiC(*wrong.psiC, upto(4)).ok);
}

TEST_CASE("trivialization and Θ") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  CHECK(cy.triv.phi({3}) == Tensor("P", {{0, 3}}));
  CHECK(check_trivialization(cy.triv, cy.cwindow).ok);
  CHECK(check_theta(cy.triv, cy.window, cy.cwindow).ok);
  const Cylinder broken = build_cylinder({2, 4, 4, CylinderMutation::broken_phi});
  CHECK_FALSE(check_trivialization(broken.triv, broken.cwindow).ok);
}

TEST_CASE("sequence product against the direct sum") {
  const GaugeSeq a = symbolic("a", 5), b = symbolic("b", 5);
  const GaugeSeq ab = seq_mul(a, b);
  REQUIRE(ab.size() == 5);
  for (int n = 0; n < 5; ++n) {
    Scalar want;
    for (int k = 0; k <= n; ++k) want += oracle::binom(n, k) * a[k] * b[n - k];
    CHECK(ab[n] == want);
  }
  CHECK(seq_mul(a, seq_inv(a)) == seq_unit(5));
  CHECK(seq_mul(seq_inv(a), a) == seq_unit(5));
  CHECK_THROWS_AS(seq_inv(GaugeSeq{Scalar(2), Scalar(1)}), NotUnitalAtE);
}

TEST_CASE("inverse of the q-exponential sequence") {
  // Γ_n = tⁿ has inverse (−1)ⁿ q^{n(n−1)/2} tⁿ by the q-binomial theorem.
  const Scalar t = Scalar::variable("t");
  GaugeSeq e;
  for (int n = 0; n < 8; ++n) e.push_back(oracle::power(t, n));
  const GaugeSeq inv = seq_inv(e);
  for (int n = 0; n < 8; ++n)
    CHECK(inv[n] == Scalar(n % 2 ? -1 : 1) * oracle::power(oracle::qv(), n * (n - 1) / 2) * oracle::power(t, n));
}

TEST_CASE("gauge transformations of the cylinder") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  const GaugeSeq g = symbolic("g", 5), h = symbolic("h", 5);
  const ConvMap G = to_gamma(g, cy.P, 0);
  CHECK(G({2}) == Tensor("P", {{2, 0}}, g[2]));
  CHECK(check_gauge(cy.triv, G, upto(4)).ok);
  const ConvMap prod = convolve(G, to_gamma(h, cy.P, 0), cy.C, cy.P);
  const ConvMap hom = to_gamma(seq_mul(g, h), cy.P, 0);
  for (int n = 0; n < 5; ++n) CHECK(prod({n}) == hom({n}));
  CHECK_THROWS_AS(G({5}), WindowExceeded);

  const ConvMap notM("P", [](const CIdx& c) { return Tensor("P", {{0, c[0]}}); });
  CHECK_THROWS_AS(check_gauge(cy.triv, notM, upto(3)), ValuesNotInM);
  const ConvMap notUnital("P", [](const CIdx& c) { return Tensor("P", {{c[0], 0}}, Scalar(2)); });
  CHECK_THROWS_AS(check_gauge(cy.triv, notUnital, upto(3)), NotUnitalAtE);
}
