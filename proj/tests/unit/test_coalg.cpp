#include "doctest.h"
#include "oracles.hpp"
#include "psibundle/coalg.hpp"
#include "psibundle/errors.hpp"
#include "psibundle/instances.hpp"

using namespace psb;

TEST_CASE("cylinder coproduct coefficients") {
  const auto C = cylinder_coalgebra(q());
  for (int n = 0; n <= 8; ++n) {
    Tensor want("CC");
    for (int k = 0; k <= n; ++k) want.add({{k}, {n - k}}, oracle::binom(n, k));
    CHECK(C->delta({n}) == want);
    CHECK(C->eps({n}) == Scalar(n == 0 ? 1 : 0));
  }
  CHECK(check_coalgebra(*C, C->indices(12)).ok);
}

TEST_CASE("wrong binomial base still gives a coalgebra") {
  // [n k]_{q²} is coassociative too; the mutation is caught by ψ^C and ψ.
  const auto C = cylinder_coalgebra(qpow(2));
  CHECK(check_coalgebra(*C, C->indices(6)).ok);
}

TEST_CASE("broken coproduct fails coassociativity") {
  Coalgebra::Def d{"broken",
                   [](const CIdx& c) {
                     Tensor t("CC");
                     for (int k = 0; k <= c[0]; ++k) t.add({{k}, {c[0] - k}}, Scalar(k == 1 ? 2 : 1));
                     return t;
                   },
                   [](const CIdx& c) { return Scalar(c[0] == 0 ? 1 : 0); },
                   {0},
                   [](const CIdx& c) { return "c_" + std::to_string(c[0]); },
                   [](const CIdx& c) { return c[0]; },
                   [](int b) {
                     std::vector<CIdx> r;
                     for (int i = 0; i <= b; ++i) r.push_back({i});
                     return r;
                   }};
  const Coalgebra C(d);
  const Verdict v = check_coalgebra(C, C.indices(4));
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.failures.empty());
}

TEST_CASE("convolution inverse of Φ(c_n) = y^n") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  const ConvMap inv = convolution_inverse(cy.triv.phi, cy.C, cy.P, 10);
  for (int n = 0; n <= 10; ++n) {
    const Scalar sign(n % 2 ? -1 : 1);
    CHECK(inv({n}) == Tensor("P", {{0, n}}, sign * oracle::power(oracle::qv(), n * (n - 1) / 2)));
  }
  const ConvMap bad("P", [](const CIdx& c) { return Tensor("P", {{0, c[0]}}, Scalar(2)); });
  CHECK_THROWS_AS(convolution_inverse(bad, cy.C, cy.P, 3), NotUnitalAtE);
}

TEST_CASE("GL_q(2) coalgebra conventions") {
  int passing = 0;
  for (bool inv : {false, true})
    for (bool sw : {false, true}) {
      const auto C = glq2_coalgebra(inv, sw);
      std::vector<CIdx> cs;
      for (int m = 0; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) cs.push_back({m, n});
      passing += check_coalgebra(*C, cs).ok;
    }
  // Coassociativity alone does not pin the convention down; ψ does.
  CHECK(passing >= 1);
  const Glq2 g = build_glq2(2, 3, 2);
  int both = 0;
  for (const auto& c : g.candidates) both += c.passes();
  CHECK(both == 1);
  CHECK(g.convention == "C[q^-2,direct]");
}
