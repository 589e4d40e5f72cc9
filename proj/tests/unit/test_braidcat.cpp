#include "doctest.h"
#include "oracles.hpp"
#include "psibundle/braidcat.hpp"
#include "psibundle/errors.hpp"

using namespace psb;

TEST_CASE("braiding of graded elements") {
  const auto A = laurent_algebra();
  const auto B = braided_line_algebra();
  // Ψ(x²⊗c³) = q⁶ c³⊗x².
  CHECK(braiding(A, Element(Mono{2}), B, Element(Mono{3})) == Tensor("PP", {{3}, {2}}, oracle::power(oracle::qv(), 6)));
  CHECK(braiding(A, Element(Mono{-1}), B, Element(Mono{2})) == Tensor("PP", {{2}, {-1}}, oracle::power(oracle::qv(), -2)));
  CHECK_THROWS_AS(braiding(B, Element(Mono{0}) + Element(Mono{1}), B, Element(Mono{1})), NotHomogeneous);
  CHECK(check_hexagon(B, {{0}, {1}, {2}}).ok);
  CHECK(check_naturality(A, B, [](const Mono& m) { return Tensor("P", {m}, Scalar(m[0] + 2)); }, {{-1}, {1}},
                         {{0}, {2}})
            .ok);
}

TEST_CASE("braided tensor product algebra") {
  BraidedTensor T(laurent_algebra(), braided_line_algebra());
  CHECK(T.multiply(Mono{0, 1}, Mono{1, 0}) == Element(Mono{1, 1}, oracle::qv()));
  CHECK(T.multiply(Mono{0, 2}, Mono{3, 0}) == Element(Mono{3, 2}, oracle::power(oracle::qv(), 6)));
  CHECK(T.multiply(Mono{1, 0}, Mono{0, 1}) == Element(Mono{1, 1}));
  CHECK(T.split(T.join({2}, {3})) == std::pair<Mono, Mono>{{2}, {3}});
  CHECK(T.check_algebra({{-1, 0}, {0, 1}, {1, 1}, {0, 2}}).ok);
  BraidedTensor small(laurent_algebra(), braided_line_algebra(), 3);
  CHECK_THROWS_AS(small.multiply(Mono{0, 2}, Mono{2, 0}), DegreeOverflow);
}

TEST_CASE("braided line coproduct and antipode") {
  BraidedLine line(10);
  for (int n = 0; n <= 10; ++n) {
    Element want;
    for (int k = 0; k <= n; ++k) want.add(Mono{k, n - k}, oracle::binom(n, k));
    CHECK(line.coproduct(n) == want);
    const Scalar sign(n % 2 ? -1 : 1);
    CHECK(line.antipode(n) == Element(Mono{n}, sign * oracle::power(oracle::qv(), n * (n - 1) / 2)));
  }
  CHECK(line.check_hopf().ok);
  CHECK_THROWS_AS(line.coproduct(11), WindowExceeded);
  std::vector<CIdx> cs;
  for (int n = 0; n <= 6; ++n) cs.push_back({n});
  CHECK(check_coalgebra(*line.coalgebra(), cs).ok);
}

TEST_CASE("the braided bundle is the quantum cylinder") {
  BraidedBundle bb(6);
  // Δ_R(x⊗c) = x⊗1⊗c_1 + x⊗c⊗c_0.
  Tensor want("PC", {{1, 0}, {1}});
  want.add({{1, 1}, {0}}, Scalar(1));
  CHECK(bb.coaction({1, 1}) == want);
  const Cylinder cy = build_cylinder({2, 4, 4});
  const auto r = cylinder_identification(bb, cy, 2, 4, 4);
  CHECK(r.algebra.ok);
  CHECK(r.coaction.ok);
  CHECK(r.entwining.ok);
  CHECK(r.chi_inverse.ok);
  std::vector<CIdx> cs{{0}, {1}, {2}};
  CHECK(check_entwining(*bb.psi(), cs, cylinder_window(*bb.P().P(), 1, 2)).ok);
}
