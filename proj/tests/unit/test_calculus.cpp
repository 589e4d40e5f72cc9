#include "doctest.h"
#include "oracles.hpp"
#include "psibundle/calculus.hpp"
#include "psibundle/errors.hpp"
#include "psibundle/instances.hpp"

using namespace psb;

namespace {

std::vector<CIdx> upto(int n) {
  std::vector<CIdx> r;
  for (int i = 0; i <= n; ++i) r.push_back({i});
  return r;
}

std::vector<Mono> box(int dx, int dy) {
  std::vector<Mono> r;
  for (int a = -dx; a <= dx; ++a)
    for (int b = 0; b <= dy; ++b) r.push_back({a, b});
  return r;
}

// du = 1⊗u − u⊗1, written out by hand.
Tensor du(const Mono& u) {
  Tensor t("PP", {{0, 0}, u});
  t.add({u, {0, 0}}, Scalar(-1));
  return t;
}

GammaTable symbolic_gamma(int nmax, int imax) {
  GammaTable g;
  for (int n = 1; n <= nmax; ++n)
    for (int i = -imax; i <= imax; ++i)
      g[{n, i}] = Scalar::variable("G" + std::to_string(n) + "_" + std::to_string(i + imax));
  return g;
}

}  // namespace

TEST_CASE("universal differential") {
  const auto P = cylinder_presentation();
  for (const auto& u : box(1, 2)) CHECK(d(u, *P) == du(u));
  CHECK(u_dv({0, 0}, {0, 1}, *P) == du({0, 1}));
  CHECK(is_form(u_dv({1, 0}, {0, 1}, *P), *P));
  CHECK_FALSE(is_form(Tensor("PP", {{1, 0}, {0, 1}}), *P));
  CHECK(check_leibniz(*P, box(1, 2)).ok);
}

TEST_CASE("d commutes with the entwining") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  CHECK(check_d_covariance(*cy.psi, upto(3), box(1, 2), 2).ok);
  CHECK(check_d_covariance(*cy.psi, upto(2), box(1, 1), 3).ok);
}

TEST_CASE("horizontal forms and the connection of the trivialization") {
  const Cylinder cy = build_cylinder({2, 4, 4});
  const auto b = cy.bundle();
  check_m_hypothesis(*b);
  Horizontals h(b);
  CHECK(h.check_covariance({{0, 1}, {1, 1}, {0, 0}}, upto(3)).ok);
  CHECK(h.contains(u_dv({0, 0}, {1, 0}, *cy.P)));
  CHECK_FALSE(h.contains(du({0, 1})));

  const ConvMap w = trivial_connection(cy.triv, zero_form_map(cy.C), upto(3));
  // Φ⁻¹*dΦ at c_1 is Φ⁻¹(c_0)dΦ(c_1) + Φ⁻¹(c_1)dΦ(c_0) = dy.
  CHECK(w({1}) == du({0, 1}));
  const auto ov = check_omega(*b, w, upto(3));
  CHECK(ov.ok());
  const FormMap Pi = connection_from_omega(b, w);
  CHECK(Pi(du({0, 1})) == du({0, 1}));
  CHECK(Pi(du({1, 0})).is_zero());
  std::vector<Tensor> forms;
  for (const auto& u : box(1, 1))
    for (const auto& v : box(1, 1))
      if (Tensor f = u_dv(u, v, *cy.P); !f.is_zero()) forms.push_back(f);
  CHECK(check_connection(Pi, h, forms, {{1, 0}, {0, 1}}, upto(2)).ok);
  CHECK_FALSE(check_connection([](const Tensor& t) { return t; }, h, forms, {}, {}).ok);
  CHECK(check_phi_intertwining(*b, upto(2), forms).ok);
}

TEST_CASE("trivial connection with symbolic Γ matches the double sum") {
  const Cylinder cy = build_cylinder({6, 4, 4});
  const GammaTable g = symbolic_gamma(3, 2);
  const ConvMap beta = cylinder_beta(g, cy.P);
  CHECK(check_beta(cy.triv, beta, upto(3)).ok);
  const ConvMap w = trivial_connection(cy.triv, beta, upto(3));
  for (int n = 0; n <= 3; ++n) CHECK(cylinder_omega_closed(g, *cy.P, n) == w({n}));
  CHECK(check_omega(*cy.bundle(), w, upto(3)).ok());

  const ConvMap notM("PP", [&](const CIdx& c) { return c[0] == 1 ? u_dv({1, 0}, {0, 1}, *cy.P) : Tensor("PP"); });
  CHECK_FALSE(check_beta(cy.triv, notM, upto(2)).ok);
  CHECK_THROWS_AS(trivial_connection(cy.triv, notM, upto(2)), BetaConditionFails);
}

TEST_CASE("gauge law for local gauge fields") {
  const Cylinder cy = build_cylinder({6, 4, 4});
  GaugeSeq G{Scalar(1)};
  for (int n = 1; n < 4; ++n) G.push_back(Scalar::variable("g" + std::to_string(n)));
  GammaTable g1;
  for (int i = -1; i <= 1; ++i) g1[{1, i}] = Scalar::variable("H" + std::to_string(i + 1));
  const ConvMap beta = cylinder_beta(g1, cy.P);
  const ConvMap gamma = to_gamma(G, cy.P, 0);
  const ConvMap bg = beta_gauge(cy.triv, gamma, beta, 3);
  CHECK(check_beta(cy.triv, bg, upto(3)).ok);
  const ConvMap before = trivial_connection(cy.triv, beta, upto(3));
  const ConvMap inverse = trivial_connection(gauge_bundle(cy.triv, to_gamma(seq_inv(G), cy.P, 0), 3), bg, upto(3));
  for (int n = 1; n <= 3; ++n) CHECK(inverse({n}) == before({n}));
  // Pairing the transformed field with γ*Φ instead does not preserve ω.
  const ConvMap literal = trivial_connection(gauge_bundle(cy.triv, gamma, 3), bg, upto(3));
  CHECK_FALSE(literal({1}) == before({1}));
}

TEST_CASE("canonical connection") {
  const Cylinder cy = build_cylinder({3, 4, 4});
  CHECK_THROWS_AS(canonical_connection(cy.bundle(), cy.hopf, cy.pi, cy.section, box(1, 3)), SectionIncompatible);

  const SelfBundle sb = build_selfbundle(3);
  std::vector<CIdx> cs;
  for (const auto& m : sb.window) cs.push_back(m);
  auto section = [](const CIdx& c) -> std::optional<Element> { return Element(Mono{c[0]}); };
  const ConvMap omega = canonical_omega(sb.hopf, section);
  // ω(x^n) = S(x^n) d(x^n) = x^{-n}⊗x^n − 1⊗1.
  Tensor want("PP", {{-2}, {2}});
  want.add({{0}, {0}}, Scalar(-1));
  CHECK(omega({2}) == want);
  CHECK(check_omega(*sb.bundle, omega, cs).ok());
  CHECK(check_ad_covariance(*sb.hopf, *sb.psi, omega, sb.window).ok);
  const ConvMap bad("PP", [&](const CIdx& c) { return Scalar(c[0]) * u_dv({1}, {1}, *sb.H); });
  CHECK_FALSE(check_omega(*sb.bundle, bad, cs).ok());
  CHECK_FALSE(check_ad_covariance(*sb.hopf, *sb.psi, bad, sb.window).ok);
}

TEST_CASE("first quantum-plane calculus") {
  const Cylinder cy = build_cylinder({3, 4, 4});
  const Scalar s = Scalar::variable("s"), qv = oracle::qv();
  const auto gens = plane_calculus_generators(*cy.P, 1, s);
  CHECK_THROWS_AS(GeneralCalculus("printed", cy.bundle(), gens.printed, {0, 1}, {{1}, {2}, {3}, {4}}), NotInKernel);
  const GeneralCalculus g("calc1", cy.bundle(), gens.corrected, {0, 1}, {{1}, {2}, {3}, {4}});
  CHECK(g.consistency().ok);
  CHECK(g.covariance().ok);
  const Element x(Mono{1, 0}), y(Mono{0, 1});
  const QForm dx = g.dgen(0), dy = g.dgen(1);
  CHECK(g.rmul(dx, x) == s * g.lmul(x, dx));
  CHECK(g.rmul(dx, y) == (Scalar(1) / qv) * g.lmul(y, dx));
  CHECK(g.rmul(dy, x) == qv * g.lmul(x, dy));
  CHECK(g.rmul(dy, y) == (Scalar(1) / qv) * g.lmul(y, dy));
  // Every generator of N maps to zero.
  for (const auto& n : gens.corrected) CHECK(g.project(n).is_zero());
  for (int a = -1; a <= 1; ++a)
    for (int b = 0; b <= 3; ++b) {
      const auto dims = g.dims({a, b});
      CHECK(dims.exact());
      CHECK(dims.lambda_iso());
    }
  CHECK(g.lambda_basis() == std::vector<CIdx>{{1}});
  // 1⊗c_2 ≡ (q⁻¹ − q) y⊗c_1 modulo χ(N).
  CHECK(g.pi_m(Tensor("PC", {{0, 0}, {2}})) == g.pi_m(Tensor("PC", {{0, 1}, {1}}, Scalar(1) / qv - qv)));
  CHECK(g.check_phi_n({{0, 1}, {1, 1}, {0, 2}}, upto(2)).ok);

  const Scalar alpha = Scalar::variable("α");
  const auto qc = quotient_connection(g, cy.triv, alpha, {{0, 1}, {1, 1}, {0, 2}, {-1, 2}}, upto(3));
  CHECK(qc.ok());
  CHECK(qc.pi(dx).is_zero());
  CHECK(qc.pi(dy) == dy + alpha * dx);
  const auto broken = quotient_connection(g, cy.triv, alpha, {{0, 1}, {1, 1}}, upto(2), true);
  CHECK_FALSE(broken.projection.ok);
}

TEST_CASE("second quantum-plane calculus collapses") {
  const Cylinder cy = build_cylinder({3, 4, 4});
  const Scalar qv = oracle::qv();
  const auto gens = plane_calculus_generators(*cy.P, 2, Scalar::variable("s"));
  const GeneralCalculus g("calc2", cy.bundle(), gens.corrected, {0, 1}, {{1}, {2}, {3}, {4}});
  CHECK(g.consistency().ok);
  CHECK(g.covariance().ok);
  const Element x(Mono{1, 0}), y(Mono{0, 1});
  const QForm dx = g.dgen(0), dy = g.dgen(1);
  CHECK(g.rmul(dx, x) == (Scalar(1) / qv) * g.lmul(x, dx));
  CHECK(g.rmul(dx, y) == (Scalar(1) / qv) * g.lmul(y, dx) + ((Scalar(1) - qv) / qv) * g.lmul(x, dy));
  CHECK(g.rmul(dy, x) == g.lmul(x, dy));
  CHECK(g.rmul(dy, y) == (Scalar(1) / qv) * g.lmul(y, dy));
  CHECK(g.lambda_basis().empty());
  for (int a = -1; a <= 1; ++a)
    for (int b = 0; b <= 3; ++b) {
      const auto dims = g.dims({a, b});
      CHECK(dims.exact());
      CHECK(dims.m == 0);
      CHECK(dims.omega1 == dims.horizontal);
    }
  // χ of the second generator is (1 − q) x⊗c_1.
  const auto b = cy.bundle();
  CHECK(b->chi(gens.corrected[1]) == Tensor("PC", {{1, 0}, {1}}, Scalar(1) - qv));
}
