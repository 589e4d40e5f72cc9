#include "psibundle/instances.hpp"

namespace psb {

// ---------------------------------------------------------------------------
// Quantum cylinder

PresentationPtr cylinder_presentation() {
  auto P = std::make_shared<Presentation>(std::vector<std::string>{"x", "y"},
                                          std::vector<Generator>{{"x", {1, 0}, true}, {"y", {0, 1}, false}});
  P->add_rule({{1, 1}, {0, 1}}, Element(Mono{1, 1}, q()));
  P->add_rule({{1, 1}, {0, -1}}, Element(Mono{-1, 1}, qpow(-1)));
  return P;
}

HopfPtr cylinder_hopf(const PresentationPtr& P) {
  const Mono one = P->one(), x{1, 0}, xi{-1, 0}, y{0, 1};
  Tensor dy("PP", {one, y});
  dy.add({y, x}, Scalar(1));
  std::map<Letter, Tensor> delta{
      {{0, 1}, Tensor("PP", {x, x})}, {{0, -1}, Tensor("PP", {xi, xi})}, {{1, 1}, dy}};
  std::map<Letter, Scalar> eps{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}, {{1, 1}, Scalar(0)}};
  std::map<Letter, Element> S{{{0, 1}, Element(xi)},
                              {{0, -1}, Element(x)},
                              {{1, 1}, Scalar(-1) * P->multiply(y, xi)}};
  return std::make_shared<HopfData>(P, delta, eps, S);
}

CoalgebraPtr cylinder_coalgebra(const Scalar& base) {
  Coalgebra::Def d;
  d.name = "C";
  d.coproduct = [base](const CIdx& c) {
    Tensor t("CC");
    for (int k = 0; k <= c[0]; ++k) t.add({{k}, {c[0] - k}}, q_binom(c[0], k, base));
    return t;
  };
  d.counit = [](const CIdx& c) { return Scalar(c[0] == 0 ? 1 : 0); };
  d.e = {0};
  d.format = [](const CIdx& c) { return "c_" + std::to_string(c[0]); };
  d.filtration = [](const CIdx& c) { return c[0]; };
  d.indices = [](int bound) {
    std::vector<CIdx> r;
    for (int n = 0; n <= bound; ++n) r.push_back({n});
    return r;
  };
  return std::make_shared<Coalgebra>(std::move(d));
}

Tensor cylinder_psi(const Presentation& P, const CIdx& c, const Mono& u, bool drop_q_power) {
  (void)P;
  const int l = c[0], m = u[0], n = u[1];
  Tensor r("PC");
  for (int k = 0; k <= n; ++k) {
    Scalar coef = q_binom(n, k) * qpow(drop_q_power ? l * k : l * (k + m));
    r.add({{m, k}, {n + l - k}}, coef);
  }
  return r;
}

Tensor cylinder_psiC(const CIdx& b, const CIdx& c) {
  const int m = b[0], n = c[0];
  Tensor r("CC");
  for (int k = 0; k <= n; ++k) r.add({{k}, {m + n - k}}, q_binom(n, k) * qpow(k * m));
  return r;
}

std::vector<Mono> cylinder_window(const Presentation& P, int dx, int dy) {
  DegreeWindow w;
  w.bounds = {{-dx, dx}, {0, dy}};
  return P.enumerate(w);
}

Cylinder build_cylinder(const CylinderOptions& opts) {
  if (opts.dx < 1 || opts.dy < 1 || opts.dc < 1) throw ConfigInvalid("cylinder windows must be positive");
  Cylinder cy;
  cy.opts = opts;
  cy.P = cylinder_presentation();
  cy.hopf = cylinder_hopf(cy.P);
  Scalar base = opts.mutation == CylinderMutation::wrong_base ? q() * q() : q();
  cy.C = cylinder_coalgebra(base);
  auto P = cy.P;
  bool drop = opts.mutation == CylinderMutation::drop_q_power;
  cy.psi = std::make_shared<Entwining>(P, cy.C, [P, drop](const CIdx& c, const Mono& u) {
    return cylinder_psi(*P, c, u, drop);
  });
  cy.psiC = std::make_shared<PsiC>(cy.C, cylinder_psiC);
  cy.pi = [](const Mono& m) { return Tensor("C", {{m[1]}}); };
  cy.section = [](const CIdx& c) -> std::optional<Element> {
    if (c.size() != 1 || c[0] < 0) return std::nullopt;
    return Element(Mono{0, c[0]});
  };
  cy.window = cylinder_window(*P, opts.dx, opts.dy);
  cy.cwindow = cy.C->indices(opts.dc);
  auto bundle = std::make_shared<BundleData>(cy.psi, cy.window, cy.cwindow,
                                             [](const CIdx& c) { return std::vector<int>{0, c[0]}; });
  bool broken = opts.mutation == CylinderMutation::broken_phi;
  ConvMap phi("P", [broken](const CIdx& c) { return Tensor("P", {{0, c[0]}}, broken && c[0] == 1 ? 2 : 1); });
  cy.triv = TrivialBundle{bundle, cy.psiC, phi, convolution_inverse(phi, cy.C, P, opts.dc)};
  return cy;
}

// ---------------------------------------------------------------------------
// GL_q(2)

namespace {

enum GlGen { kGamma = 0, kBeta = 1, kAlpha = 2, kDelta = 3, kD = 4 };

}  // namespace

PresentationPtr glq2_presentation() {
  auto P = std::make_shared<Presentation>(std::vector<std::string>{"row1", "row2"},
                                          std::vector<Generator>{{"γ", {0, 1}, false},
                                                                 {"β", {1, 0}, false},
                                                                 {"α", {1, 0}, false},
                                                                 {"δ", {0, 1}, false},
                                                                 {"D", {-1, -1}, true}});
  auto m = [&](std::initializer_list<std::pair<int, int>> exps) {
    Mono r = P->one();
    for (auto [g, e] : exps) r[g] += e;
    return r;
  };
  const Scalar qi = qpow(-1);
  P->add_rule({{kAlpha, 1}, {kGamma, 1}}, Element(m({{kGamma, 1}, {kAlpha, 1}}), q()));
  P->add_rule({{kAlpha, 1}, {kBeta, 1}}, Element(m({{kBeta, 1}, {kAlpha, 1}}), q()));
  P->add_rule({{kBeta, 1}, {kGamma, 1}}, Element(m({{kGamma, 1}, {kBeta, 1}})));
  P->add_rule({{kDelta, 1}, {kGamma, 1}}, Element(m({{kGamma, 1}, {kDelta, 1}}), qi));
  P->add_rule({{kDelta, 1}, {kBeta, 1}}, Element(m({{kBeta, 1}, {kDelta, 1}}), qi));
  P->add_rule({{kAlpha, 1}, {kDelta, 1}},
              Element(m({{kD, -1}})) + Element(m({{kGamma, 1}, {kBeta, 1}}), q()));
  P->add_rule({{kDelta, 1}, {kAlpha, 1}},
              Element(m({{kD, -1}})) + Element(m({{kGamma, 1}, {kBeta, 1}}), qi));
  for (int g : {kGamma, kBeta, kAlpha, kDelta})
    for (int s : {1, -1}) P->add_rule({{kD, s}, {g, 1}}, Element(m({{g, 1}, {kD, s}})));
  return P;
}

CoalgebraPtr glq2_coalgebra(bool inverse_base, bool swapped) {
  Scalar base = inverse_base ? qpow(-2) : qpow(2);
  Coalgebra::Def d;
  d.name = std::string("C[") + (inverse_base ? "q^-2" : "q^2") + (swapped ? ",swapped]" : ",direct]");
  d.coproduct = [base, swapped](const CIdx& c) {
    Tensor t("CC");
    const int m = c[0], n = c[1];
    if (!swapped) {
      for (int k = 0; k <= m; ++k)
        t.add({{k, n}, {m - k, n + k}}, qpow(k * (m - k)) * q_binom(m, k, base));
    } else {
      for (int k = 0; k <= n; ++k)
        t.add({{m, k}, {m + k, n - k}}, qpow(k * (n - k)) * q_binom(n, k, base));
    }
    return t;
  };
  d.counit = [swapped](const CIdx& c) { return Scalar((swapped ? c[1] : c[0]) == 0 ? 1 : 0); };
  d.e = {0, 0};
  d.format = [](const CIdx& c) { return "c_{" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "}"; };
  d.filtration = [](const CIdx& c) { return c[0]; };
  d.indices = [](int bound) {
    std::vector<CIdx> r;
    for (int m = 0; m <= bound; ++m)
      for (int n = -bound; n <= bound; ++n) r.push_back({m, n});
    return r;
  };
  return std::make_shared<Coalgebra>(std::move(d));
}

Tensor glq2_psi(const Presentation& P, const CIdx& c, const Mono& u) {
  const int i = c[0], j = c[1];
  const int l = u[kGamma], m = u[kBeta], k = u[kAlpha], n = u[kDelta], r = u[kD];
  const Scalar b = qpow(-2);
  // u = q^{-k(l+m)} α^k γ^l β^m δ^n D^r in the ordering of the closed formula.
  // D = (αδ − qβγ)⁻¹ lowers the second C index, so D^r shifts it by −r.
  const int shift = -k * (l + m);
  Tensor out("PC");
  for (int s = 0; s <= m; ++s)
    for (int t = 0; t <= n; ++t) {
      Scalar coef = q_binom(m, s, b) * q_binom(n, t, b) *
                    qpow((m - s) * (s + t - l) + (n - t) * t - i * (k + l - t - s) + shift);
      Word w;
      for (int a = 0; a < k + m - s; ++a) w.push_back({kAlpha, 1});
      for (int a = 0; a < l + n - t; ++a) w.push_back({kGamma, 1});
      for (int a = 0; a < s; ++a) w.push_back({kBeta, 1});
      for (int a = 0; a < t; ++a) w.push_back({kDelta, 1});
      for (int a = 0; a < std::abs(r); ++a) w.push_back({kD, r > 0 ? 1 : -1});
      CIdx cc{i + m + n - s - t, j - r + t + s};
      for (const Element tmp = P.normal_form(w); const auto& [mono, x] : tmp.terms()) out.add({mono, cc}, coef * x);
    }
  return out;
}

Glq2 build_glq2(int max_degree, int cbound, int ebound) {
  Glq2 g;
  g.P = glq2_presentation();
  DegreeWindow w;
  w.max_length = max_degree;
  g.window = g.P->enumerate(w);
  auto P = g.P;
  for (bool inv : {false, true})
    for (bool swapped : {false, true}) {
      GlqConvention cand;
      cand.inverse_base = inv;
      cand.swapped = swapped;
      auto C = glq2_coalgebra(inv, swapped);
      cand.name = C->name();
      auto psi = std::make_shared<Entwining>(P, C, [P](const CIdx& c, const Mono& u) { return glq2_psi(*P, c, u); });
      cand.coalgebra = check_coalgebra(*C, C->indices(cbound));
      cand.entwining = check_entwining(*psi, C->indices(ebound), g.window);
      if (cand.passes() && g.convention.empty()) {
        g.convention = cand.name;
        g.C = C;
        g.psi = psi;
      }
      g.candidates.push_back(std::move(cand));
    }
  if (!g.C) {
    std::string detail;
    for (const auto& c : g.candidates) {
      const auto& v = c.coalgebra.ok ? c.entwining : c.coalgebra;
      detail += "; " + c.name + ": " + (v.failures.empty() ? "?" : v.failures.front().at);
    }
    throw NoConsistentConvention(detail.substr(2));
  }
  g.cwindow = g.C->indices(ebound);
  g.bundle = std::make_shared<BundleData>(g.psi, g.window, g.cwindow,
                                          [](const CIdx&) { return std::vector<int>{0, 0}; });
  return g;
}

// ---------------------------------------------------------------------------
// Hopf self-bundle on k[x, x⁻¹]

SelfBundle build_selfbundle(int dx) {
  SelfBundle sb;
  auto H = std::make_shared<Presentation>(std::vector<std::string>{"x"},
                                          std::vector<Generator>{{"x", {1}, true}});
  sb.H = H;
  std::map<Letter, Tensor> delta{{{0, 1}, Tensor("PP", {{1}, {1}})}, {{0, -1}, Tensor("PP", {{-1}, {-1}})}};
  std::map<Letter, Scalar> eps{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}};
  std::map<Letter, Element> S{{{0, 1}, Element(Mono{-1})}, {{0, -1}, Element(Mono{1})}};
  sb.hopf = std::make_shared<HopfData>(H, delta, eps, S);
  sb.C = hopf_coalgebra(sb.hopf);
  auto hopf = sb.hopf;
  sb.psi = hopf_entwining(H, [hopf](const Mono& u) { return hopf->delta(u); }, hopf, sb.C);
  DegreeWindow w;
  w.bounds = {{-dx, dx}};
  sb.window = H->enumerate(w);
  sb.bundle = std::make_shared<BundleData>(sb.psi, sb.window, sb.window,
                                           [](const CIdx&) { return std::vector<int>{0}; });
  return sb;
}

}  // namespace psb
