#include "psibundle/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "psibundle/braidcat.hpp"
#include "psibundle/calculus.hpp"
#include "psibundle/errors.hpp"
#include "psibundle/instances.hpp"

namespace psb {

namespace {

struct CheckDef {
  std::string id;
  std::string anchor;
  std::vector<std::string> deps;
  std::function<Verdict()> run;
};

struct Catalog {
  std::vector<std::pair<std::string, int>> windows;
  std::vector<std::string> conventions;
  std::vector<CheckDef> checks;
};

struct Windows {
  int dx, dy, dc;
};

// Library errors become a failing verdict carrying the error text.
Verdict guarded(const std::function<Verdict()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    Verdict v;
    v.checked = 1;
    v.fail("raised", e.what(), "");
    return v;
  }
}

std::vector<CIdx> cs_upto(int n) {
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

Verdict span_equals(const std::vector<Element>& got, const std::vector<Element>& want, const Presentation& P) {
  Verdict v;
  Span<std::map<Mono, Scalar>> a, b;
  auto row = [](const Element& e) {
    std::map<Mono, Scalar> r;
    for (const auto& [m, c] : e.terms()) r[m] = c;
    return r;
  };
  for (const auto& e : got) a.add(row(e));
  for (const auto& e : want) b.add(row(e));
  for (const auto& e : want)
    v.expect<bool>(a.contains(row(e)), true, [&] { return "expected " + P.str(e); },
                   [](bool x) { return std::string(x ? "in span" : "missing"); });
  v.expect<std::size_t>(a.dim(), b.dim(), [] { return std::string("dimension"); },
                        [](std::size_t n) { return std::to_string(n); });
  return v;
}

GammaTable symbolic_gamma(int nmax, int imax) {
  GammaTable g;
  for (int n = 1; n <= nmax; ++n)
    for (int i = -imax; i <= imax; ++i)
      g[{n, i}] = Scalar::variable("G" + std::to_string(n) + "_" + std::to_string(i + imax));
  return g;
}

GaugeSeq symbolic_seq(const std::string& stem, int length) {
  GaugeSeq g{Scalar(1)};
  for (int n = 1; n < length; ++n) g.push_back(Scalar::variable(stem + std::to_string(n)));
  return g;
}

// ---------------------------------------------------------------------------
// Cylinder

Catalog cylinder_catalog(const Windows& w, const std::string& mutate) {
  CylinderOptions opts{w.dx, w.dy, w.dc, CylinderMutation::none};
  if (mutate == "drop-q-power") opts.mutation = CylinderMutation::drop_q_power;
  if (mutate == "wrong-base") opts.mutation = CylinderMutation::wrong_base;
  if (mutate == "broken-phi") opts.mutation = CylinderMutation::broken_phi;
  auto cy = std::make_shared<Cylinder>(build_cylinder(opts));
  const bool non_m = mutate == "non-m-gamma";
  const bool bad_beta = mutate == "non-classified-beta";
  const bool identity_pi = mutate == "identity-pi";

  Catalog cat;
  cat.windows = {{"x_degree", w.dx}, {"max_degree", w.dy}, {"c_index", w.dc}};
  auto& out = cat.checks;
  const std::vector<std::string> coalg{"coalgebra.axioms"};
  const std::vector<std::string> ent{"entwining.axioms"};
  const std::vector<std::string> bundle{"bundle.chi", "bundle.coinvariants"};
  const std::vector<std::string> triv{"gauge.trivialization"};

  out.push_back({"coalgebra.axioms", "Δc_n = Σ [n k]_q c_k⊗c_{n−k}, ε(c_n) = δ_{n0}, e = c₀", {}, [cy] {
                   return check_coalgebra(*cy->C, cy->C->indices(3 * cy->opts.dc));
                 }});
  out.push_back({"coalgebra.psiC", "ψ^C(c_m⊗c_n) = Σ [n k]_q q^{km} c_k⊗c_{m+n−k}", coalg,
                 [cy] { return check_psiC(*cy->psiC, cy->cwindow); }});
  out.push_back({"coalgebra.hopf", "Δx = x⊗x, Δy = 1⊗y + y⊗x, S(x) = x⁻¹, S(y) = −yx⁻¹", {},
                 [cy] { return check_hopf(*cy->hopf, cy->window); }});
  out.push_back({"entwining.axioms", "ψ(c_l⊗x^m yⁿ) = Σ [n k]_q q^{l(k+m)} x^m y^k⊗c_{n+l−k}", coalg,
                 [cy] { return check_entwining(*cy->psi, cy->cwindow, cy->window); }});
  out.push_back({"entwining.coaction", "Δ_R u = ψ(e⊗u) is a coaction and an algebra map", coalg,
                 [cy] { return check_coaction(*cy->psi, cy->window); }});
  out.push_back({"bundle.coinvariants", "M = k[x, x⁻¹]", ent, [cy] {
                   std::vector<Element> want;
                   for (int m = -cy->opts.dx; m <= cy->opts.dx; ++m) want.push_back(Element(Mono{m, 0}));
                   Verdict v = span_equals(cy->bundle()->M().basis, want, *cy->P);
                   v.merge(cy->bundle()->M().closure);
                   return v;
                 }});
  out.push_back({"bundle.chi", "χ_M: P⊗_M P → P⊗C bijective", ent, [cy] {
                   Verdict v;
                   for (int a = -cy->opts.dx; a <= cy->opts.dx; ++a)
                     for (int n = 0; n <= cy->opts.dy; ++n) {
                       const auto comp = cy->bundle()->component({a, n});
                       v.merge(comp.well_defined);
                       v.expect<bool>(comp.bijective, true,
                                      [&] { return "component (" + std::to_string(a) + "," + std::to_string(n) + ")"; },
                                      [&](bool b) { return b ? std::string("bijective") : "det " + comp.det.str(); });
                     }
                   return v;
                 }});
  out.push_back({"bundle.tau", "χ_M(τ(c)) = 1⊗c", ent, [cy] { return cy->bundle()->check_tau(); }});
  out.push_back({"gauge.trivialization", "Φ(c_n) = yⁿ convolution invertible and intertwining ψ, ψ^C", bundle,
                 [cy] { return check_trivialization(cy->triv, cy->cwindow); }});
  out.push_back({"gauge.phi_inverse", "Φ⁻¹(c_n) = (−1)ⁿ q^{n(n−1)/2} yⁿ", bundle, [cy] {
                   Verdict v;
                   const int N = std::max(10, cy->opts.dc);
                   const ConvMap inv = convolution_inverse(cy->triv.phi, cy->C, cy->P, N);
                   const ConvMap one = unit_map(cy->C, cy->P);
                   const ConvMap left = convolve(cy->triv.phi, inv, cy->C, cy->P);
                   const ConvMap right = convolve(inv, cy->triv.phi, cy->C, cy->P);
                   auto show = [&](const Tensor& t) { return cy->psi->str(t); };
                   for (int n = 0; n <= N; ++n) {
                     auto at = [n] { return "c_" + std::to_string(n); };
                     const Scalar sign(n % 2 ? -1 : 1);
                     v.expect<Tensor>(inv({n}), Tensor("P", {{0, n}}, sign * qpow(n * (n - 1) / 2)), at, show);
                     v.expect<Tensor>(left({n}), one({n}), at, show);
                     v.expect<Tensor>(right({n}), one({n}), at, show);
                   }
                   return v;
                 }});
  out.push_back({"gauge.theta", "Θ: M⊗C → P, Θ(x⊗c) = xΦ(c), is bijective", triv,
                 [cy] { return check_theta(cy->triv, cy->window, cy->cwindow); }});
  out.push_back({"gauge.group", "γ(c_n) = Γ_n xⁿ with (ΓΓ')_n = Σ [n k]_q Γ_k Γ'_{n−k}", bundle, [cy] {
                   Verdict v;
                   const GaugeSeq G = symbolic_seq("g", 5), H = symbolic_seq("h", 5), K = symbolic_seq("k", 5);
                   const GaugeSeq one = seq_unit(5);
                   auto show = [](const GaugeSeq& s) {
                     std::string r;
                     for (const auto& x : s) r += (r.empty() ? "" : ", ") + x.str();
                     return "(" + r + ")";
                   };
                   auto at = [](const char* what) { return [what] { return std::string(what); }; };
                   const GaugeSeq GH = seq_mul(G, H);
                   v.expect<bool>(GH.size() == 5 && GH[0] == Scalar(1), true, at("closure"),
                                  [](bool b) { return std::string(b ? "unital" : "not unital"); });
                   v.expect<GaugeSeq>(seq_mul(GH, K), seq_mul(G, seq_mul(H, K)), at("associativity"), show);
                   v.expect<GaugeSeq>(seq_mul(G, one), G, at("right unit"), show);
                   v.expect<GaugeSeq>(seq_mul(one, G), G, at("left unit"), show);
                   const GaugeSeq Gi = seq_inv(G);
                   v.expect<GaugeSeq>(seq_mul(G, Gi), one, at("right inverse"), show);
                   v.expect<GaugeSeq>(seq_mul(Gi, G), one, at("left inverse"), show);
                   const ConvMap prod = convolve(to_gamma(G, cy->P, 0), to_gamma(H, cy->P, 0), cy->C, cy->P);
                   const ConvMap hom = to_gamma(GH, cy->P, 0);
                   for (int n = 0; n < 5; ++n)
                     v.expect<Tensor>(prod({n}), hom({n}), [n] { return "to_gamma homomorphism at c_" + std::to_string(n); },
                                      [&](const Tensor& t) { return cy->psi->str(t); });
                   return v;
                 }});
  out.push_back({"gauge.condition", "ψ^C₂₃ψ₁₂(id⊗γ⊗id)(id⊗Δ) = (γ⊗id⊗id)(Δ⊗id)ψ^C", bundle, [cy, non_m] {
                   const ConvMap gamma = non_m ? ConvMap("P", [](const CIdx& c) { return Tensor("P", {{0, c[0]}}); })
                                               : to_gamma(symbolic_seq("g", 5), cy->P, 0);
                   return check_gauge(cy->triv, gamma, cs_upto(4));
                 }});

  // Connections on the universal calculus.
  const std::vector<Mono> small = box(1, 2);
  out.push_back({"connection.leibniz", "d(uv) = (du)v + u dv", ent,
                 [cy] { return check_leibniz(*cy->P, cy->window); }});
  out.push_back({"connection.d_covariance", "←ψⁿ∘d = (d⊗id)∘←ψⁿ on Ωⁿ", ent, [cy, small] {
                   Verdict v = check_d_covariance(*cy->psi, cs_upto(3), small, 2);
                   v.merge(check_d_covariance(*cy->psi, cs_upto(2), box(1, 1), 3));
                   return v;
                 }});
  out.push_back({"connection.m_hypothesis", "ψ(C⊗M) ⊂ M⊗C", bundle, [cy] {
                   Verdict v;
                   check_m_hypothesis(*cy->bundle());
                   v.checked = 1;
                   return v;
                 }});
  out.push_back({"connection.horizontal", "←ψ²(C⊗PΩ¹(M)P) ⊂ PΩ¹(M)P⊗C", {"connection.m_hypothesis"}, [cy] {
                   Horizontals h(cy->bundle());
                   return h.check_covariance({{0, 0}, {0, 1}, {1, 1}, {-1, 1}}, cs_upto(3));
                 }});
  out.push_back({"connection.projection", "Π is a left P-module projection with kernel PΩ¹(M)P, equivariant under ←ψ²",
                 {"connection.horizontal", "gauge.trivialization"}, [cy, small, identity_pi] {
                   const auto b = cy->bundle();
                   const ConvMap w = trivial_connection(cy->triv, zero_form_map(cy->C), cs_upto(3));
                   FormMap Pi = identity_pi ? FormMap([](const Tensor& t) { return t; }) : connection_from_omega(b, w);
                   Horizontals h(b);
                   std::vector<Tensor> forms;
                   for (const auto& u : small)
                     for (const auto& v : small) {
                       Tensor f = u_dv(u, v, *cy->P);
                       if (!f.is_zero() && u[1] + v[1] <= 2) forms.push_back(f);
                     }
                   Verdict v = check_connection(Pi, h, forms, {{1, 0}, {-1, 0}, {0, 1}}, cs_upto(2));
                   v.merge(check_phi_intertwining(*b, cs_upto(2), forms));
                   return v;
                 }});
  auto cw = std::make_shared<Cylinder>(build_cylinder({std::max(6, w.dx), w.dy, w.dc, opts.mutation}));
  out.push_back({"connection.trivial", "ω = Φ⁻¹*dΦ + Φ⁻¹*β*Φ with β(cⁿ) = Σ_i Γ_{n,i} xⁱ d(x^{n−i})",
                 {"gauge.trivialization", "connection.m_hypothesis"}, [cw, bad_beta] {
                   Verdict v;
                   const GammaTable g = symbolic_gamma(3, 2);
                   const auto& P = *cw->P;
                   const ConvMap beta = bad_beta ? ConvMap("PP",
                                                           [cw](const CIdx& c) {
                                                             return c[0] == 1 ? u_dv({1, 0}, {0, 1}, *cw->P) : Tensor("PP");
                                                           })
                                                 : cylinder_beta(g, cw->P);
                   const ConvMap w = trivial_connection(cw->triv, beta, cs_upto(3));
                   auto show = [&](const Tensor& t) { return cw->psi->str(t); };
                   for (int n = 0; n <= 3; ++n)
                     v.expect<Tensor>(cylinder_omega_closed(g, P, n), w({n}),
                                      [n] { return "closed form at c_" + std::to_string(n); }, show);
                   const auto ov = check_omega(*cw->bundle(), w, cs_upto(3));
                   v.merge(ov.condition1);
                   v.merge(ov.condition2);
                   return v;
                 }});
  out.push_back({"connection.gauge_law", "β ↦ γ⁻¹*β*γ + γ⁻¹*dγ leaves ω invariant",
                 {"gauge.trivialization", "gauge.condition"}, [cw] {
                   Verdict v;
                   const GaugeSeq G = symbolic_seq("g", 4);
                   GammaTable g1;
                   for (int i = -1; i <= 1; ++i) g1[{1, i}] = Scalar::variable("H" + std::to_string(i + 1));
                   const ConvMap beta = cylinder_beta(g1, cw->P);
                   const ConvMap gamma = to_gamma(G, cw->P, 0);
                   const ConvMap bg = beta_gauge(cw->triv, gamma, beta, 3);
                   v.merge(check_beta(cw->triv, bg, cs_upto(3)));
                   const ConvMap before = trivial_connection(cw->triv, beta, cs_upto(3));
                   const ConvMap after = trivial_connection(gauge_bundle(cw->triv, to_gamma(seq_inv(G), cw->P, 0), 3), bg,
                                                            cs_upto(3));
                   for (int n = 1; n <= 3; ++n)
                     v.expect<Tensor>(after({n}), before({n}), [n] { return "c_" + std::to_string(n); },
                                      [&](const Tensor& t) { return cw->psi->str(t); });
                   const ConvMap literal = trivial_connection(gauge_bundle(cw->triv, gamma, 3), bg, cs_upto(3));
                   if (!(literal({1}) == before({1})))
                     v.notes.push_back("the law holds for Φ ↦ γ⁻¹*Φ; with Φ ↦ γ*Φ it fails at c_1");
                   return v;
                 }});

  // General calculi on the quantum plane.
  auto cc = std::make_shared<Cylinder>(build_cylinder({w.dx + 1, w.dy, w.dc, opts.mutation}));
  auto s = Scalar::variable("s");
  const std::vector<CIdx> ker = {{1}, {2}, {3}, {4}};
  std::vector<std::vector<int>> weights;
  for (int a = -1; a <= 1; ++a)
    for (int b = 0; b <= 3; ++b) weights.push_back({a, b});
  auto calc = [cc, s, ker](int which) {
    return std::make_shared<GeneralCalculus>("calculus " + std::to_string(which), cc->bundle(),
                                             plane_calculus_generators(*cc->P, which, s).corrected,
                                             std::vector<int>{0, 1}, ker);
  };
  auto dims_verdict = [weights](const GeneralCalculus& g, bool iso) {
    Verdict v;
    for (const auto& wt : weights) {
      const auto d = g.dims(wt);
      auto at = [&] { return g.name() + " component (" + std::to_string(wt[0]) + "," + std::to_string(wt[1]) + ")"; };
      v.expect<bool>(d.exact(), true, at, [&](bool) {
        return "Ω¹ " + std::to_string(d.omega1) + ", horizontal " + std::to_string(d.horizontal) + ", 𝓜 " +
               std::to_string(d.m) + ", χ_N rank " + std::to_string(d.chi_rank);
      });
      if (iso)
        v.expect<bool>(d.lambda_iso(), true, at, [&](bool) {
          return "P⊗Λ rank " + std::to_string(d.lambda_rank) + " of " + std::to_string(d.lambda_count) + ", 𝓜 " +
                 std::to_string(d.m);
        });
    }
    return v;
  };
  out.push_back({"calculus.plane1", "N generated by (1+s)x⊗x − s x²⊗1 − 1⊗x², y⊗x − qxy⊗1 − q1⊗xy + qx⊗y, (1+q)y⊗y − y²⊗1 − q1⊗y²",
                 bundle, [cc, s, ker, calc, dims_verdict] {
                   const auto g = calc(1);
                   Verdict v = g->consistency();
                   v.merge(g->covariance());
                   v.merge(dims_verdict(*g, true));
                   v.expect<std::vector<CIdx>>(g->lambda_basis(), {{1}}, [] { return std::string("Λ basis"); },
                                               [](const std::vector<CIdx>& b) {
                                                 std::string r;
                                                 for (const auto& c : b) r += " c_" + std::to_string(c[0]);
                                                 return "{" + r + " }";
                                               });
                   v.merge(g->check_phi_n({{0, 1}, {1, 1}, {0, 2}}, cs_upto(2)));
                   for (const auto& r : g->relations()) v.notes.push_back(r.lhs + " = " + r.rhs);
                   try {
                     GeneralCalculus("printed", cc->bundle(), plane_calculus_generators(*cc->P, 1, s).printed, {0, 1}, ker);
                   } catch (const NotInKernel& e) {
                     v.notes.push_back(std::string("literal first generator rejected: ") + e.what());
                   }
                   return v;
                 }});
  out.push_back({"calculus.plane2", "N generated by (1+q)x⊗x − x²⊗1 − q1⊗x², y⊗x − xy⊗1 − q1⊗xy + x⊗y, (1+q)y⊗y − y²⊗1 − q1⊗y²",
                 bundle, [calc, dims_verdict] {
                   const auto g = calc(2);
                   Verdict v = g->consistency();
                   v.merge(g->covariance());
                   v.merge(dims_verdict(*g, false));
                   for (const auto& r : g->relations()) v.notes.push_back(r.lhs + " = " + r.rhs);
                   if (g->lambda_basis().empty())
                     v.notes.push_back("χ(y⊗x − xy⊗1 − q1⊗xy + x⊗y) = (1−q)x⊗c₁ with x invertible, so 𝓜 = 0 and Ω¹ is horizontal");
                   return v;
                 }});
  out.push_back({"calculus.quotient", "Π(dx) = 0, Π(dy) = dy + α dx, ω(λ) = dy + α dx, β(c) = α dx",
                 {"calculus.plane1"}, [cc, calc, identity_pi] {
                   const auto g = calc(1);
                   const auto qc = quotient_connection(*g, cc->triv, Scalar::variable("α"), {{0, 1}, {1, 1}, {0, 2}, {-1, 2}},
                                                       cs_upto(3), identity_pi);
                   Verdict v = qc.projection;
                   v.merge(qc.equivariance);
                   v.merge(qc.condition1);
                   v.merge(qc.condition2);
                   v.merge(qc.beta_reproduction);
                   return v;
                 }});

  // Braided picture.
  out.push_back({"braided.line", "Δ̲c = c⊗1 + 1⊗c in k[c]⊗̲k[c]; Δ̲cⁿ = Σ [n k]_q cᵏ⊗c^{n−k}; S̲(cⁿ) = (−1)ⁿq^{n(n−1)/2}cⁿ",
                 {}, [w] {
                   const int N = std::max(10, w.dy);
                   BraidedLine line(N);
                   Verdict v = line.check_hopf();
                   auto showBB = [&](const Element& e) { return line.BB().P()->str(e); };
                   for (int n = 0; n <= N; ++n) {
                     Element want;
                     for (int k = 0; k <= n; ++k) want.add(Mono{k, n - k}, q_binom(n, k));
                     auto at = [n] { return "c^" + std::to_string(n); };
                     v.expect<Element>(line.coproduct(n), want, at, showBB);
                     v.expect<Element>(line.antipode(n), Element(Mono{n}, Scalar(n % 2 ? -1 : 1) * qpow(n * (n - 1) / 2)), at,
                                       [&](const Element& e) { return line.B().P->str(e); });
                   }
                   return v;
                 }});
  out.push_back({"braided.tensor", "(u⊗b)(v⊗c) = uΨ(b⊗v)c with Ψ(v⊗w) = q^{deg v·deg w} w⊗v", {}, [] {
                   const auto A = laurent_algebra();
                   const auto B = braided_line_algebra();
                   BraidedTensor T(A, B);
                   Verdict v = T.check_algebra(box(1, 2));
                   v.merge(check_hexagon(B, {{0}, {1}, {2}, {3}}));
                   v.merge(check_hexagon(A, {{-1}, {0}, {1}, {2}}));
                   v.merge(check_naturality(A, B, [](const Mono& m) { return Tensor("P", {m}, Scalar(m[0] + 1)); },
                                            {{-1}, {0}, {1}, {2}}, {{0}, {1}, {2}}));
                   v.expect<Element>(T.multiply(Mono{0, 1}, Mono{1, 0}), Element(Mono{1, 1}, q()),
                                     [] { return std::string("(1⊗c)(x⊗1)"); },
                                     [&](const Element& e) { return T.P()->str(e); });
                   return v;
                 }});
  out.push_back({"braided.identification", "cⁿ = c_n and y = 1⊗c: k[x, x⁻¹]⊗̲k[c] is the cylinder bundle", ent, [cy] {
                   BraidedBundle bb(std::max(cy->opts.dy, cy->opts.dc));
                   const auto r = cylinder_identification(bb, *cy, cy->opts.dx, cy->opts.dy, cy->opts.dc);
                   Verdict v = r.algebra;
                   v.merge(r.coaction);
                   v.merge(r.entwining);
                   v.merge(r.chi_inverse);
                   return v;
                 }});
  out.push_back({"braided.entwining", "ψ(c⊗u) = Ψ(c⊗u(0))u(1)", {}, [cy] {
                   // Products of two window elements and an index up to 3.
                   BraidedBundle bb(9);
                   return check_entwining(*bb.psi(), cs_upto(3), cylinder_window(*bb.P().P(), cy->opts.dx, 3));
                 }});

  // Dual side with κ(x) = 1, κ(y) = 0.
  out.push_back({"dual.cylinder", "c◁u = (id⊗κ)ψ(c⊗u): action, Δ-compatibility, I_κ coideal, ζ^M(c⊗u) ∈ C⊗^M C", ent,
                 [cy] {
                   const Character kappa{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}, {{1, 1}, Scalar(0)}};
                   const auto d = dual_side(*cy->psi, kappa, cs_upto(3), box(1, 2));
                   Verdict v = d.action;
                   v.merge(d.delta_compat);
                   v.merge(d.coideal);
                   v.merge(d.zeta);
                   v.notes = d.notes;
                   return v;
                 }});
  return cat;
}

// ---------------------------------------------------------------------------
// GL_q(2)

Catalog glq2_catalog(const Windows& w) {
  auto g = std::make_shared<Glq2>(build_glq2(w.dy, 3, w.dc));
  Catalog cat;
  cat.windows = {{"max_degree", w.dy}, {"c_index", w.dc}};
  cat.conventions.push_back("coalgebra: " + g->convention);
  cat.conventions.push_back("group-like e = c_{0,0}");
  auto& out = cat.checks;
  out.push_back({"coalgebra.conventions", "exactly one of {q², q⁻²} × {direct, swapped} passes", {}, [g] {
                   Verdict v;
                   std::size_t passing = 0;
                   for (const auto& c : g->candidates) {
                     passing += c.passes();
                     v.notes.push_back(c.name + (c.passes() ? ": pass" : ": fail"));
                   }
                   v.expect<std::size_t>(passing, 1, [] { return std::string("passing conventions"); },
                                         [](std::size_t n) { return std::to_string(n); });
                   return v;
                 }});
  out.push_back({"coalgebra.confluence", "the rewrite rules are locally confluent", {}, [g] {
                   Verdict v;
                   for (const auto& a : g->P->check_local_confluence(4))
                     v.fail(g->P->str(a.word), g->P->str(a.first), g->P->str(a.second));
                   ++v.checked;
                   return v;
                 }});
  out.push_back({"coalgebra.axioms", "Δ(c_{m,n}) = Σ_k q^{k(m−k)}[m k] c_{k,n}⊗c_{m−k,n+k}, ε(c_{m,n}) = δ_{m0}", {},
                 [g] { return check_coalgebra(*g->C, g->C->indices(3)); }});
  out.push_back({"entwining.axioms", "ψ(c_{i,j}⊗α^kγ^lβ^mδⁿDʳ) = Σ_s Σ_t …", {"coalgebra.axioms"},
                 [g] { return check_entwining(*g->psi, g->cwindow, g->window); }});
  out.push_back({"entwining.spot_values", "ψ(c_{1,0}⊗α) = q⁻¹α⊗c_{1,0}, ψ(c_{1,0}⊗δ) = γ⊗c_{2,0} + qδ⊗c_{1,1}",
                 {"coalgebra.axioms"}, [g] {
                   Verdict v;
                   const auto& P = *g->P;
                   const Mono a = P.mono({{"α", 1}}), d = P.mono({{"δ", 1}}), c = P.mono({{"γ", 1}});
                   Tensor want_d("PC", {c, {2, 0}});
                   want_d.add({d, {1, 1}}, q());
                   auto show = [&](const Tensor& t) { return g->psi->str(t); };
                   v.expect<Tensor>(g->psi->psi({1, 0}, a), Tensor("PC", {a, {1, 0}}, qpow(-1)),
                                    [] { return std::string("c_{1,0}⊗α"); }, show);
                   v.expect<Tensor>(g->psi->psi({1, 0}, d), want_d, [] { return std::string("c_{1,0}⊗δ"); }, show);
                   return v;
                 }});
  out.push_back({"bundle.coinvariants", "coinvariants isomorphic to A_{1/q}^{2|0}: generated by α, γ with γα = q⁻¹αγ",
                 {"entwining.axioms"}, [g] {
                   const auto& P = *g->P;
                   const int ia = P.gen_index("α"), ig = P.gen_index("γ");
                   std::vector<Element> want;
                   for (const auto& m : g->window) {
                     bool ok = true;
                     for (std::size_t i = 0; i < m.size(); ++i)
                       if (m[i] != 0 && static_cast<int>(i) != ia && static_cast<int>(i) != ig) ok = false;
                     if (ok) want.push_back(Element(m));
                   }
                   Verdict v = span_equals(g->bundle->M().basis, want, P);
                   const Mono a = P.mono({{"α", 1}}), c = P.mono({{"γ", 1}});
                   v.expect<Element>(P.multiply(c, a), qpow(-1) * P.multiply(a, c), [] { return std::string("γα"); },
                                     [&](const Element& e) { return P.str(e); });
                   return v;
                 }});
  return cat;
}

// ---------------------------------------------------------------------------
// Hopf self-bundle

Catalog selfbundle_catalog(const Windows& w) {
  auto sb = std::make_shared<SelfBundle>(build_selfbundle(w.dx));
  Catalog cat;
  cat.windows = {{"x_degree", w.dx}};
  auto& out = cat.checks;
  std::vector<CIdx> cs;
  for (const auto& m : sb->window) cs.push_back(m);
  out.push_back({"coalgebra.hopf", "Δx = x⊗x, ε(x) = 1, S(x) = x⁻¹", {}, [sb] { return check_hopf(*sb->hopf, sb->window); }});
  out.push_back({"coalgebra.axioms", "C = H with its coproduct", {}, [sb, cs] { return check_coalgebra(*sb->C, cs); }});
  out.push_back({"entwining.axioms", "ψ(c⊗u) = u(1)⊗cu(2)", {"coalgebra.axioms"},
                 [sb, cs] { return check_entwining(*sb->psi, cs, sb->window); }});
  out.push_back({"bundle.coinvariants", "M = k and right coaction given by the coproduct", {"entwining.axioms"}, [sb] {
                   return span_equals(sb->bundle->M().basis, {Element(Mono{0})}, *sb->H);
                 }});
  out.push_back({"bundle.tau", "χ_M(τ(c)) = 1⊗c", {"entwining.axioms"}, [sb] { return sb->bundle->check_tau(); }});
  out.push_back({"connection.canonical", "ω(c) = S(c(1))dc(2): Conditions 1 and 2, Ad_R-covariance",
                 {"entwining.axioms"}, [sb, cs] {
                   auto section = [](const CIdx& c) -> std::optional<Element> { return Element(Mono{c[0]}); };
                   const ConvMap omega = canonical_omega(sb->hopf, section);
                   const auto ov = check_omega(*sb->bundle, omega, cs);
                   Verdict v = ov.condition1;
                   v.merge(ov.condition2);
                   v.merge(check_ad_covariance(*sb->hopf, *sb->psi, omega, sb->window));
                   return v;
                 }});
  out.push_back({"dual.right_multiplication", "κ = ε gives the action by right multiplication", {"entwining.axioms"},
                 [sb, cs] {
                   const Character eps{{{0, 1}, Scalar(1)}, {{0, -1}, Scalar(1)}};
                   Verdict v;
                   for (const auto& c : cs)
                     for (const auto& u : sb->window)
                       v.expect<Tensor>(right_action(*sb->psi, eps, Tensor("C", {c}), u), Tensor("C", {{c[0] + u[0]}}),
                                        [&] { return "x^" + std::to_string(c[0]) + " ◁ x^" + std::to_string(u[0]); },
                                        [&](const Tensor& t) { return sb->psi->str(t); });
                   const auto d = dual_side(*sb->psi, eps, cs, sb->window);
                   v.merge(d.action);
                   v.merge(d.delta_compat);
                   return v;
                 }});
  return cat;
}

// ---------------------------------------------------------------------------

Windows resolve(const SuiteConfig& cfg) {
  auto pick = [](int given, int dflt, int lo, int hi, const char* name) {
    const int v = given < 0 ? dflt : given;
    if (v < lo || v > hi)
      throw ConfigInvalid(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  };
  if (cfg.instance == "cylinder")
    return {pick(cfg.x_degree, 2, 2, 4, "--x-degree"), pick(cfg.max_degree, 4, 2, 6, "--max-degree"),
            pick(cfg.c_index, 4, 2, 8, "--c-index")};
  if (cfg.instance == "glq2")
    return {0, pick(cfg.max_degree, 2, 1, 3, "--max-degree"), pick(cfg.c_index, 2, 1, 3, "--c-index")};
  return {pick(cfg.x_degree, 3, 2, 6, "--x-degree"), 0, 0};
}

Catalog build_catalog(const SuiteConfig& cfg, const Windows& w) {
  if (cfg.instance == "cylinder") return cylinder_catalog(w, cfg.mutate);
  if (cfg.instance == "glq2") return glq2_catalog(w);
  return selfbundle_catalog(w);
}

std::string suite_of(const std::string& id) { return id.substr(0, id.find('.')); }

std::string first_counterexample(const Verdict& v) {
  if (v.failures.empty()) return "check failed";
  const auto& f = v.failures.front();
  if (f.rhs.empty()) return f.at + ": " + f.lhs;
  return f.at + ": " + f.lhs + " ≠ " + f.rhs;
}

std::vector<mpq_class> q_samples(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(2, 97), den(1, 13);
  std::vector<mpq_class> r;
  while (static_cast<int>(r.size()) < k) {
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    if (v != 1 && std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
  }
  return r;
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> n{"cylinder", "glq2", "selfbundle"};
  return n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"coalgebra", "entwining", "bundle", "gauge",
                                          "connection", "calculus", "braided", "dual"};
  return n;
}

const std::vector<std::string>& mutation_names() {
  static const std::vector<std::string> n{"none",        "drop-q-power",        "wrong-base", "broken-phi",
                                          "non-m-gamma", "non-classified-beta", "identity-pi"};
  return n;
}

bool Report::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == CheckStatus::fail; });
}

const CheckRecord* Report::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["instance"] = instance;
  j["windows"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : windows) j["windows"][k] = v;
  j["conventions"] = conventions;
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json r;
    r["id"] = c.id;
    r["anchor"] = c.anchor;
    r["status"] = to_string(c.status);
    r["counterexample"] = c.counterexample ? nlohmann::ordered_json(*c.counterexample) : nlohmann::ordered_json();
    r["millis"] = c.millis;
    r["checked"] = c.checked;
    r["notes"] = c.notes;
    j["checks"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string Report::text() const {
  std::ostringstream o;
  o << "instance " << instance << "\nwindows";
  for (const auto& [k, v] : windows) o << " " << k << "=" << v;
  o << "\nseed " << seed << "\n";
  for (const auto& c : conventions) o << "convention " << c << "\n";
  std::size_t fails = 0, skips = 0;
  for (const auto& c : checks) {
    std::string tag = to_string(c.status);
    std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char ch) { return std::toupper(ch); });
    o << tag << " " << c.id << " (" << c.checked << " checked, " << c.millis << " ms)\n";
    if (c.counterexample) o << "  counterexample: " << *c.counterexample << "\n";
    for (const auto& n : c.notes) o << "  note: " << n << "\n";
    fails += c.status == CheckStatus::fail;
    skips += c.status == CheckStatus::skipped;
  }
  o << checks.size() << " checks, " << fails << " failed, " << skips << " skipped\n";
  return o.str();
}

Report run_suite(const SuiteConfig& cfg) {
  const auto& inst = instance_names();
  if (std::find(inst.begin(), inst.end(), cfg.instance) == inst.end())
    throw ConfigInvalid("unknown instance " + cfg.instance);
  const auto& suites = suite_names();
  if (cfg.suite != "all" && std::find(suites.begin(), suites.end(), cfg.suite) == suites.end())
    throw ConfigInvalid("unknown suite " + cfg.suite);
  const auto& muts = mutation_names();
  if (std::find(muts.begin(), muts.end(), cfg.mutate) == muts.end()) throw ConfigInvalid("unknown mutation " + cfg.mutate);
  if (cfg.mutate != "none" && cfg.instance != "cylinder") throw ConfigInvalid("mutations apply to the cylinder only");
  if (cfg.numeric_q < 0) throw ConfigInvalid("--numeric-q must be non-negative");
  const Windows w = resolve(cfg);

  auto selected = [&](const CheckDef& d) { return cfg.suite == "all" || suite_of(d.id) == cfg.suite; };

  // Numeric pre-pass: the whole instance is rebuilt with q specialized to a
  // rational sample on this thread, and the selected checks run over ℚ.
  std::map<std::string, int> numeric_failures;
  const auto samples = q_samples(cfg.numeric_q, cfg.seed);
  for (const auto& v : samples) {
    QSpecialization spec(v);
    const Catalog cat = build_catalog(cfg, w);
    for (const auto& d : cat.checks)
      if (selected(d) && !guarded(d.run).ok) ++numeric_failures[d.id];
  }

  const Catalog cat = build_catalog(cfg, w);
  Report rep;
  rep.instance = cfg.instance;
  rep.windows = cat.windows;
  rep.conventions = cat.conventions;
  rep.seed = cfg.seed;
  if (cfg.mutate != "none") rep.conventions.push_back("mutation: " + cfg.mutate);

  std::vector<const CheckDef*> todo;
  std::set<std::string> present;
  for (const auto& d : cat.checks)
    if (selected(d)) {
      todo.push_back(&d);
      present.insert(d.id);
    }
  std::map<std::string, CheckRecord> done;
  const unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());

  // Dependency waves: a check runs once all selected dependencies are
  // resolved; it is skipped when one of them did not pass.
  while (!todo.empty()) {
    std::vector<const CheckDef*> ready, later;
    for (const auto* d : todo) {
      bool waiting = false;
      for (const auto& dep : d->deps)
        if (present.count(dep) && !done.count(dep)) waiting = true;
      (waiting ? later : ready).push_back(d);
    }
    if (ready.empty()) throw ConfigInvalid("dependency cycle among checks");
    std::vector<std::future<CheckRecord>> futs;
    std::size_t next = 0;
    auto launch = [&](const CheckDef* d) {
      return std::async(std::launch::async, [d, &done, &present, &numeric_failures, &cfg, nsamples = samples.size()] {
        CheckRecord r;
        r.id = d->id;
        r.anchor = d->anchor;
        for (const auto& dep : d->deps)
          if (present.count(dep) && done.at(dep).status != CheckStatus::pass) {
            r.status = CheckStatus::skipped;
            r.notes.push_back("upstream " + dep + " did not pass");
            return r;
          }
        const auto t0 = std::chrono::steady_clock::now();
        const Verdict v = guarded(d->run);
        const auto t1 = std::chrono::steady_clock::now();
        r.millis = cfg.timings ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() : 0;
        r.checked = v.checked;
        r.status = v.ok ? CheckStatus::pass : CheckStatus::fail;
        if (!v.ok) r.counterexample = first_counterexample(v);
        r.notes = v.notes;
        if (nsamples) {
          const int nf = numeric_failures.count(d->id) ? numeric_failures.at(d->id) : 0;
          std::string note = "numeric pre-pass: " + std::to_string(nf) + "/" + std::to_string(nsamples) + " samples failed";
          if (nf) note += v.ok ? ", refuted symbolically" : ", confirmed symbolically";
          r.notes.push_back(note);
        }
        return r;
      });
    };
    std::vector<CheckRecord> results;
    while (next < ready.size() || !futs.empty()) {
      while (next < ready.size() && futs.size() < threads) futs.push_back(launch(ready[next++]));
      results.push_back(futs.front().get());
      futs.erase(futs.begin());
    }
    for (auto& r : results) done.emplace(r.id, std::move(r));
    todo = later;
  }
  for (auto& [id, r] : done) rep.checks.push_back(std::move(r));
  return rep;
}

}  // namespace psb
