#include "psibundle/gauge.hpp"

namespace psb {

PsiC::PsiC(CoalgebraPtr C, Fn f) : C_(std::move(C)), f_(std::move(f)) {}

Tensor PsiC::operator()(const CIdx& b, const CIdx& c) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find({b, c});
    if (it != cache_.end()) return it->second;
  }
  Tensor t = f_(b, c);
  t.shape = "CC";
  std::lock_guard lock(mu_);
  cache_.emplace(std::make_pair(b, c), t);
  return t;
}

Tensor PsiC::apply(const Tensor& t, std::size_t pos) const {
  if (t.shape.compare(pos, 2, "CC") != 0) throw ConfigInvalid("ψ^C applied to slots of shape " + t.shape);
  return map_slots(t, pos, 2, "CC", [&](const TKey& k) { return (*this)(k[0], k[1]); });
}

namespace {

Formatter c_formatter(const Coalgebra& C) {
  return {[](const Key&) { return std::string("?"); }, [&C](const Key& k) { return C.format(k); }};
}

// Inserts a C index at slot pos of every term.
Tensor insert_at(const Tensor& t, std::size_t pos, const CIdx& c) {
  Tensor r(t.shape.substr(0, pos) + "C" + t.shape.substr(pos));
  for (const auto& [k, a] : t.terms) {
    TKey nk = k;
    nk.insert(nk.begin() + static_cast<std::ptrdiff_t>(pos), c);
    r.add(nk, a);
  }
  return r;
}

}  // namespace

Verdict check_psiC(const PsiC& m, const std::vector<CIdx>& cs) {
  const auto& C = *m.C();
  Formatter f = c_formatter(C);
  auto show = [&](const Tensor& t) { return str(t, f); };
  Verdict v;
  for (const auto& b : cs)
    for (const auto& c : cs) {
      auto at = [&] { return "(" + C.format(b) + ", " + C.format(c) + ")"; };
      Tensor lhs = C.delta_at(m(b, c), 1);
      Tensor rhs = m.apply(m.apply(C.delta_at(Tensor("CC", {b, c}), 0), 1), 0);
      v.expect<Tensor>(lhs, rhs, [&] { return "(id⊗Δ)ψ^C at " + at(); }, show);
      Tensor cl = C.eps_at(m(b, c), 1);
      cl.shape = "C";
      v.expect<Tensor>(cl, Tensor("C", {c}, C.eps(b)), [&] { return "(id⊗ε)ψ^C at " + at(); }, show);
    }
  for (const auto& c : cs)
    v.expect<Tensor>(m(C.e(), c), C.delta(c), [&] { return "ψ^C(e⊗" + C.format(c) + ")"; }, show);
  return v;
}

Verdict check_trivialization(const TrivialBundle& t, const std::vector<CIdx>& cs) {
  const auto& P = t.P();
  const auto& C = t.C();
  const auto& psi = t.psi();
  auto show = [&](const Tensor& x) { return psi.str(x); };
  Verdict v;
  const Mono one = P.one();
  const CIdx e = C.e();
  v.expect<Tensor>(t.phi(e), Tensor("P", {one}), [&] { return "Φ(" + C.format(e) + ")"; }, show);
  auto CP = t.psi().C();
  auto PP = t.psi().P();
  ConvMap l = convolve(t.phi, t.phi_inv, CP, PP), r = convolve(t.phi_inv, t.phi, CP, PP);
  for (const auto& c : cs) {
    Tensor unit("P", {one}, C.eps(c));
    v.expect<Tensor>(l(c), unit, [&] { return "Φ*Φ⁻¹ at " + C.format(c); }, show);
    v.expect<Tensor>(r(c), unit, [&] { return "Φ⁻¹*Φ at " + C.format(c); }, show);
    v.expect<Tensor>(coaction(psi, t.phi(c)), t.phi.apply_at(C.delta(c), 0),
                     [&] { return "Δ_R Φ(" + C.format(c) + ")"; }, show);
    Tensor inv = psi.apply(t.phi_inv.apply_at(C.delta(c), 1), 0);
    Tensor inv_rhs = insert_at(t.phi_inv(c), 1, e);
    v.expect<Tensor>(inv, inv_rhs, [&] { return "ψ(c(1)⊗Φ⁻¹(c(2))) at " + C.format(c); }, show);
    for (const auto& b : cs) {
      Tensor lhs = psi.apply(outer(Tensor("C", {b}), t.phi(c)), 0);
      Tensor rhs = t.phi.apply_at((*t.psiC)(b, c), 0);
      v.expect<Tensor>(lhs, rhs, [&] { return "ψ(" + C.format(b) + "⊗Φ(" + C.format(c) + "))"; }, show);
    }
  }
  return v;
}

Tensor theta(const TrivialBundle& t, const Tensor& xc) {
  return multiply_slots(t.phi.apply_at(xc, 1), 0, t.P());
}

Tensor theta_inv(const TrivialBundle& t, const Tensor& u) {
  Tensor r = t.C().delta_at(coaction(t.psi(), u), 1);
  return multiply_slots(t.phi_inv.apply_at(r, 1), 0, t.P());
}

Verdict check_theta(const TrivialBundle& t, const std::vector<Mono>& us, const std::vector<CIdx>& cs) {
  const auto& P = t.P();
  const auto& C = t.C();
  const auto& psi = t.psi();
  auto show = [&](const Tensor& x) { return psi.str(x); };
  Verdict v;
  const CIdx e = C.e();
  auto coact0 = [&](const TKey& k) { return coaction(psi, Tensor("P", {k[0]})); };
  for (const auto& u : us) {
    Tensor tu("P", {u});
    Tensor inv = theta_inv(t, tu);
    v.expect<Tensor>(theta(t, inv), tu, [&] { return "ΘΘ⁻¹ at " + P.str(u); }, show);
    v.expect<Tensor>(map_slots(inv, 0, 1, "PC", coact0), insert_at(inv, 1, e),
                     [&] { return "Θ⁻¹(" + P.str(u) + ") ∈ M⊗C"; }, show);
    Tensor lhs = map_slots(coaction(psi, tu), 0, 1, "PC",
                           [&](const TKey& k) { return theta_inv(t, Tensor("P", {k[0]})); });
    v.expect<Tensor>(lhs, C.delta_at(inv, 1), [&] { return "Θ⁻¹ comodule map at " + P.str(u); }, show);
    for (const auto& x : t.bundle->M().basis) {
      Tensor xu = from_element(P.multiply(x, Element(u)));
      Tensor rhs = map_slots(inv, 0, 1, "P", [&](const TKey& k) { return from_element(P.multiply(x, Element(k[0]))); });
      rhs.shape = "PC";
      v.expect<Tensor>(theta_inv(t, xu), rhs, [&] { return "Θ⁻¹ left M-linear at " + P.str(x) + "·" + P.str(u); },
                       show);
    }
  }
  for (const auto& x : t.bundle->M().basis)
    for (const auto& c : cs) {
      Tensor xc = outer(from_element(x), Tensor("C", {c}));
      v.expect<Tensor>(theta_inv(t, theta(t, xc)), xc, [&] { return "Θ⁻¹Θ at " + P.str(x) + "⊗" + C.format(c); },
                       show);
    }
  return v;
}

Verdict check_gauge(const TrivialBundle& t, const ConvMap& gamma, const std::vector<CIdx>& cs) {
  const auto& C = t.C();
  const auto& psi = t.psi();
  const CIdx e = C.e();
  if (!(gamma(e) == Tensor("P", {t.P().one()}))) throw NotUnitalAtE("γ(" + C.format(e) + ") ≠ 1");
  for (const auto& c : cs) {
    Tensor g = gamma(c);
    if (!(coaction(psi, g) == insert_at(g, 1, e))) throw ValuesNotInM("γ(" + C.format(c) + ") = " + psi.str(g));
  }
  auto show = [&](const Tensor& x) { return psi.str(x); };
  Verdict v;
  for (const auto& b : cs)
    for (const auto& c : cs) {
      Tensor s = gamma.apply_at(C.delta_at(Tensor("CC", {b, c}), 1), 1);
      Tensor lhs = t.psiC->apply(psi.apply(s, 0), 1);
      Tensor rhs = gamma.apply_at(C.delta_at((*t.psiC)(b, c), 0), 0);
      v.expect<Tensor>(lhs, rhs, [&] { return "gauge condition at (" + C.format(b) + ", " + C.format(c) + ")"; },
                       show);
    }
  return v;
}

ConvMap gauge_act(const ConvMap& gamma, const ConvMap& phi, const TrivialBundle& t) {
  return convolve(gamma, phi, t.psi().C(), t.psi().P());
}

GaugeSeq seq_mul(const GaugeSeq& a, const GaugeSeq& b) {
  std::size_t n = std::min(a.size(), b.size());
  GaugeSeq r(n, Scalar());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= i; ++k)
      r[i] += q_binom(static_cast<int>(i), static_cast<int>(k)) * a[k] * b[i - k];
  return r;
}

GaugeSeq seq_inv(const GaugeSeq& a) {
  if (a.empty() || !a[0].is_one()) throw NotUnitalAtE("Γ₀ ≠ 1");
  GaugeSeq r(a.size(), Scalar());
  r[0] = Scalar(1);
  for (std::size_t n = 1; n < a.size(); ++n)
    for (std::size_t k = 1; k <= n; ++k)
      r[n] -= q_binom(static_cast<int>(n), static_cast<int>(k)) * a[k] * r[n - k];
  return r;
}

GaugeSeq seq_unit(std::size_t length) {
  GaugeSeq r(length, Scalar());
  if (length) r[0] = Scalar(1);
  return r;
}

ConvMap to_gamma(const GaugeSeq& g, const PresentationPtr& P, int xgen) {
  return ConvMap("P", [g, P, xgen](const CIdx& c) {
    if (c.size() != 1 || c[0] < 0) throw ConfigInvalid("to_gamma needs single-index C");
    auto n = static_cast<std::size_t>(c[0]);
    if (n >= g.size()) throw WindowExceeded("gauge sequence has no entry " + std::to_string(n));
    return Tensor("P", {P->gen_mono(xgen, c[0])}, g[n]);
  });
}

}  // namespace psb
