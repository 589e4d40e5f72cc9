#include "psibundle/calculus.hpp"

#include <algorithm>

namespace psb {

namespace {

Tensor insert_at(const Tensor& t, std::size_t pos, const Key& k, char kind) {
  Tensor r(t.shape.substr(0, pos) + kind + t.shape.substr(pos));
  for (const auto& [key, a] : t.terms) {
    TKey nk = key;
    nk.insert(nk.begin() + static_cast<std::ptrdiff_t>(pos), k);
    r.add(nk, a);
  }
  return r;
}

// Splits a tensor by the key in its last slot.
std::map<Key, Tensor> split_last(const Tensor& t) {
  std::map<Key, Tensor> out;
  const std::string head = t.shape.substr(0, t.shape.size() - 1);
  for (const auto& [k, a] : t.terms) {
    auto [it, _] = out.try_emplace(k.back(), Tensor(head));
    it->second.add(TKey(k.begin(), k.end() - 1), a);
  }
  return out;
}

Tensor join_last(const Tensor& t, const Key& k, char kind) { return insert_at(t, t.shape.size(), k, kind); }

void require(Verdict& v, bool ok, const std::function<std::string()>& at, const std::string& lhs,
             const std::string& rhs) {
  ++v.checked;
  if (!ok) v.fail(at(), lhs, rhs);
}

Mono letter_mono(const Presentation& P, const Letter& l) { return P.gen_mono(l.gen, l.sign); }

std::vector<int> add_deg(std::vector<int> a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<int> tensor_weight(const BundleData& b, const Tensor& t) {
  return b.weight(t.terms.begin()->first, t.shape);
}

std::string first_failure(const Verdict& v) {
  if (v.failures.empty()) return "";
  const auto& f = v.failures.front();
  return f.at + ": " + f.lhs + " ≠ " + f.rhs;
}

}  // namespace

// ---------------------------------------------------------------------------
// Universal forms

Tensor d(const Tensor& t, const Presentation& P) {
  const Mono one = P.one();
  Tensor r(t.shape + "P");
  for (std::size_t i = 0; i <= t.shape.size(); ++i) {
    Tensor s = insert_at(t, i, one, 'P');
    r += (i % 2 ? Scalar(-1) : Scalar(1)) * s;
  }
  return r;
}

Tensor d(const Mono& u, const Presentation& P) { return d(Tensor("P", {u}), P); }

Tensor u_dv(const Mono& u, const Mono& v, const Presentation& P) { return lmul(Element(u), d(v, P), P); }

bool is_form(const Tensor& t, const Presentation& P) {
  for (std::size_t i = 0; i + 1 < t.shape.size(); ++i)
    if (!multiply_slots(t, i, P).is_zero()) return false;
  return true;
}

Tensor lmul(const Element& u, const Tensor& t, const Presentation& P) { return glue(from_element(u), t, P); }

Tensor rmul(const Tensor& t, const Element& u, const Presentation& P) { return glue(t, from_element(u), P); }

Verdict check_leibniz(const Presentation& P, const std::vector<Mono>& us) {
  Formatter f{[&P](const Key& k) { return P.str(k); }, [](const Key&) { return std::string("?"); }};
  auto show = [&](const Tensor& t) { return str(t, f); };
  Verdict v;
  for (const auto& u : us) {
    Tensor du = d(u, P);
    require(v, is_form(du, P), [&] { return "m∘d(" + P.str(u) + ")"; }, show(multiply_slots(du, 0, P)), "0");
    for (const auto& w : us) {
      Tensor lhs = d(from_element(P.multiply(u, w)), P);
      Tensor rhs = rmul(du, Element(w), P) + lmul(Element(u), d(w, P), P);
      v.expect<Tensor>(lhs, rhs, [&] { return "Leibniz at (" + P.str(u) + ", " + P.str(w) + ")"; }, show);
    }
  }
  return v;
}

Verdict check_d_covariance(const Entwining& psi, const std::vector<CIdx>& cs, const std::vector<Mono>& us, int n) {
  const auto& P = *psi.P();
  const auto& C = *psi.C();
  auto show = [&](const Tensor& t) { return psi.str(t); };
  Verdict v;
  if (n == 2) {
    for (const auto& c : cs)
      for (const auto& u : us) {
        Tensor lhs = psi.pass(outer(Tensor("C", {c}), d(u, P)), 0, 2);
        Tensor rhs = map_slots(psi.psi(c, u), 0, 1, "PP", [&](const TKey& k) { return d(k[0], P); });
        v.expect<Tensor>(lhs, rhs, [&] { return "←ψ²(" + C.format(c) + "⊗d" + P.str(u) + ")"; }, show);
      }
  } else if (n == 3) {
    for (const auto& c : cs)
      for (const auto& u : us)
        for (const auto& w : us) {
          Tensor form = u_dv(u, w, P);
          Tensor lhs = psi.pass(outer(Tensor("C", {c}), d(form, P)), 0, 3);
          Tensor rhs = map_slots(psi.pass(outer(Tensor("C", {c}), form), 0, 2), 0, 2, "PPP",
                                 [&](const TKey& k) { return d(Tensor("PP", k), P); });
          v.expect<Tensor>(lhs, rhs,
                           [&] { return "←ψ³(" + C.format(c) + "⊗d(" + P.str(u) + "·d" + P.str(w) + "))"; }, show);
        }
  } else {
    throw ConfigInvalid("d-covariance is checked for n = 2 and n = 3");
  }
  return v;
}

void check_m_hypothesis(const BundleData& b) {
  const auto& psi = *b.psi();
  const auto& P = *psi.P();
  const CIdx e = psi.C()->e();
  for (const auto& x : b.M().basis)
    for (const auto& c : b.cwindow()) {
      Tensor img("PC");
      for (const auto& [m, a] : x.terms()) img += a * psi.psi(c, m);
      for (const auto& [ci, part] : split_last(img))
        if (!(coaction(psi, part) == insert_at(part, 1, e, 'C')))
          throw HypothesisFails("ψ(" + psi.C()->format(c) + "⊗" + P.str(x) + ") has a P part outside M");
    }
}

Horizontals::Horizontals(BundlePtr b) : b_(std::move(b)) {
  for (const auto& u : b_->window())
    for (const auto& v : b_->window()) pairs_.insert({u, v});
}

const Horizontals::Sp& Horizontals::span(const std::vector<int>& weight) const {
  {
    std::lock_guard lock(mu_);
    auto it = spans_.find(weight);
    if (it != spans_.end()) return *it->second;
  }
  const auto& P = *b_->psi()->P();
  auto sp = std::make_shared<Sp>();
  for (const auto& x : b_->M().basis) {
    auto dx = P.degree(x.terms().begin()->first);
    for (const auto& u : b_->window())
      for (const auto& v : b_->window()) {
        if (add_deg(b_->weight({u, v}, "PP"), dx) != weight) continue;
        Tensor r("PP");
        for (const Element xv = P.multiply(x, Element(v)); const auto& [m, c] : xv.terms()) r.add({u, m}, c);
        for (const Element ux = P.multiply(Element(u), x); const auto& [m, c] : ux.terms()) r.add({m, v}, -c);
        bool inside = std::all_of(r.terms.begin(), r.terms.end(), [&](const auto& t) { return pairs_.count(t.first); });
        if (inside && !r.is_zero()) sp->add(r.terms);
      }
  }
  std::lock_guard lock(mu_);
  return *spans_.emplace(weight, sp).first->second;
}

std::vector<Tensor> Horizontals::basis(const std::vector<int>& weight) const {
  std::vector<Tensor> out;
  for (const auto& [p, row] : span(weight).rows()) {
    Tensor t("PP");
    t.terms = row;
    out.push_back(std::move(t));
  }
  return out;
}

bool Horizontals::contains(const Tensor& form) const {
  std::map<std::vector<int>, std::map<TKey, Scalar>> parts;
  for (const auto& [k, a] : form.terms) {
    if (!pairs_.count(k)) throw WindowExceeded("form term " + b_->psi()->str(Tensor("PP", k)) + " outside window");
    parts[b_->weight(k, "PP")][k] = a;
  }
  for (const auto& [w, part] : parts)
    if (!span(w).contains(part)) return false;
  return true;
}

Verdict Horizontals::check_covariance(const std::vector<std::vector<int>>& weights,
                                      const std::vector<CIdx>& cs) const {
  const auto& psi = *b_->psi();
  Verdict v;
  for (const auto& w : weights)
    for (const auto& h : basis(w))
      for (const auto& c : cs) {
        Tensor r = psi.pass(outer(Tensor("C", {c}), h), 0, 2);
        for (const auto& [ci, part] : split_last(r))
          require(v, contains(part),
                  [&] { return "←ψ²(" + psi.C()->format(c) + "⊗" + psi.str(h) + ") at " + psi.C()->format(ci); },
                  psi.str(part), "a horizontal form");
      }
  return v;
}

// ---------------------------------------------------------------------------
// Connections

ConvMap omega_tilde(const ConvMap& omega, const CoalgebraPtr& C) {
  return ConvMap("PP", [omega, C](const CIdx& c) {
    Scalar ec = C->eps(c);
    Tensor r = omega(c);
    if (!ec.is_zero()) r -= ec * omega(C->e());
    r.shape = "PP";
    return r;
  });
}

FormMap connection_from_omega(const BundlePtr& b, const ConvMap& omega) {
  ConvMap wt = omega_tilde(omega, b->psi()->C());
  return [b, wt](const Tensor& f) {
    Tensor r = multiply_slots(wt.apply_at(b->chi(f), 1), 0, *b->psi()->P());
    r.shape = "PP";
    return r;
  };
}

Verdict check_connection(const FormMap& pi, const Horizontals& h, const std::vector<Tensor>& forms,
                         const std::vector<Mono>& us, const std::vector<CIdx>& cs) {
  const auto& b = *h.bundle();
  const auto& psi = *b.psi();
  const auto& P = *psi.P();
  auto show = [&](const Tensor& t) { return psi.str(t); };
  Verdict v;
  std::set<std::vector<int>> weights;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    weights.insert(tensor_weight(b, f));
    Tensor pf = pi(f);
    v.expect<Tensor>(pi(pf), pf, [&] { return "Π² at " + psi.str(f); }, show);
    for (const auto& u : us)
      v.expect<Tensor>(pi(lmul(Element(u), f, P)), lmul(Element(u), pf, P),
                       [&] { return "Π(" + P.str(u) + "·" + psi.str(f) + ")"; }, show);
    Tensor rest = f - pf;
    require(v, h.contains(rest), [&] { return "f − Π(f) horizontal at " + psi.str(f); }, psi.str(rest),
            "a horizontal form");
    for (const auto& c : cs) {
      Tensor lhs = psi.pass(outer(Tensor("C", {c}), pf), 0, 2);
      Tensor rhs = map_slots(psi.pass(outer(Tensor("C", {c}), f), 0, 2), 0, 2, "PP",
                             [&](const TKey& k) { return pi(Tensor("PP", k)); });
      v.expect<Tensor>(lhs, rhs, [&] { return "Π equivariance at " + psi.C()->format(c) + "⊗" + psi.str(f); }, show);
    }
  }
  for (const auto& w : weights)
    for (const auto& hb : h.basis(w))
      v.expect<Tensor>(pi(hb), Tensor("PP"), [&] { return "Π on horizontal " + psi.str(hb); }, show);
  return v;
}

Tensor condition2_rhs(const BundleData& b, const ConvMap& omega, const CIdx& bi, const CIdx& c, bool permuted) {
  const auto& psi = *b.psi();
  const auto& P = *psi.P();
  ConvMap wt = omega_tilde(omega, psi.C());
  Tensor s = psi.pass(outer(Tensor("C", {bi}), b.tau(c, permuted)), 0, 2);
  s = map_slots(s, 1, 1, "PC", [&](const TKey& k) { return coaction(psi, Tensor("P", {k[0]})); });
  s = wt.apply_at(s, 2);
  s = multiply_slots(multiply_slots(s, 0, P), 0, P);
  return s;
}

OmegaVerdict check_omega(const BundleData& b, const ConvMap& omega, const std::vector<CIdx>& cs) {
  const auto& psi = *b.psi();
  const auto& C = *psi.C();
  const Mono one = psi.P()->one();
  ConvMap wt = omega_tilde(omega, psi.C());
  auto show = [&](const Tensor& t) { return psi.str(t); };
  OmegaVerdict out;
  for (const auto& c : cs) {
    Tensor rhs("PC", {one, c});
    rhs -= C.eps(c) * Tensor("PC", {one, C.e()});
    out.condition1.expect<Tensor>(b.chi(wt(c)), rhs, [&] { return "χ(ω(" + C.format(c) + "))"; }, show);
  }
  for (const auto& bi : cs)
    for (const auto& c : cs) {
      Tensor lhs = psi.pass(outer(Tensor("C", {bi}), wt(c)), 0, 2);
      Tensor r0 = condition2_rhs(b, omega, bi, c, false);
      Tensor r1 = condition2_rhs(b, omega, bi, c, true);
      if (!(r0 == r1))
        throw RepresentativeDependent("Condition 2 at (" + C.format(bi) + ", " + C.format(c) + "): " + psi.str(r0) +
                                      " vs " + psi.str(r1));
      out.condition2.expect<Tensor>(lhs, r0, [&] { return "Condition 2 at (" + C.format(bi) + ", " + C.format(c) + ")"; },
                                    show);
    }
  return out;
}

Tensor phi_map(const BundleData& b, const CIdx& bi, const Mono& u, const CIdx& c) {
  const auto& psi = *b.psi();
  const auto& P = *psi.P();
  Tensor s = outer(Tensor("CP", {bi, u}), b.tau(c));
  s = psi.pass(s, 0, 3);
  s = map_slots(s, 2, 1, "PC", [&](const TKey& k) { return coaction(psi, Tensor("P", {k[0]})); });
  return multiply_slots(multiply_slots(s, 0, P), 0, P);
}

Verdict check_phi_intertwining(const BundleData& b, const std::vector<CIdx>& cs, const std::vector<Tensor>& forms) {
  const auto& psi = *b.psi();
  auto show = [&](const Tensor& t) { return psi.str(t); };
  Verdict v;
  for (const auto& bi : cs)
    for (const auto& f : forms) {
      Tensor lhs("PCC");
      for (const auto& [k, a] : b.chi(f).terms) lhs += a * phi_map(b, bi, k[0], k[1]);
      Tensor rhs = map_slots(psi.pass(outer(Tensor("C", {bi}), f), 0, 2), 0, 2, "PC",
                             [&](const TKey& k) { return b.chi(Tensor("PP", k)); });
      v.expect<Tensor>(lhs, rhs, [&] { return "φ∘χ at " + psi.C()->format(bi) + "⊗" + psi.str(f); }, show);
    }
  return v;
}

// ---------------------------------------------------------------------------
// Trivial bundles

Verdict check_beta(const TrivialBundle& t, const ConvMap& beta, const std::vector<CIdx>& cs) {
  const auto& psi = t.psi();
  const auto& P = t.P();
  const auto& C = t.C();
  const CIdx e = C.e();
  auto show = [&](const Tensor& x) { return psi.str(x); };
  Verdict v;
  v.expect<Tensor>(beta(e), Tensor("PP"), [&] { return "β(" + C.format(e) + ")"; }, show);
  auto coact = [&](const TKey& k) { return coaction(psi, Tensor("P", {k[0]})); };
  for (const auto& c : cs) {
    Tensor bc = beta(c);
    require(v, is_form(bc, P), [&] { return "β(" + C.format(c) + ") ∈ Ω¹P"; }, show(multiply_slots(bc, 0, P)), "0");
    bool in_m = map_slots(bc, 0, 1, "PC", coact) == insert_at(bc, 1, e, 'C') &&
                map_slots(bc, 1, 1, "PC", coact) == insert_at(bc, 2, e, 'C');
    require(v, in_m, [&] { return "β(" + C.format(c) + ") ∈ M⊗M"; }, show(bc), "a form on M");
  }
  for (const auto& b : cs)
    for (const auto& c : cs) {
      Tensor s = beta.apply_at(C.delta_at(Tensor("CC", {b, c}), 1), 1);
      Tensor lhs = t.psiC->apply(psi.apply(psi.apply(s, 0), 1), 2);
      Tensor rhs = beta.apply_at(C.delta_at((*t.psiC)(b, c), 0), 0);
      v.expect<Tensor>(lhs, rhs, [&] { return "β condition at (" + C.format(b) + ", " + C.format(c) + ")"; }, show);
    }
  return v;
}

ConvMap zero_form_map(const CoalgebraPtr& C) {
  (void)C;
  return ConvMap("PP", [](const CIdx&) { return Tensor("PP"); });
}

ConvMap add_maps(const ConvMap& a, const ConvMap& b) {
  return ConvMap(a.shape(), [a, b](const CIdx& c) {
    Tensor r = a(c) + b(c);
    r.shape = a.shape();
    return r;
  });
}

namespace {

ConvMap d_of(const ConvMap& f, const PresentationPtr& P) {
  return ConvMap("PP", [f, P](const CIdx& c) { return d(f(c), *P); });
}

}  // namespace

ConvMap trivial_connection(const TrivialBundle& t, const ConvMap& beta, const std::vector<CIdx>& cs) {
  Verdict v = check_beta(t, beta, cs);
  if (!v.ok) throw BetaConditionFails(first_failure(v));
  const auto& C = t.psi().C();
  const auto& P = t.psi().P();
  ConvMap a = convolve(t.phi_inv, d_of(t.phi, P), C, P);
  ConvMap b = convolve(convolve(t.phi_inv, beta, C, P), t.phi, C, P);
  return add_maps(a, b);
}

ConvMap beta_gauge(const TrivialBundle& t, const ConvMap& gamma, const ConvMap& beta, int bound) {
  const auto& C = t.psi().C();
  const auto& P = t.psi().P();
  ConvMap gi = convolution_inverse(gamma, C, P, bound);
  ConvMap a = convolve(gi, d_of(gamma, P), C, P);
  ConvMap b = convolve(convolve(gi, beta, C, P), gamma, C, P);
  return add_maps(a, b);
}

TrivialBundle gauge_bundle(const TrivialBundle& t, const ConvMap& gamma, int bound) {
  ConvMap phi = gauge_act(gamma, t.phi, t);
  return TrivialBundle{t.bundle, t.psiC, phi, convolution_inverse(phi, t.psi().C(), t.psi().P(), bound)};
}

ConvMap cylinder_beta(const GammaTable& g, const PresentationPtr& P) {
  return ConvMap("PP", [g, P](const CIdx& c) {
    const int n = c[0];
    Tensor r("PP");
    for (const auto& [ni, coef] : g) {
      if (ni.first != n || coef.is_zero()) continue;
      const int i = ni.second;
      r += coef * u_dv(P->gen_mono(0, i), P->gen_mono(0, n - i), *P);
    }
    return r;
  });
}

Tensor cylinder_omega_closed(const GammaTable& g, const Presentation& P, int n) {
  auto xy = [](int a, int b) { return Mono{a, b}; };
  auto sign = [](int k) { return Scalar(k % 2 ? -1 : 1); };
  Tensor r("PP");
  for (int k = 0; k < n; ++k)
    r += sign(k) * q_binom(n, k) * qpow(k * (k - 1) / 2) * u_dv(xy(0, k), xy(0, n - k), P);
  std::set<int> is;
  for (const auto& [ni, coef] : g) is.insert(ni.second);
  for (int i : is)
    for (int m = 0; m <= n; ++m)
      for (int k = 0; k <= m; ++k) {
        auto it = g.find({m - k, i});
        if (m - k == 0 || it == g.end() || it->second.is_zero()) continue;
        Scalar coef = sign(k) * qpow(k * (k - 1) / 2 + k * i) * q_binom(n, m) * q_binom(m, k) * it->second;
        Tensor form = rmul(lmul(Element(xy(i, k)), d(xy(m - k - i, 0), P), P), Element(xy(0, n - m)), P);
        r += coef * form;
      }
  return r;
}

// ---------------------------------------------------------------------------
// Embeddable bundles

Tensor ad_r(const HopfData& h, const Mono& m) {
  const auto& H = *h.H();
  Tensor d2 = map_slots(h.delta(m), 0, 1, "PP", [&](const TKey& k) { return h.delta(k[0]); });
  Tensor r("PP");
  for (const auto& [k, a] : d2.terms) {
    Element s = H.multiply(h.antipode(k[0]), Element(k[2]));
    for (const auto& [mm, c] : s.terms()) r.add({k[1], mm}, a * c);
  }
  return r;
}

ConvMap canonical_omega(const HopfPtr& h, const std::function<std::optional<Element>(const CIdx&)>& section) {
  return ConvMap("PP", [h, section](const CIdx& c) {
    const auto& H = *h->H();
    auto s = section(c);
    if (!s) throw SectionUndefined("no section value");
    Tensor r("PP");
    for (const auto& [m, a] : s->terms())
      for (const auto& [k, x] : h->delta(m).terms) r += (a * x) * lmul(h->antipode(k[0]), d(k[1], H), H);
    return r;
  });
}

CanonicalConnection canonical_connection(const BundlePtr& b, const HopfPtr& h,
                                         const std::function<Tensor(const Mono&)>& pi,
                                         const std::function<std::optional<Element>(const CIdx&)>& section,
                                         const std::vector<Mono>& hs) {
  const auto& psi = *b->psi();
  const auto& C = *psi.C();
  const auto& H = *h->H();
  auto sec = [&](const CIdx& c) {
    auto s = section(c);
    if (!s) throw SectionUndefined("no section value at " + C.format(c));
    return *s;
  };
  auto pi_el = [&](const Element& e) {
    Tensor r("C");
    for (const auto& [m, a] : e.terms()) r += a * pi(m);
    return r;
  };
  auto show = [&](const Tensor& t) { return psi.str(t); };
  CanonicalConnection out;
  for (const auto& c : b->cwindow()) {
    Element i = sec(c);
    require(out.compatibility, pi_el(i) == Tensor("C", {c}), [&] { return "π(i(" + C.format(c) + "))"; },
            psi.str(pi_el(i)), C.format(c));
  }
  out.omega = canonical_omega(h, section);
  ConvMap wt = omega_tilde(out.omega, psi.C());
  for (const auto& c : b->cwindow()) {
    Element i = sec(c);
    Tensor ad("PP");
    for (const auto& [m, a] : i.terms()) ad += a * ad_r(*h, m);
    Tensor lhs = map_slots(ad, 1, 1, "C", [&](const TKey& k) { return pi(k[0]); });
    Tensor pp = map_slots(map_slots(ad, 0, 1, "C", [&](const TKey& k) { return pi(k[0]); }), 1, 1, "C",
                          [&](const TKey& k) { return pi(k[0]); });
    Tensor rhs = map_slots(pp, 0, 1, "P", [&](const TKey& k) { return from_element(sec(k[0])); });
    lhs.shape = rhs.shape = "PC";
    out.compatibility.expect<Tensor>(lhs, rhs, [&] { return "section compatibility at " + C.format(c); }, show);
  }
  for (const auto& m : hs) {
    Tensor lhs = coaction(psi, wt.apply_at(pi(m), 0));
    Tensor ad = ad_r(*h, m);
    Tensor pp = map_slots(map_slots(ad, 0, 1, "C", [&](const TKey& k) { return pi(k[0]); }), 1, 1, "C",
                          [&](const TKey& k) { return pi(k[0]); });
    pp.shape = "CC";
    Tensor rhs = wt.apply_at(pp, 0);
    out.covariance.expect<Tensor>(lhs, rhs, [&] { return "Δ_R²ω(π(" + H.str(m) + "))"; }, show);
  }
  if (!out.covariance.ok) throw SectionIncompatible(first_failure(out.covariance));
  return out;
}

Verdict check_ad_covariance(const HopfData& h, const Entwining& psi, const ConvMap& omega, const std::vector<Mono>& hs) {
  ConvMap wt = omega_tilde(omega, psi.C());
  auto show = [&](const Tensor& t) { return psi.str(t); };
  Verdict v;
  for (const auto& m : hs) {
    Tensor lhs = coaction(psi, wt(m));
    Tensor ad = ad_r(h, m);
    ad.shape = "CC";
    v.expect<Tensor>(lhs, wt.apply_at(ad, 0), [&] { return "Δ_R²ω(" + h.H()->str(m) + ")"; }, show);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Non-universal calculi

GeneralCalculus::GeneralCalculus(std::string name, BundlePtr b, std::vector<Tensor> generators,
                                 std::vector<int> basis, std::vector<CIdx> ker_eps)
    : name_(std::move(name)),
      b_(std::move(b)),
      gens_(std::move(generators)),
      basis_(std::move(basis)),
      ker_eps_(std::move(ker_eps)) {
  const auto& psi = *b_->psi();
  const auto& P = *psi.P();
  for (auto& g : gens_) {
    g.shape = "PP";
    if (g.is_zero()) throw ConfigInvalid("zero generator of N");
    if (!is_form(g, P))
      throw NotInKernel(psi.str(g) + " multiplies to " + psi.str(multiply_slots(g, 0, P)));
  }
  for (int g = 0; g < static_cast<int>(P.ngens()); ++g)
    if (std::find(basis_.begin(), basis_.end(), g) == basis_.end())
      throw ConfigInvalid("every generator of P needs a basis differential");
  nwindow_ = b_->window();

  // Right multiplication rules d(g_k)·ℓ = Σ p d(g_k') solved modulo N.
  std::vector<Letter> letters;
  for (int g = 0; g < static_cast<int>(P.ngens()); ++g) {
    letters.push_back({g, 1});
    if (P.gens()[static_cast<std::size_t>(g)].invertible) letters.push_back({g, -1});
  }
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (const auto& l : letters) {
      Tensor F = psb::rmul(d(P.gen_mono(basis_[k]), P), Element(letter_mono(P, l)), P);
      auto w = tensor_weight(*b_, F);
      std::vector<std::pair<TKey, Tensor>> cands;
      for (std::size_t k2 = 0; k2 < basis_.size(); ++k2) {
        Mono g2 = P.gen_mono(basis_[k2]);
        for (const auto& m : nwindow_)
          if (add_deg(P.degree(m), P.degree(g2)) == w) cands.push_back({{m, {static_cast<int>(k2)}}, u_dv(m, g2, P)});
      }
      std::vector<Tensor> ns = n_span_elements(w);
      std::map<TKey, std::size_t> row;
      auto index = [&](const Tensor& t) {
        for (const auto& [key, a] : t.terms) row.try_emplace(key, row.size());
      };
      index(F);
      for (const auto& [key, t] : cands) index(t);
      for (const auto& t : ns) index(t);
      const std::size_t ncols = cands.size() + ns.size();
      Matrix A(row.size(), Vec(ncols, Scalar()));
      Vec rhs(row.size(), Scalar());
      for (const auto& [key, a] : F.terms) rhs[row[key]] = a;
      for (std::size_t j = 0; j < cands.size(); ++j)
        for (const auto& [key, a] : cands[j].second.terms) A[row[key]][j] = a;
      for (std::size_t j = 0; j < ns.size(); ++j)
        for (const auto& [key, a] : ns[j].terms) A[row[key]][cands.size() + j] = a;
      const std::string lhs = "d" + P.gens()[static_cast<std::size_t>(basis_[k])].name + "·" + P.str(letter_mono(P, l));
      LinearSolution sol;
      try {
        sol = solve_linear(A, rhs);
      } catch (const Inconsistent&) {
        throw ConfigInvalid(lhs + " is not a left combination of the basis differentials modulo N in the window");
      }
      for (const auto& kv : sol.kernel)
        for (std::size_t j = 0; j < cands.size(); ++j)
          if (!kv[j].is_zero()) throw ConfigInvalid("basis differentials are dependent modulo N at " + lhs);
      QForm rule("PD");
      for (std::size_t j = 0; j < cands.size(); ++j) rule.add(cands[j].first, sol.solution[j]);
      rules_[{k, l}] = rule;
      relations_.push_back({lhs, str(rule)});
    }

  // The model is a well-defined bimodule with d well defined and N ↦ 0.
  auto show = [&](const QForm& f) { return str(f); };
  for (const auto& g : gens_) {
    consistency_.expect<Tensor>(project(g), QForm("PD"), [&] { return "π_N(" + psi.str(g) + ")"; }, show);
    for (const auto& l1 : letters)
      for (const auto& l2 : letters) {
        Element u(letter_mono(P, l1)), v(letter_mono(P, l2));
        Tensor ugv = psb::lmul(u, psb::rmul(g, v, P), P);
        consistency_.expect<Tensor>(project(ugv), QForm("PD"), [&] { return "π_N(" + psi.str(ugv) + ")"; }, show);
      }
  }
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    QForm dg = dgen(k);
    for (const auto& r : P.rules())
      consistency_.expect<Tensor>(rmul_word(dg, r.lhs), rmul(dg, r.rhs),
                                  [&] { return str(dg) + "·(" + P.str(r.lhs) + " − " + P.str(r.rhs) + ")"; }, show);
    for (const auto& l : letters)
      if (P.gens()[static_cast<std::size_t>(l.gen)].invertible)
        consistency_.expect<Tensor>(rmul_letter(rmul_letter(dg, l), {l.gen, -l.sign}), dg,
                                    [&] { return str(dg) + "·ℓℓ⁻¹"; }, show);
  }
  for (const auto& r : P.rules()) {
    QForm rhs("PD");
    for (const auto& [m, a] : r.rhs.terms()) rhs += a * d_word(P.word(m));
    consistency_.expect<Tensor>(d_word(r.lhs), rhs, [&] { return "d(" + P.str(r.lhs) + ")"; }, show);
  }

  // ←ψ²(c⊗N) ⊆ N⊗C on the generators.
  for (const auto& g : gens_)
    for (const auto& c : b_->cwindow()) {
      Tensor r = psi.pass(outer(Tensor("C", {c}), g), 0, 2);
      for (const auto& [ci, part] : split_last(r))
        covariance_.expect<Tensor>(project(part), QForm("PD"),
                                   [&] { return "π_N←ψ²(" + psi.C()->format(c) + "⊗" + psi.str(g) + ") at " +
                                                psi.C()->format(ci); },
                                   show);
    }
  if (!covariance_.ok) throw CovarianceFails(name_ + ": " + first_failure(covariance_));
}

std::vector<int> GeneralCalculus::weight_of(const TKey& k, const std::string& shape) const {
  const auto& P = *b_->psi()->P();
  if (shape == "PD") return add_deg(P.degree(k[0]), P.degree(P.gen_mono(basis_[static_cast<std::size_t>(k[1][0])])));
  return b_->weight(k, shape);
}

std::vector<Tensor> GeneralCalculus::n_span_elements(const std::vector<int>& weight) const {
  const auto& P = *b_->psi()->P();
  std::vector<Tensor> out;
  for (const auto& g : gens_) {
    auto wg = b_->weight(g.terms.begin()->first, "PP");
    for (const auto& u : nwindow_)
      for (const auto& v : nwindow_)
        if (add_deg(add_deg(P.degree(u), wg), P.degree(v)) == weight)
          out.push_back(psb::lmul(Element(u), psb::rmul(g, Element(v), P), P));
  }
  return out;
}

QForm GeneralCalculus::dgen(std::size_t k) const {
  return QForm("PD", {b_->psi()->P()->one(), {static_cast<int>(k)}});
}

QForm GeneralCalculus::lmul(const Element& u, const QForm& f) const {
  const auto& P = *b_->psi()->P();
  QForm r("PD");
  for (const auto& [k, a] : f.terms)
    for (const Element um = P.multiply(u, Element(k[0])); const auto& [m, c] : um.terms()) r.add({m, k[1]}, a * c);
  return r;
}

QForm GeneralCalculus::rmul_letter(const QForm& f, const Letter& l) const {
  QForm r("PD");
  for (const auto& [k, a] : f.terms) {
    auto it = rules_.find({static_cast<std::size_t>(k[1][0]), l});
    if (it == rules_.end()) throw ConfigInvalid("no right multiplication rule");
    r += a * lmul(Element(k[0]), it->second);
  }
  return r;
}

QForm GeneralCalculus::rmul_word(const QForm& f, const Word& w) const {
  QForm r = f;
  for (const auto& l : w) r = rmul_letter(r, l);
  return r;
}

QForm GeneralCalculus::rmul(const QForm& f, const Element& u) const {
  const auto& P = *b_->psi()->P();
  QForm r("PD");
  for (const auto& [m, a] : u.terms()) r += a * rmul_word(f, P.word(m));
  return r;
}

QForm GeneralCalculus::d_word(const Word& w) const {
  const auto& P = *b_->psi()->P();
  QForm r("PD");
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    Word post(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
    const Letter& l = w[i];
    auto kit = std::find(basis_.begin(), basis_.end(), l.gen);
    QForm dl = dgen(static_cast<std::size_t>(kit - basis_.begin()));
    if (l.sign < 0) {
      Element inv(P.gen_mono(l.gen, -1));
      dl = Scalar(-1) * rmul(lmul(inv, dl), inv);
    }
    r += lmul(P.normal_form(pre), rmul_word(dl, post));
  }
  return r;
}

QForm GeneralCalculus::project(const Tensor& form) const {
  const auto& P = *b_->psi()->P();
  if (!is_form(form, P)) throw NotInKernel(b_->psi()->str(form) + " is not a 1-form");
  QForm r("PD");
  for (const auto& [k, a] : form.terms) r += a * lmul(Element(k[0]), d_word(P.word(k[1])));
  return r;
}

Tensor GeneralCalculus::lift(const QForm& f) const {
  const auto& P = *b_->psi()->P();
  Tensor r("PP");
  for (const auto& [k, a] : f.terms)
    r += a * u_dv(k[0], P.gen_mono(basis_[static_cast<std::size_t>(k[1][0])]), P);
  return r;
}

Tensor GeneralCalculus::psi2(const CIdx& c, const QForm& f) const {
  const auto& psi = *b_->psi();
  Tensor r = psi.pass(outer(Tensor("C", {c}), lift(f)), 0, 2);
  Tensor out("PDC");
  for (const auto& [ci, part] : split_last(r)) out += join_last(project(part), ci, 'C');
  return out;
}

const Span<std::map<TKey, Scalar>>& GeneralCalculus::chi_n_span(const std::vector<int>& weight) const {
  {
    std::lock_guard lock(mu_);
    auto it = chi_spans_.find(weight);
    if (it != chi_spans_.end()) return *it->second;
  }
  auto sp = std::make_shared<Span<std::map<TKey, Scalar>>>();
  for (const auto& n : n_span_elements(weight)) sp->add(b_->chi(n).terms);
  std::lock_guard lock(mu_);
  return *chi_spans_.emplace(weight, sp).first->second;
}

const Span<std::map<TKey, Scalar>>& GeneralCalculus::horizontal_span(const std::vector<int>& weight) const {
  {
    std::lock_guard lock(mu_);
    auto it = h_spans_.find(weight);
    if (it != h_spans_.end()) return *it->second;
  }
  const auto& P = *b_->psi()->P();
  auto sp = std::make_shared<Span<std::map<TKey, Scalar>>>();
  for (const auto& x : b_->M().basis) {
    auto dx = P.degree(x.terms().begin()->first);
    for (const auto& u : nwindow_)
      for (const auto& v : nwindow_)
        if (add_deg(add_deg(P.degree(u), dx), P.degree(v)) == weight)
          sp->add(lmul(Element(u), rmul(project(d(from_element(x), P)), Element(v))).terms);
  }
  std::lock_guard lock(mu_);
  return *h_spans_.emplace(weight, sp).first->second;
}

std::vector<QForm> GeneralCalculus::horizontal_basis(const std::vector<int>& weight) const {
  std::vector<QForm> out;
  for (const auto& [p, row] : horizontal_span(weight).rows()) {
    QForm f("PD");
    f.terms = row;
    out.push_back(std::move(f));
  }
  return out;
}

bool GeneralCalculus::horizontal_contains(const QForm& f) const {
  std::map<std::vector<int>, std::map<TKey, Scalar>> parts;
  for (const auto& [k, a] : f.terms) parts[weight_of(k, "PD")][k] = a;
  for (const auto& [w, part] : parts)
    if (!horizontal_span(w).contains(part)) return false;
  return true;
}

Tensor GeneralCalculus::pi_m(const Tensor& pc) const {
  std::map<std::vector<int>, std::map<TKey, Scalar>> parts;
  for (const auto& [k, a] : pc.terms) parts[weight_of(k, "PC")][k] = a;
  Tensor out("PC");
  for (const auto& [w, part] : parts)
    for (const auto& [k, a] : chi_n_span(w).reduce(part)) out.add(k, a);
  return out;
}

Tensor GeneralCalculus::chi_n(const QForm& f) const { return pi_m(b_->chi(lift(f))); }

std::vector<CIdx> GeneralCalculus::lambda_basis() const {
  {
    std::lock_guard lock(mu_);
    if (lambda_basis_) return *lambda_basis_;
  }
  const Mono one = b_->psi()->P()->one();
  std::vector<CIdx> out;
  for (const auto& c : ker_eps_) {
    const Tensor lc = pi_m(Tensor("PC", {one, c}));
    if (lc.is_zero()) continue;
    const auto w = weight_of({one, c}, "PC");
    Span<std::map<TKey, Scalar>> gen;
    for (const auto& b : out)
      for (const auto& u : nwindow_)
        if (weight_of({u, b}, "PC") == w) gen.add(pi_m(Tensor("PC", {u, b})).terms);
    if (!gen.contains(lc.terms)) out.push_back(c);
  }
  std::lock_guard lock(mu_);
  lambda_basis_ = out;
  return out;
}

Tensor GeneralCalculus::lambda_coords(const Tensor& pc) const {
  const auto support = lambda_basis();
  std::map<std::vector<int>, Tensor> parts;
  for (const auto& [k, a] : pi_m(pc).terms) {
    auto [it, _] = parts.try_emplace(weight_of(k, "PC"), Tensor("PC"));
    it->second.add(k, a);
  }
  Tensor out("PC");
  for (const auto& [w, part] : parts) {
    std::vector<TKey> cols;
    std::vector<Tensor> imgs;
    for (const auto& c : support)
      for (const auto& u : nwindow_)
        if (weight_of({u, c}, "PC") == w) {
          cols.push_back({u, c});
          imgs.push_back(pi_m(Tensor("PC", {u, c})));
        }
    std::map<TKey, std::size_t> row;
    for (const auto& [k, a] : part.terms) row.try_emplace(k, row.size());
    for (const auto& t : imgs)
      for (const auto& [k, a] : t.terms) row.try_emplace(k, row.size());
    Matrix A(row.size(), Vec(cols.size(), Scalar()));
    Vec rhs(row.size(), Scalar());
    for (const auto& [k, a] : part.terms) rhs[row[k]] = a;
    for (std::size_t j = 0; j < imgs.size(); ++j)
      for (const auto& [k, a] : imgs[j].terms) A[row[k]][j] = a;
    LinearSolution sol;
    try {
      sol = solve_linear(A, rhs);
    } catch (const Inconsistent&) {
      throw WindowExceeded("element of 𝓜 outside P·Λ in the window");
    }
    for (std::size_t j = 0; j < cols.size(); ++j) out.add(cols[j], sol.solution[j]);
  }
  return out;
}

std::vector<QForm> GeneralCalculus::component_basis(const std::vector<int>& weight) const {
  std::vector<QForm> out;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (const auto& m : nwindow_)
      if (weight_of({m, {static_cast<int>(k)}}, "PD") == weight) out.push_back(QForm("PD", {m, {static_cast<int>(k)}}));
  return out;
}

ComponentDims GeneralCalculus::dims(const std::vector<int>& weight) const {
  ComponentDims out;
  out.weight = weight;
  auto basis = component_basis(weight);
  out.omega1 = basis.size();
  out.horizontal = horizontal_span(weight).dim();
  const auto& span = chi_n_span(weight);
  std::set<TKey> keys;
  for (const auto& c : ker_eps_)
    for (const auto& u : nwindow_)
      if (weight_of({u, c}, "PC") == weight) keys.insert({u, c});
  for (const auto& [p, row] : span.rows())
    for (const auto& [k, a] : row) keys.insert(k);
  out.m = keys.size() - span.dim();
  Span<std::map<TKey, Scalar>> img;
  for (const auto& f : basis) img.add(chi_n(f).terms);
  out.chi_rank = img.dim();
  for (const auto& h : horizontal_basis(weight))
    if (!chi_n(h).is_zero()) out.horizontals_killed = false;
  Span<std::map<TKey, Scalar>> lam;
  for (const auto& c : lambda_basis())
    for (const auto& u : nwindow_)
      if (weight_of({u, c}, "PC") == weight) {
        ++out.lambda_count;
        lam.add(pi_m(Tensor("PC", {u, c})).terms);
      }
  out.lambda_rank = lam.dim();
  return out;
}

Verdict GeneralCalculus::check_phi_n(const std::vector<std::vector<int>>& weights, const std::vector<CIdx>& cs) const {
  auto show = [&](const Tensor& t) { return b_->psi()->str(t); };
  auto pi_m_slices = [&](const Tensor& pcc) {
    Tensor r("PCC");
    for (const auto& [ci, part] : split_last(pcc)) r += join_last(pi_m(part), ci, 'C');
    return r;
  };
  Verdict v;
  for (const auto& w : weights)
    for (const auto& f : component_basis(w))
      for (const auto& bi : cs) {
        Tensor lhs("PCC");
        for (const auto& [k, a] : chi_n(f).terms) lhs += a * phi_map(*b_, bi, k[0], k[1]);
        Tensor rhs("PCC");
        for (const auto& [ci, part] : split_last(psi2(bi, f))) rhs += join_last(chi_n(part), ci, 'C');
        v.expect<Tensor>(pi_m_slices(lhs), rhs, [&] { return "φ_N∘χ_N at " + b_->psi()->C()->format(bi) + "⊗" + str(f); },
                         show);
      }
  return v;
}

std::string GeneralCalculus::str(const QForm& f) const {
  const auto& P = *b_->psi()->P();
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [k, a] : f.terms) {
    std::string term = P.str(Element(k[0], a));
    if (term == "1") term = "";
    else if (term == "-1") term = "-";
    else term += "·";
    if (!out.empty() && term.rfind('-', 0) != 0) out += " + ";
    else if (!out.empty()) out += " ";
    out += term + "d" + P.gens()[static_cast<std::size_t>(basis_[static_cast<std::size_t>(k[1][0])])].name;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quotient connections on the cylinder

QuotientConnection quotient_connection(const GeneralCalculus& g, const TrivialBundle& t, const Scalar& alpha,
                                       const std::vector<std::vector<int>>& weights, const std::vector<CIdx>& cs,
                                       bool pi_dx_identity) {
  const auto& b = *g.bundle();
  const auto& psi = *b.psi();
  const auto& P = *psi.P();
  const auto& C = *psi.C();
  const Mono one = P.one();
  const CIdx c1{1};
  if (g.lambda_basis() != std::vector<CIdx>{c1})
    throw ConfigInvalid(g.name() + ": Λ is not spanned by π_𝓜(1⊗c_1) alone");
  auto show = [&](const Tensor& f) { return g.str(f); };
  QuotientConnection out;
  out.alpha = alpha;
  out.omega_lambda = g.dgen(1) + alpha * g.dgen(0);
  QForm wl = out.omega_lambda;
  out.pi = [&g, wl, pi_dx_identity](const QForm& f) {
    QForm r("PD");
    for (const auto& [k, a] : f.terms) {
      if (k[1][0] == 0) {
        if (pi_dx_identity) r.add(k, a);
      } else {
        r += a * g.lmul(Element(k[0]), wl);
      }
    }
    return r;
  };
  // σ_N: 𝓜 → Ω¹(P), u·λ ↦ u·ω(λ).
  auto sigma = [&](const Tensor& m) {
    QForm r("PD");
    for (const auto& [k, a] : g.lambda_coords(m).terms) r += a * g.lmul(Element(k[0]), wl);
    return r;
  };
  auto omega_bar = [&](const CIdx& c) { return sigma(Tensor("PC", {one, c}) - C.eps(c) * Tensor("PC", {one, C.e()})); };

  for (const auto& w : weights) {
    for (const auto& f : g.component_basis(w)) {
      QForm pf = out.pi(f);
      out.projection.expect<Tensor>(out.pi(pf), pf, [&] { return "Π² at " + g.str(f); }, show);
      out.projection.expect<Tensor>(sigma(g.chi_n(f)), pf, [&] { return "σ_N∘χ_N at " + g.str(f); }, show);
      QForm rest = f - pf;
      require(out.projection, g.horizontal_contains(rest), [&] { return "f − Π(f) horizontal at " + g.str(f); },
              g.str(rest), "a horizontal form");
      for (const auto& c : cs) {
        Tensor lhs = g.psi2(c, pf);
        Tensor rhs("PDC");
        for (const auto& [ci, part] : split_last(g.psi2(c, f))) rhs += join_last(out.pi(part), ci, 'C');
        out.equivariance.expect<Tensor>(lhs, rhs, [&] { return "Π equivariance at " + C.format(c) + "⊗" + g.str(f); },
                                        show);
      }
    }
    for (const auto& h : g.horizontal_basis(w))
      out.projection.expect<Tensor>(out.pi(h), QForm("PD"), [&] { return "Π on horizontal " + g.str(h); }, show);
  }

  out.condition1.expect<Tensor>(g.chi_n(wl), g.pi_m(Tensor("PC", {one, c1})), [&] { return "χ_N(ω(λ))"; },
                                [&](const Tensor& x) { return psi.str(x); });

  for (const auto& bi : cs) {
    Tensor lhs = g.psi2(bi, wl);
    Tensor rhs[2];
    for (bool permuted : {false, true}) {
      Tensor s = psi.pass(outer(Tensor("C", {bi}), b.tau(c1, permuted)), 0, 2);
      s = map_slots(s, 1, 1, "PC", [&](const TKey& k) { return coaction(psi, Tensor("P", {k[0]})); });
      Tensor r("PDC");
      for (const auto& [k, a] : s.terms)
        r += a * join_last(g.lmul(P.multiply(Element(k[0]), Element(k[1])), omega_bar(k[2])), k[3], 'C');
      rhs[permuted ? 1 : 0] = r;
    }
    if (!(rhs[0] == rhs[1]))
      throw RepresentativeDependent("quotient Condition 2 at " + C.format(bi) + ": " + show(rhs[0]) + " vs " +
                                    show(rhs[1]));
    out.condition2.expect<Tensor>(lhs, rhs[0], [&] { return "quotient Condition 2 at " + C.format(bi); }, show);
  }

  const CIdx ci1 = c1;
  ConvMap beta("PP", [alpha, ci1, &P](const CIdx& c) {
    if (c != ci1) return Tensor("PP");
    return alpha * d(P.gen_mono(0), P);
  });
  ConvMap omega = trivial_connection(t, beta, cs);
  for (const auto& c : cs) {
    if (!C.eps(c).is_zero()) continue;
    out.beta_reproduction.expect<Tensor>(g.project(omega(c)), omega_bar(c),
                                         [&] { return "π_N ω(" + C.format(c) + ")"; }, show);
  }
  return out;
}

PlaneCalculusGenerators plane_calculus_generators(const Presentation& P, int which, const Scalar& s) {
  (void)P;
  const Mono one{0, 0}, x{1, 0}, y{0, 1}, x2{2, 0}, y2{0, 2}, xy{1, 1};
  auto t = [](std::initializer_list<std::tuple<Mono, Mono, Scalar>> terms) {
    Tensor r("PP");
    for (const auto& [a, b, c] : terms) r.add({a, b}, c);
    return r;
  };
  const Scalar Q = q(), I(1);
  PlaneCalculusGenerators out;
  if (which == 1) {
    out.printed = {t({{x, x, I + s}, {x2, one, -I}, {one, x2, -I}}),
                   t({{y, x, I}, {xy, one, -Q}, {one, xy, -Q}, {x, y, Q}}),
                   t({{y, y, I + Q}, {y2, one, -I}, {one, y2, -I}})};
    out.corrected = {t({{x, x, I + s}, {x2, one, -s}, {one, x2, -I}}), out.printed[1],
                     t({{y, y, I + Q}, {y2, one, -I}, {one, y2, -Q}})};
    out.stated_relations = {"x dx = s dx x", "x dy = q^-1 dy x", "y dx = q dx y", "y dy = q dy y"};
  } else if (which == 2) {
    out.printed = {t({{x, x, I + Q}, {x2, one, -I}, {one, x2, -I}}),
                   t({{y, x, I}, {xy, one, -I}, {one, xy, -Q}, {x, y, I}}),
                   t({{y, y, I + Q}, {y2, one, -I}, {one, y2, -I}})};
    out.corrected = {t({{x, x, I + Q}, {x2, one, -I}, {one, x2, -Q}}), out.printed[1],
                     t({{y, y, I + Q}, {y2, one, -I}, {one, y2, -Q}})};
    out.stated_relations = {"x dx = q dx x", "x dy = dy x", "y dx = q dx y + (q-1) dx y", "y dy = q dy y"};
  } else {
    throw ConfigInvalid("there are two quantum-plane calculi");
  }
  return out;
}

}  // namespace psb
