#include "psibundle/entwine.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace psb {

// ---------------------------------------------------------------------------
// Entwining

Entwining::Entwining(PresentationPtr P, CoalgebraPtr C, Fn f) : P_(std::move(P)), C_(std::move(C)), f_(std::move(f)) {}

Tensor Entwining::psi(const CIdx& c, const Mono& u) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find({c, u});
    if (it != cache_.end()) return it->second;
  }
  Tensor t = f_(c, u);
  t.shape = "PC";
  std::lock_guard lock(mu_);
  cache_.emplace(std::make_pair(c, u), t);
  return t;
}

Tensor Entwining::apply(const Tensor& t, std::size_t pos) const {
  if (t.shape.compare(pos, 2, "CP") != 0) throw ConfigInvalid("ψ applied to slots of shape " + t.shape);
  return map_slots(t, pos, 2, "PC", [&](const TKey& k) { return psi(k[0], k[1]); });
}

Tensor Entwining::pass(const Tensor& t, std::size_t pos, std::size_t n) const {
  Tensor r = t;
  for (std::size_t i = 0; i < n; ++i) r = apply(r, pos + i);
  return r;
}

Formatter Entwining::formatter() const {
  auto P = P_;
  auto C = C_;
  return {[P](const Key& k) { return P->str(k); }, [C](const Key& k) { return C->format(k); }};
}

Verdict check_entwining(const Entwining& psi, const std::vector<CIdx>& cs, const std::vector<Mono>& us) {
  const auto& P = *psi.P();
  const auto& C = *psi.C();
  Verdict v;
  auto show = [&](const Tensor& t) { return psi.str(t); };
  const Mono one = P.one();
  for (const auto& c : cs) {
    v.expect<Tensor>(psi.psi(c, one), Tensor("PC", {one, c}), [&] { return "ψ(" + C.format(c) + "⊗1)"; }, show);
    for (const auto& u : us) {
      // (ind.B) counit: (id⊗ε)ψ(c⊗u) = ε(c)u
      Tensor lhs = C.eps_at(psi.psi(c, u), 1);
      lhs.shape = "P";
      v.expect<Tensor>(lhs, Tensor("P", {u}, C.eps(c)),
                       [&] { return "ind.B counit at (" + C.format(c) + ", " + P.str(u) + ")"; }, show);
      // (ind.B): (id⊗Δ)ψ(c⊗u) = ψ12ψ23(Δc⊗u)
      Tensor b_lhs = C.delta_at(psi.psi(c, u), 1);
      Tensor t = C.delta_at(Tensor("CP", {c, u}), 0);
      Tensor b_rhs = psi.apply(psi.apply(t, 1), 0);
      v.expect<Tensor>(b_lhs, b_rhs, [&] { return "ind.B at (" + C.format(c) + ", " + P.str(u) + ")"; }, show);
      // (ind.A): ψ(c⊗uv) = (m⊗id)(id⊗ψ)(ψ⊗id)(c⊗u⊗v)
      for (const auto& w : us) {
        Tensor a_lhs("PC");
        for (const Element tmp = P.multiply(u, w); const auto& [m, x] : tmp.terms()) a_lhs += x * psi.psi(c, m);
        Tensor s = psi.apply(psi.apply(Tensor("CPP", {c, u, w}), 0), 1);
        Tensor a_rhs = multiply_slots(s, 0, P);
        v.expect<Tensor>(a_lhs, a_rhs,
                         [&] { return "ind.A at (" + C.format(c) + ", " + P.str(u) + ", " + P.str(w) + ")"; }, show);
      }
    }
  }
  return v;
}

Tensor coaction(const Entwining& psi, const Tensor& t) {
  Tensor s("C" + t.shape);
  for (const auto& [k, c] : t.terms) {
    TKey nk{psi.C()->e()};
    nk.insert(nk.end(), k.begin(), k.end());
    s.add(nk, c);
  }
  return psi.pass(s, 0, t.shape.size());
}

Verdict check_coaction(const Entwining& psi, const std::vector<Mono>& us) {
  const auto& P = *psi.P();
  const auto& C = *psi.C();
  Verdict v;
  auto show = [&](const Tensor& t) { return psi.str(t); };
  auto coact1 = [&](const TKey& k) { return coaction(psi, Tensor("P", {k[0]})); };
  auto coact2 = [&](const TKey& k) { return coaction(psi, Tensor("PP", {k[0], k[1]})); };
  for (const auto& u : us) {
    Tensor r = coaction(psi, Tensor("P", {u}));
    v.expect<Tensor>(map_slots(r, 0, 1, "PC", coact1), C.delta_at(r, 1),
                     [&] { return "comodule Δ_R at " + P.str(u); }, show);
    Tensor cu = C.eps_at(r, 1);
    cu.shape = "P";
    v.expect<Tensor>(cu, Tensor("P", {u}), [&] { return "comodule counit at " + P.str(u); }, show);
  }
  const Mono one = P.one();
  for (const auto& u : us)
    for (const auto& w : us) {
      Tensor r = coaction(psi, Tensor("PP", {u, w}));
      v.expect<Tensor>(map_slots(r, 0, 2, "PPC", coact2), C.delta_at(r, 2),
                       [&] { return "comodule Δ_R² at " + P.str(u) + "⊗" + P.str(w); }, show);
      // u dw = u⊗w − uw⊗1 lies in Ω¹P; its coaction must stay in Ω¹P⊗C.
      Tensor form("PP", {u, w});
      for (const Element tmp = P.multiply(u, w); const auto& [m, x] : tmp.terms()) form.add({m, one}, -x);
      Tensor img = multiply_slots(coaction(psi, form), 0, P);
      v.expect<Tensor>(img, Tensor("PC"), [&] { return "Ω¹ preserved at " + P.str(u) + " d" + P.str(w); }, show);
    }
  std::size_t small = std::min<std::size_t>(us.size(), 6);
  for (std::size_t a = 0; a < small; ++a)
    for (std::size_t b = 0; b < small; ++b)
      for (std::size_t c = 0; c < small; ++c) {
        const Mono &u = us[a], &w = us[b], &z = us[c];
        // u dw dz = u⊗w⊗z − u⊗wz⊗1 − uw⊗1⊗z + uw⊗z⊗1
        Tensor form("PPP", {u, w, z});
        for (const Element tmp = P.multiply(w, z); const auto& [m, x] : tmp.terms()) form.add({u, m, one}, -x);
        for (const Element tmp = P.multiply(u, w); const auto& [m, x] : tmp.terms()) {
          form.add({m, one, z}, -x);
          form.add({m, z, one}, x);
        }
        Tensor img = coaction(psi, form);
        auto at = [&] { return "Ω² preserved at " + P.str(u) + " d" + P.str(w) + " d" + P.str(z); };
        v.expect<Tensor>(multiply_slots(img, 0, P), Tensor("PPC"), at, show);
        v.expect<Tensor>(multiply_slots(img, 1, P), Tensor("PPC"), at, show);
      }
  return v;
}

CoinvariantBasis coinvariants(const Entwining& psi, const std::vector<Mono>& window) {
  const auto& P = *psi.P();
  const CIdx e = psi.C()->e();
  std::map<std::vector<int>, std::vector<Mono>> groups;
  for (const auto& m : window) groups[P.degree(m)].push_back(m);
  CoinvariantBasis out;
  for (const auto& [deg, monos] : groups) {
    std::vector<Tensor> images;
    std::set<TKey> keys;
    for (const auto& m : monos) {
      Tensor d = coaction(psi, Tensor("P", {m})) - Tensor("PC", {m, e});
      for (const auto& [k, c] : d.terms) keys.insert(k);
      images.push_back(std::move(d));
    }
    std::vector<Vec> basis;
    if (keys.empty()) {
      for (std::size_t j = 0; j < monos.size(); ++j) {
        Vec u(monos.size(), Scalar());
        u[j] = Scalar(1);
        basis.push_back(std::move(u));
      }
    } else {
      Matrix A;
      for (const auto& k : keys) {
        Vec row;
        for (const auto& img : images) row.push_back(img.coeff(k));
        A.push_back(std::move(row));
      }
      basis = kernel(A);
    }
    for (const auto& vec : basis) {
      Element el;
      for (std::size_t j = 0; j < monos.size(); ++j) el.add(monos[j], vec[j]);
      out.basis.push_back(std::move(el));
    }
  }
  auto show = [&](const Tensor& t) { return psi.str(t); };
  for (const auto& a : out.basis)
    for (const auto& b : out.basis) {
      Element ab = P.multiply(a, b);
      Tensor lhs = coaction(psi, from_element(ab));
      Tensor rhs("PC");
      for (const auto& [m, c] : ab.terms()) rhs.add({m, e}, c);
      out.closure.expect<Tensor>(lhs, rhs, [&] { return "closure at (" + P.str(a) + ")(" + P.str(b) + ")"; }, show);
    }
  return out;
}

// ---------------------------------------------------------------------------
// χ_M and τ

BundleData::BundleData(EntwiningPtr psi, std::vector<Mono> window, std::vector<CIdx> cwindow, CWeight cweight)
    : psi_(std::move(psi)), window_(std::move(window)), cwindow_(std::move(cwindow)), cweight_(std::move(cweight)) {
  M_ = coinvariants(*psi_, window_);
}

std::vector<int> BundleData::weight(const TKey& k, const std::string& shape) const {
  std::vector<int> w(psi_->P()->axes().size(), 0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    auto d = shape[i] == 'C' ? cweight_(k[i]) : psi_->P()->degree(k[i]);
    for (std::size_t a = 0; a < w.size(); ++a) w[a] += d[a];
  }
  return w;
}

Tensor BundleData::chi(const Tensor& t) const {
  const auto& P = *psi_->P();
  return map_slots(t, 0, 2, "PC", [&](const TKey& k) {
    return glue(Tensor("P", {k[0]}), coaction(*psi_, Tensor("P", {k[1]})), P);
  });
}

ChiComponent BundleData::component(const std::vector<int>& weight, bool permuted) const {
  {
    std::lock_guard lock(mu_);
    auto it = comps_.find({weight, permuted});
    if (it != comps_.end()) return *it->second;
  }
  const auto& P = *psi_->P();
  ChiComponent out;
  out.weight = weight;
  std::vector<TKey> pairs;
  for (const auto& u : window_)
    for (const auto& v : window_)
      if (this->weight({u, v}, "PP") == weight) pairs.push_back({u, v});
  std::set<TKey> pair_set(pairs.begin(), pairs.end());

  std::map<TKey, std::size_t> rank;
  {
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    if (permuted) std::shuffle(order.begin(), order.end(), std::mt19937(20240611));
    for (std::size_t i = 0; i < pairs.size(); ++i) rank[pairs[order[i]]] = i;
  }
  Span<std::map<TKey, Scalar>> rels([&rank](const TKey& k) {
    auto it = rank.find(k);
    return it == rank.end() ? std::size_t(0) : it->second;
  });
  std::vector<Tensor> rel_list;
  // Relations ux⊗v − u⊗xv for homogeneous x ∈ M landing in this component.
  for (const auto& x : M_.basis) {
    auto dx = P.degree(x.terms().begin()->first);
    for (const auto& u : window_)
      for (const auto& v : window_) {
        auto wuv = this->weight({u, v}, "PP");
        for (std::size_t a = 0; a < wuv.size(); ++a) wuv[a] += dx[a];
        if (wuv != weight) continue;
        const TKey pr{u, v};
        Tensor r("PP");
        Element ux = P.multiply(Element(pr[0]), x), xv = P.multiply(x, Element(pr[1]));
        for (const auto& [m, c] : ux.terms()) r.add({m, pr[1]}, c);
        for (const auto& [m, c] : xv.terms()) r.add({pr[0], m}, -c);
        bool inside = true;
        for (const auto& [k, c] : r.terms)
          if (!pair_set.count(k)) inside = false;
        if (!inside || r.is_zero()) continue;
        if (rels.add(r.terms)) rel_list.push_back(std::move(r));
      }
  }
  for (const auto& pr : pairs)
    if (!rels.is_pivot(pr)) out.complement.push_back(pr);

  for (const auto& u : window_)
    for (const auto& c : cwindow_)
      if (this->weight({u, c}, "PC") == weight) out.targets.push_back({u, c});
  std::map<TKey, std::size_t> row_of;
  for (std::size_t i = 0; i < out.targets.size(); ++i) row_of[out.targets[i]] = i;

  out.chi.assign(out.targets.size(), Vec(out.complement.size(), Scalar()));
  for (std::size_t j = 0; j < out.complement.size(); ++j) {
    Tensor img = chi(Tensor("PP", out.complement[j]));
    for (const auto& [k, c] : img.terms) {
      auto it = row_of.find(k);
      if (it == row_of.end()) throw WindowExceeded("χ image " + psi_->str(Tensor("PC", k)) + " outside target window");
      out.chi[it->second][j] = c;
    }
  }
  auto show = [&](const Tensor& t) { return psi_->str(t); };
  for (const auto& r : rel_list)
    out.well_defined.expect<Tensor>(chi(r), Tensor("PC"), [&] { return "χ on relation " + psi_->str(r); }, show);
  out.square = out.targets.size() == out.complement.size();
  if (out.square) {
    out.det = out.complement.empty() ? Scalar(1) : determinant(out.chi);
    out.bijective = !out.det.is_zero();
  }
  auto stored = std::make_shared<ChiComponent>(out);
  std::lock_guard lock(mu_);
  comps_.emplace(std::make_pair(weight, permuted), stored);
  return out;
}

Tensor BundleData::tau(const CIdx& c, bool permuted) const {
  const Mono one = psi_->P()->one();
  auto comp = component(cweight_(c), permuted);
  if (!comp.bijective) throw SingularComponent("χ_M not invertible at weight of " + psi_->C()->format(c));
  Vec rhs(comp.targets.size(), Scalar());
  auto it = std::find(comp.targets.begin(), comp.targets.end(), TKey{one, c});
  if (it == comp.targets.end()) throw WindowExceeded("1⊗" + psi_->C()->format(c) + " outside target window");
  rhs[static_cast<std::size_t>(it - comp.targets.begin())] = Scalar(1);
  auto sol = solve_linear(comp.chi, rhs);
  Tensor out("PP");
  for (std::size_t j = 0; j < comp.complement.size(); ++j) out.add(comp.complement[j], sol.solution[j]);
  return out;
}

Verdict BundleData::check_tau() const {
  Verdict v;
  const Mono one = psi_->P()->one();
  for (const auto& c : cwindow_) {
    for (bool permuted : {false, true})
      v.expect<Tensor>(chi(tau(c, permuted)), Tensor("PC", {one, c}),
                       [&] { return "χ_M(τ(" + psi_->C()->format(c) + "))"; },
                       [&](const Tensor& t) { return psi_->str(t); });
  }
  return v;
}

// ---------------------------------------------------------------------------
// Dual side

Tensor right_action(const Entwining& psi, const Character& kappa, const Tensor& cs, const Mono& u) {
  const auto& P = *psi.P();
  std::size_t n = cs.shape.size();
  Tensor t(cs.shape + "P");
  for (const auto& [k, c] : cs.terms) {
    TKey nk = k;
    nk.push_back(u);
    t.add(nk, c);
  }
  for (std::size_t i = n; i-- > 0;) t = psi.apply(t, i);
  return map_slots(t, 0, 1, "", [&](const TKey& k) {
    return Tensor("", TKey{}, apply_character(kappa, P, Element(k[0])));
  });
}

namespace {

using CMap = std::map<TKey, Scalar>;

Tensor action_by(const Entwining& psi, const Character& kappa, const Tensor& cs, const Element& u) {
  Tensor r(cs.shape);
  for (const auto& [m, c] : u.terms()) r += c * right_action(psi, kappa, cs, m);
  return r;
}

// π_κ at slot pos: reduction modulo I_κ, leaving complement C-indices.
Tensor project_at(const Tensor& t, std::size_t pos, const Span<CMap>& ideal) {
  return map_slots(t, pos, 1, "C", [&](const TKey& k) {
    Tensor r("C");
    r.terms = ideal.reduce(CMap{{k, Scalar(1)}});
    return r;
  });
}

}  // namespace

DualSide dual_side(const Entwining& psi, const Character& kappa, const std::vector<CIdx>& cs,
                   const std::vector<Mono>& us) {
  const auto& P = *psi.P();
  const auto& C = *psi.C();
  DualSide out;
  auto show = [&](const Tensor& t) { return psi.str(t); };
  auto ch = check_character(kappa, P);
  if (!ch.ok) {
    out.action.fail("character", ch.failures.front(), "algebra map");
    return out;
  }
  for (const auto& c : cs) {
    Tensor cc("C", {c});
    out.action.expect<Tensor>(right_action(psi, kappa, cc, P.one()), cc,
                              [&] { return C.format(c) + " ◁ 1"; }, show);
    Tensor dc = C.delta(c);
    for (const auto& u : us) {
      Tensor cu = right_action(psi, kappa, cc, u);
      Tensor dcu = right_action(psi, kappa, dc, u);
      out.delta_compat.expect<Tensor>(C.delta_at(cu, 0), dcu,
                                      [&] { return "Δ(" + C.format(c) + " ◁ " + P.str(u) + ")"; }, show);
      for (const auto& w : us) {
        Element uw = P.multiply(u, w);
        out.action.expect<Tensor>(action_by(psi, kappa, cu, Element(w)), action_by(psi, kappa, cc, uw),
                                  [&] { return "(" + C.format(c) + " ◁ " + P.str(u) + ") ◁ " + P.str(w); }, show);
        out.action.expect<Tensor>(action_by(psi, kappa, dcu, Element(w)), action_by(psi, kappa, dc, uw),
                                  [&] { return "(Δ" + C.format(c) + " ◁² " + P.str(u) + ") ◁² " + P.str(w); },
                                  show);
      }
    }
  }
  Span<CMap> ideal;
  std::vector<Tensor> gens;
  for (const auto& c : cs)
    for (const auto& u : us) {
      Tensor g = right_action(psi, kappa, Tensor("C", {c}), u) -
                 Tensor("C", {c}, apply_character(kappa, P, Element(u)));
      if (g.is_zero()) continue;
      if (ideal.add(g.terms)) gens.push_back(g);
    }
  for (const auto& [p, row] : ideal.rows()) {
    Tensor t("C");
    t.terms = row;
    out.ideal_basis.push_back(std::move(t));
  }
  for (const auto& g : gens) {
    Tensor d = C.delta_at(g, 0);
    Tensor pp = project_at(project_at(d, 0, ideal), 1, ideal);
    out.coideal.expect<Tensor>(pp, Tensor("CC"), [&] { return "(π⊗π)Δ(" + psi.str(g) + ")"; }, show);
  }
  for (const auto& c : cs)
    for (const auto& u : us) {
      Tensor z("CC");
      for (const auto& [k, a] : C.delta(c).terms) {
        Tensor right = right_action(psi, kappa, Tensor("C", {k[1]}), u);
        z += a * outer(Tensor("C", {k[0]}), right);
      }
      Tensor lhs = project_at(C.delta_at(z, 0), 1, ideal);
      Tensor rhs = project_at(C.delta_at(z, 1), 1, ideal);
      out.zeta.expect<Tensor>(lhs, rhs, [&] { return "ζ^M(" + C.format(c) + "⊗" + P.str(u) + ")"; }, show);
    }
  out.notes.push_back("ζ^M: image containment in C⊗^M C checked; bijectivity not checked (infinite-dimensional C)");
  return out;
}

// ---------------------------------------------------------------------------
// Hopf algebras

HopfData::HopfData(PresentationPtr H, std::map<Letter, Tensor> delta, std::map<Letter, Scalar> eps,
                   std::map<Letter, Element> antipode)
    : H_(std::move(H)), delta_(std::move(delta)), eps_(std::move(eps)), antipode_(std::move(antipode)) {}

namespace {

// Slotwise product in H⊗H.
Tensor pp_product(const Tensor& a, const Tensor& b, const Presentation& H) {
  Tensor r("PP");
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      Element l = H.multiply(ka[0], kb[0]), rr = H.multiply(ka[1], kb[1]);
      for (const auto& [m1, c1] : l.terms())
        for (const auto& [m2, c2] : rr.terms()) r.add({m1, m2}, ca * cb * c1 * c2);
    }
  return r;
}

}  // namespace

Tensor HopfData::delta(const Mono& m) const {
  {
    std::lock_guard lock(mu_);
    auto it = dcache_.find(m);
    if (it != dcache_.end()) return it->second;
  }
  const Mono one = H_->one();
  Tensor r("PP", {one, one});
  for (const auto& l : H_->word(m)) {
    auto it = delta_.find(l);
    if (it == delta_.end()) throw ConfigInvalid("coproduct undefined on a letter of " + H_->str(m));
    r = pp_product(r, it->second, *H_);
  }
  std::lock_guard lock(mu_);
  dcache_.emplace(m, r);
  return r;
}

Scalar HopfData::eps(const Mono& m) const {
  Scalar r(1);
  for (const auto& l : H_->word(m)) r *= eps_.at(l);
  return r;
}

Element HopfData::antipode(const Mono& m) const {
  Element r(H_->one());
  Word w = H_->word(m);
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = H_->multiply(r, antipode_.at(*it));
  return r;
}

Tensor HopfData::delta(const Element& e) const {
  Tensor r("PP");
  for (const auto& [m, c] : e.terms()) r += c * delta(m);
  return r;
}

Element HopfData::antipode(const Element& e) const {
  Element r;
  for (const auto& [m, c] : e.terms()) r += c * antipode(m);
  return r;
}

Verdict check_hopf(const HopfData& h, const std::vector<Mono>& window) {
  const auto& H = *h.H();
  Verdict v;
  Formatter f{[&](const Key& k) { return H.str(k); }, [&](const Key& k) { return H.str(k); }};
  auto show = [&](const Tensor& t) { return str(t, f); };
  auto showe = [&](const Element& e) { return H.str(e); };
  const Mono one = H.one();
  for (const auto& rule : H.rules()) {
    Tensor dl("PP", {one, one});
    Element sl(one);
    Scalar el(1);
    for (const auto& l : rule.lhs) {
      dl = pp_product(dl, h.delta(H.gen_mono(l.gen, l.sign)), H);
      sl = H.multiply(h.antipode(H.gen_mono(l.gen, l.sign)), sl);
      el *= h.eps(H.gen_mono(l.gen, l.sign));
    }
    Scalar er;
    for (const auto& [m, c] : rule.rhs.terms()) er += c * h.eps(m);
    v.expect<Tensor>(dl, h.delta(rule.rhs), [&] { return "Δ respects " + H.str(rule.lhs); }, show);
    v.expect<Element>(sl, h.antipode(rule.rhs), [&] { return "S respects " + H.str(rule.lhs); }, showe);
    v.expect<Tensor>(Tensor("P", {one}, el), Tensor("P", {one}, er), [&] { return "ε respects " + H.str(rule.lhs); },
                     show);
  }
  for (const auto& u : window) {
    Tensor d = h.delta(u);
    auto dl = map_slots(d, 0, 1, "PP", [&](const TKey& k) { return h.delta(k[0]); });
    auto dr = map_slots(d, 1, 1, "PP", [&](const TKey& k) { return h.delta(k[0]); });
    v.expect<Tensor>(dl, dr, [&] { return "coassociativity at " + H.str(u); }, show);
    Element l, r, s1, s2;
    for (const auto& [k, c] : d.terms) {
      l.add(k[1], c * h.eps(k[0]));
      r.add(k[0], c * h.eps(k[1]));
      s1 += c * H.multiply(h.antipode(k[0]), Element(k[1]));
      s2 += c * H.multiply(Element(k[0]), h.antipode(k[1]));
    }
    v.expect<Element>(l, Element(u), [&] { return "left counit at " + H.str(u); }, showe);
    v.expect<Element>(r, Element(u), [&] { return "right counit at " + H.str(u); }, showe);
    Element unit(one, h.eps(u));
    v.expect<Element>(s1, unit, [&] { return "m(S⊗id)Δ at " + H.str(u); }, showe);
    v.expect<Element>(s2, unit, [&] { return "m(id⊗S)Δ at " + H.str(u); }, showe);
  }
  return v;
}

CoalgebraPtr hopf_coalgebra(const HopfPtr& h) {
  Coalgebra::Def d;
  d.name = "H";
  d.coproduct = [h](const CIdx& c) {
    Tensor t = h->delta(c);
    t.shape = "CC";
    return t;
  };
  d.counit = [h](const CIdx& c) { return h->eps(c); };
  d.e = h->H()->one();
  d.format = [h](const CIdx& c) { return "[" + h->H()->str(c) + "]"; };
  d.filtration = [](const CIdx& c) {
    int n = 0;
    for (int x : c) n += std::abs(x);
    return n;
  };
  d.indices = [h](int bound) {
    DegreeWindow w;
    w.max_length = bound;
    return h->H()->enumerate(w);
  };
  return std::make_shared<Coalgebra>(std::move(d));
}

EntwiningPtr hopf_entwining(PresentationPtr P, std::function<Tensor(const Mono&)> coact, const HopfPtr& h,
                            CoalgebraPtr C) {
  return std::make_shared<Entwining>(P, std::move(C), [coact, h](const CIdx& c, const Mono& u) {
    Tensor r("PC");
    for (const auto& [k, a] : coact(u).terms)
      for (const Element tmp = h->H()->multiply(c, k[1]); const auto& [m, b] : tmp.terms()) r.add({k[0], m}, a * b);
    return r;
  });
}

namespace {

Tensor apply_pi(const std::function<Tensor(const Mono&)>& pi, const Element& e) {
  Tensor r("C");
  for (const auto& [m, c] : e.terms()) r += c * pi(m);
  return r;
}

}  // namespace

EntwiningPtr embeddable_entwining(const HopfPtr& h, CoalgebraPtr C, std::function<Tensor(const Mono&)> pi,
                                  std::function<std::optional<Element>(const CIdx&)> section,
                                  const std::vector<CIdx>& cwindow) {
  for (const auto& c : cwindow) {
    auto s = section(c);
    if (!s) throw SectionUndefined("no section value at " + C->format(c));
    if (!(apply_pi(pi, *s) == Tensor("C", {c}))) throw SectionUndefined("π(i(c)) ≠ c at " + C->format(c));
  }
  return std::make_shared<Entwining>(h->H(), std::move(C), [h, pi, section](const CIdx& c, const Mono& u) {
    auto s = section(c);
    if (!s) throw SectionUndefined("no section value");
    Tensor r("PC");
    for (const auto& [k, a] : h->delta(u).terms) {
      Tensor pc = apply_pi(pi, h->H()->multiply(*s, Element(k[1])));
      r += a * outer(Tensor("P", {k[0]}), pc);
    }
    return r;
  });
}

Tensor embeddable_psiC(const HopfData& h, const std::function<Tensor(const Mono&)>& pi,
                       const std::function<std::optional<Element>(const CIdx&)>& section, const CIdx& b,
                       const CIdx& c) {
  auto u = section(b), v = section(c);
  if (!u || !v) throw SectionUndefined("section undefined");
  Tensor r("CC");
  for (const auto& [k, a] : h.delta(*v).terms) {
    Tensor left = pi(k[0]);
    Tensor right = apply_pi(pi, h.H()->multiply(*u, Element(k[1])));
    r += a * outer(left, right);
  }
  return r;
}

}  // namespace psb
