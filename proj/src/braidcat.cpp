#include "psibundle/braidcat.hpp"

#include <algorithm>
#include <cstdlib>

#include "psibundle/errors.hpp"

namespace psb {

namespace {

Mono pad(const Mono& m, std::size_t before, std::size_t after) {
  Mono r(before, 0);
  r.insert(r.end(), m.begin(), m.end());
  r.resize(before + m.size() + after, 0);
  return r;
}

Element embed(const Element& e, std::size_t before, std::size_t after) {
  Element r;
  for (const auto& [m, c] : e.terms()) r.add(pad(m, before, after), c);
  return r;
}

int length(const Mono& m) {
  int n = 0;
  for (int e : m) n += std::abs(e);
  return n;
}

// Generators of A then B; A's and B's rules shifted into place, plus
// b^s a^t → q^{st·deg b·deg a} a^t b^s for every generator pair.
PresentationPtr combined_presentation(const GradedAlgebra& A, const GradedAlgebra& B) {
  const auto& pa = *A.P;
  const auto& pb = *B.P;
  const std::size_t na = pa.ngens(), nb = pb.ngens();
  std::vector<std::string> axes = pa.axes();
  for (const auto& ax : pb.axes())
    axes.push_back(std::find(axes.begin(), axes.end(), ax) == axes.end() ? ax : ax + "'");
  std::vector<Generator> gens;
  for (const auto& g : pa.gens()) {
    Generator h = g;
    h.degree.resize(axes.size(), 0);
    gens.push_back(h);
  }
  for (const auto& g : pb.gens()) {
    Generator h = g;
    h.degree.insert(h.degree.begin(), pa.axes().size(), 0);
    if (pa.gen_index(h.name) >= 0) h.name += "'";
    gens.push_back(h);
  }
  auto P = std::make_shared<Presentation>(axes, gens);
  for (const auto& r : pa.rules()) P->add_rule(r.lhs, embed(r.rhs, 0, nb));
  for (const auto& r : pb.rules()) {
    Word lhs = r.lhs;
    for (auto& l : lhs) l.gen += static_cast<int>(na);
    P->add_rule(lhs, embed(r.rhs, na, 0));
  }
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t a = 0; a < na; ++a)
      for (int s : {1, -1}) {
        if (s < 0 && !pb.gens()[b].invertible) continue;
        for (int t : {1, -1}) {
          if (t < 0 && !pa.gens()[a].invertible) continue;
          Mono m(na + nb, 0);
          m[a] = t;
          m[na + b] = s;
          const int k = s * t * B.gen_degree[b] * A.gen_degree[a];
          P->add_rule({{static_cast<int>(na + b), s}, {static_cast<int>(a), t}}, Element(m, qpow(k)));
        }
      }
  return P;
}

}  // namespace

int GradedAlgebra::degree(const Mono& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gen_degree[i];
  return d;
}

std::optional<int> GradedAlgebra::degree(const Element& e) const {
  std::optional<int> d;
  for (const auto& [m, c] : e.terms()) {
    const int k = degree(m);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

GradedAlgebra braided_line_algebra() {
  auto P = std::make_shared<Presentation>(std::vector<std::string>{"c"},
                                          std::vector<Generator>{{"c", {1}, false}});
  return {P, {1}};
}

GradedAlgebra laurent_algebra() {
  auto P = std::make_shared<Presentation>(std::vector<std::string>{"x"},
                                          std::vector<Generator>{{"x", {1}, true}});
  return {P, {1}};
}

Tensor braiding(const GradedAlgebra& A, const Element& v, const GradedAlgebra& B, const Element& w) {
  Tensor r("PP");
  if (v.is_zero() || w.is_zero()) return r;
  const auto dv = A.degree(v), dw = B.degree(w);
  if (!dv) throw NotHomogeneous(A.P->str(v));
  if (!dw) throw NotHomogeneous(B.P->str(w));
  const Scalar f = qpow(*dv * *dw);
  for (const auto& [a, x] : v.terms())
    for (const auto& [b, y] : w.terms()) r.add({b, a}, f * x * y);
  return r;
}

Tensor braid_slots(const Tensor& t, std::size_t pos, const std::function<int(const Key&)>& deg) {
  Tensor r(t.shape);
  std::swap(r.shape[pos], r.shape[pos + 1]);
  for (const auto& [k, c] : t.terms) {
    TKey s = k;
    std::swap(s[pos], s[pos + 1]);
    r.add(s, qpow(deg(k[pos]) * deg(k[pos + 1])) * c);
  }
  return r;
}

Verdict check_hexagon(const GradedAlgebra& A, const std::vector<Mono>& us) {
  Verdict v;
  auto deg = [&](const Key& k) { return A.degree(k); };
  auto show = [&](const Tensor& t) {
    return str(t, {[&](const Key& k) { return A.P->str(k); }, [&](const Key& k) { return A.P->str(k); }});
  };
  for (const auto& a : us)
    for (const auto& b : us)
      for (const auto& c : us) {
        const Tensor t("PPP", {a, b, c});
        const int da = A.degree(a), db = A.degree(b), dc = A.degree(c);
        auto at = [&] { return A.P->str(a) + "⊗" + A.P->str(b) + "⊗" + A.P->str(c); };
        v.expect<Tensor>(braid_slots(braid_slots(t, 1, deg), 0, deg), Tensor("PPP", {c, a, b}, qpow((da + db) * dc)), at,
                         show);
        v.expect<Tensor>(braid_slots(braid_slots(t, 0, deg), 1, deg), Tensor("PPP", {b, c, a}, qpow(da * (db + dc))), at,
                         show);
      }
  return v;
}

Verdict check_naturality(const GradedAlgebra& A, const GradedAlgebra& B, const std::function<Tensor(const Mono&)>& f,
                         const std::vector<Mono>& vs, const std::vector<Mono>& ws) {
  Verdict v;
  auto show = [&](const Tensor& t) {
    std::string out;
    for (const auto& [k, c] : t.terms)
      out += (out.empty() ? "" : " + ") + ("(" + c.str() + ")*") + B.P->str(k[0]) + "⊗" + A.P->str(k[1]);
    return out.empty() ? std::string("0") : out;
  };
  auto apply_f = [&](const Tensor& t, std::size_t pos) {
    return map_slots(t, pos, 1, "P", [&](const TKey& k) { return f(k[0]); });
  };
  for (const auto& a : vs)
    for (const auto& b : ws) {
      // (f⊗id)∘Ψ(a⊗b) against Ψ∘(id⊗f)(a⊗b).
      const Tensor lhs = apply_f(braiding(A, Element(a), B, Element(b)), 0);
      Tensor rhs("PP");
      for (const auto& [k, c] : f(b).terms) rhs += c * braiding(A, Element(a), B, Element(k[0]));
      v.expect<Tensor>(lhs, rhs, [&] { return A.P->str(a) + "⊗" + B.P->str(b); }, show);
    }
  return v;
}

// ---------------------------------------------------------------------------

BraidedTensor::BraidedTensor(GradedAlgebra A, GradedAlgebra B, int max_length)
    : A_(std::move(A)), B_(std::move(B)), max_length_(max_length) {
  P_ = combined_presentation(A_, B_);
  std::vector<int> deg = A_.gen_degree;
  deg.insert(deg.end(), B_.gen_degree.begin(), B_.gen_degree.end());
  AB_ = {P_, deg};
}

Mono BraidedTensor::join(const Mono& a, const Mono& b) const {
  Mono r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::pair<Mono, Mono> BraidedTensor::split(const Mono& u) const {
  const auto na = static_cast<std::ptrdiff_t>(A_.P->ngens());
  return {Mono(u.begin(), u.begin() + na), Mono(u.begin() + na, u.end())};
}

Element BraidedTensor::multiply(const Mono& u, const Mono& v) const {
  const auto [a1, b1] = split(u);
  const auto [a2, b2] = split(v);
  const Scalar f = qpow(B_.degree(b1) * A_.degree(a2));
  const Element aa = A_.P->multiply(a1, a2);
  const Element bb = B_.P->multiply(b1, b2);
  Element r;
  for (const auto& [x, s] : aa.terms())
    for (const auto& [y, t] : bb.terms()) {
      Mono m = join(x, y);
      if (length(m) > max_length_) throw DegreeOverflow(P_->str(m));
      r.add(m, f * s * t);
    }
  return r;
}

Element BraidedTensor::multiply(const Element& u, const Element& v) const {
  Element r;
  for (const auto& [a, s] : u.terms())
    for (const auto& [b, t] : v.terms()) r += (s * t) * multiply(a, b);
  return r;
}

Verdict BraidedTensor::check_algebra(const std::vector<Mono>& us) const {
  Verdict v;
  auto show = [&](const Element& e) { return P_->str(e); };
  const Element one = this->one();
  for (const auto& a : us) {
    auto at1 = [&] { return P_->str(a); };
    v.expect<Element>(multiply(one, Element(a)), Element(a), at1, show);
    v.expect<Element>(multiply(Element(a), one), Element(a), at1, show);
    for (const auto& b : us) {
      const Element ab = multiply(a, b);
      for (const auto& c : us) {
        auto at = [&] { return P_->str(a) + "·" + P_->str(b) + "·" + P_->str(c); };
        v.expect<Element>(multiply(ab, Element(c)), multiply(Element(a), multiply(b, c)), at, show);
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

BraidedLine::BraidedLine(int bound) : bound_(bound), B_(braided_line_algebra()), BB_(B_, B_, 4 * bound + 4) {
  if (bound < 1) throw ConfigInvalid("braided line bound must be positive");
  Element dc(Mono{1, 0});
  dc.add(Mono{0, 1}, Scalar(1));
  delta_.push_back(BB_.one());
  for (int n = 1; n <= bound_; ++n) delta_.push_back(BB_.multiply(delta_.back(), dc));
  S_.push_back(Element(Mono{0}));
  for (int n = 1; n <= bound_; ++n) {
    Element s;
    for (const auto& [m, coef] : delta_[n].terms())
      if (m[0] < n) s -= coef * B_.P->multiply(S_[m[0]], Element(Mono{m[1]}));
    S_.push_back(s);
  }
}

void BraidedLine::require(int n) const {
  if (n < 0 || n > bound_) throw WindowExceeded("braided line index " + std::to_string(n));
}

const Element& BraidedLine::coproduct(int n) const {
  require(n);
  return delta_[n];
}

const Element& BraidedLine::antipode(int n) const {
  require(n);
  return S_[n];
}

Verdict BraidedLine::check_hopf() const {
  Verdict v;
  const auto& B = *B_.P;
  auto showBB = [&](const Element& e) { return BB_.P()->str(e); };
  auto showB = [&](const Element& e) { return B.str(e); };
  auto at = [](const std::string& what, int n) { return [=] { return what + " c^" + std::to_string(n); }; };
  for (int a = 0; a <= bound_; ++a)
    for (int b = 0; a + b <= bound_; ++b)
      v.expect<Element>(coproduct(a + b), BB_.multiply(coproduct(a), coproduct(b)),
                        [=] { return "multiplicative c^" + std::to_string(a) + "·c^" + std::to_string(b); }, showBB);
  auto show3 = [](const Tensor& t) {
    return str(t, {[](const Key& k) { return "c^" + std::to_string(k[0]); }, [](const Key& k) { return "c^" + std::to_string(k[0]); }});
  };
  for (int n = 0; n <= bound_; ++n) {
    const Element& d = coproduct(n);
    Tensor left("PPP"), right("PPP");
    Element eps_left, eps_right;
    for (const auto& [m, c] : d.terms()) {
      for (const auto& [m2, c2] : coproduct(m[0]).terms()) left.add({{m2[0]}, {m2[1]}, {m[1]}}, c * c2);
      for (const auto& [m2, c2] : coproduct(m[1]).terms()) right.add({{m[0]}, {m2[0]}, {m2[1]}}, c * c2);
      if (m[0] == 0) eps_left.add(Mono{m[1]}, c);
      if (m[1] == 0) eps_right.add(Mono{m[0]}, c);
    }
    v.expect<Tensor>(left, right, at("coassociative", n), show3);
    v.expect<Element>(eps_left, Element(Mono{n}), at("left counit", n), showB);
    v.expect<Element>(eps_right, Element(Mono{n}), at("right counit", n), showB);
    Element sl, sr;
    for (const auto& [m, c] : d.terms()) {
      sl += c * B.multiply(antipode(m[0]), Element(Mono{m[1]}));
      sr += c * B.multiply(Element(Mono{m[0]}), antipode(m[1]));
    }
    const Element unit = n == 0 ? Element(Mono{0}) : Element();
    v.expect<Element>(sl, unit, at("S̲⊗id", n), showB);
    v.expect<Element>(sr, unit, at("id⊗S̲", n), showB);
  }
  return v;
}

CoalgebraPtr BraidedLine::coalgebra() const {
  Coalgebra::Def d;
  d.name = "k[c]";
  auto delta = delta_;
  const int bound = bound_;
  d.coproduct = [delta, bound](const CIdx& c) {
    if (c[0] < 0 || c[0] > bound) throw WindowExceeded("braided line index " + std::to_string(c[0]));
    Tensor t("CC");
    for (const auto& [m, x] : delta[c[0]].terms()) t.add({{m[0]}, {m[1]}}, x);
    return t;
  };
  d.counit = [](const CIdx& c) { return Scalar(c[0] == 0 ? 1 : 0); };
  d.e = {0};
  d.format = [](const CIdx& c) { return "c_" + std::to_string(c[0]); };
  d.filtration = [](const CIdx& c) { return c[0]; };
  d.indices = [bound](int b) {
    std::vector<CIdx> r;
    for (int n = 0; n <= std::min(b, bound); ++n) r.push_back({n});
    return r;
  };
  return std::make_shared<Coalgebra>(std::move(d));
}

EntwiningPtr braided_entwining(const BraidedLine& line, const GradedAlgebra& P,
                               std::function<Tensor(const Mono&)> coaction) {
  auto B = line.B();
  return std::make_shared<Entwining>(P.P, line.coalgebra(), [B, P, coaction](const CIdx& c, const Mono& u) {
    Tensor r("PC");
    const Element cl(Mono{c[0]});
    for (const auto& [k, a] : coaction(u).terms) {
      // Ψ(c⊗u₀) = q^{deg c·deg u₀} u₀⊗c, then c·u₁ in B.
      for (const auto& [kk, f] : braiding(B, cl, P, Element(k[0])).terms)
        for (const Element prod = B.P->multiply(Element(kk[1]), Element(Mono{k[1][0]})); const auto& [m, g] : prod.terms())
          r.add({kk[0], {m[0]}}, a * f * g);
    }
    return r;
  });
}

// ---------------------------------------------------------------------------

BraidedBundle::BraidedBundle(int cbound)
    : line_(cbound), P_(laurent_algebra(), line_.B(), 8 * cbound + 16) {
  psi_ = braided_entwining(line_, P_.graded(), [this](const Mono& u) { return coaction(u); });
}

Tensor BraidedBundle::coaction(const Mono& u) const {
  const auto [a, b] = P_.split(u);
  Tensor r("PC");
  for (const auto& [m, c] : line_.coproduct(b[0]).terms()) r.add({P_.join(a, {m[0]}), {m[1]}}, c);
  return r;
}

Tensor BraidedBundle::chi(const Tensor& pp) const {
  Tensor r("PC");
  for (const auto& [k, x] : pp.terms)
    for (const auto& [kc, y] : coaction(k[1]).terms)
      for (const Element prod = P_.multiply(k[0], kc[0]); const auto& [m, z] : prod.terms()) r.add({m, kc[1]}, x * y * z);
  return r;
}

Tensor BraidedBundle::chi_inv(const Tensor& pc) const {
  Tensor r("PP");
  const Mono a1 = P_.A().P->one();
  for (const auto& [k, x] : pc.terms)
    for (const auto& [m, y] : line_.coproduct(k[1][0]).terms()) {
      Element s;
      for (const auto& [sm, sc] : line_.antipode(m[0]).terms()) s.add(P_.join(a1, sm), sc);
      for (const Element prod = P_.multiply(Element(k[0]), s); const auto& [u, z] : prod.terms()) r.add({u, P_.join(a1, {m[1]})}, x * y * z);
    }
  return r;
}

Tensor BraidedBundle::balance(const Tensor& pp) const {
  Tensor r("PP");
  const Mono a1 = P_.A().P->one();
  const Mono b1 = P_.B().P->one();
  for (const auto& [k, x] : pp.terms) {
    const auto [a, b] = P_.split(k[1]);
    for (const Element prod = P_.multiply(k[0], P_.join(a, b1)); const auto& [u, y] : prod.terms()) r.add({u, P_.join(a1, b)}, x * y);
  }
  return r;
}

IdentificationReport cylinder_identification(const BraidedBundle& bb, const Cylinder& cy, int dx, int dy, int dc) {
  IdentificationReport rep;
  const auto window = cylinder_window(*cy.P, dx, dy);
  const auto& psiB = *bb.psi();
  auto showE = [&](const Element& e) { return cy.P->str(e); };
  auto showT = [&](const Tensor& t) { return cy.psi->str(t); };
  auto name = [&](const Mono& u) { return cy.P->str(u); };
  for (const auto& u : window) {
    for (const auto& v : window)
      rep.algebra.expect<Element>(bb.P().multiply(u, v), cy.P->multiply(u, v),
                                  [&] { return name(u) + "·" + name(v); }, showE);
    rep.coaction.expect<Tensor>(bb.coaction(u), coaction(*cy.psi, Tensor("P", {u})), [&] { return name(u); }, showT);
    for (int l = 0; l <= dc; ++l) {
      rep.entwining.expect<Tensor>(psiB.psi({l}, u), cy.psi->psi({l}, u),
                                   [&] { return "c_" + std::to_string(l) + "⊗" + name(u); }, showT);
      const Tensor pc("PC", {u, {l}});
      rep.chi_inverse.expect<Tensor>(bb.chi(bb.chi_inv(pc)), pc,
                                     [&] { return "χ∘χ⁻¹ at " + name(u) + "⊗c_" + std::to_string(l); }, showT);
    }
    for (const auto& v : window) {
      const Tensor pp("PP", {u, v});
      rep.chi_inverse.expect<Tensor>(bb.balance(bb.chi_inv(bb.chi(pp))), bb.balance(pp),
                                     [&] { return "χ⁻¹∘χ at " + name(u) + "⊗" + name(v); }, showT);
    }
  }
  return rep;
}

}  // namespace psb
