#include "psibundle/coalg.hpp"

namespace psb {

Tensor Coalgebra::delta(const CIdx& c) const {
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
  }
  Tensor t = d_.coproduct(c);
  t.shape = "CC";
  std::lock_guard lock(mu_);
  cache_.emplace(c, t);
  return t;
}

Tensor Coalgebra::delta_at(const Tensor& t, std::size_t pos) const {
  return map_slots(t, pos, 1, "CC", [&](const TKey& k) { return delta(k[0]); });
}

Tensor Coalgebra::eps_at(const Tensor& t, std::size_t pos) const {
  return map_slots(t, pos, 1, "", [&](const TKey& k) { return Tensor("", TKey{}, eps(k[0])); });
}

Tensor coproduct_n(const Coalgebra& C, const Tensor& c, int n) {
  Tensor r = c;
  for (int i = 0; i < n; ++i) r = C.delta_at(r, 0);
  return r;
}

Tensor coproduct_n_right(const Coalgebra& C, const Tensor& c, int n) {
  Tensor r = c;
  for (int i = 0; i < n; ++i) r = C.delta_at(r, r.shape.size() - 1);
  return r;
}

Verdict check_coalgebra(const Coalgebra& C, const std::vector<CIdx>& indices) {
  Verdict v;
  Formatter f{[](const Key&) { return std::string("?"); }, [&](const Key& k) { return C.format(k); }};
  auto show = [&](const Tensor& t) { return str(t, f); };
  for (const auto& c : indices) {
    Tensor one("C", {c});
    Tensor d = C.delta(c);
    v.expect<Tensor>(C.delta_at(d, 0), C.delta_at(d, 1), [&] { return "coassociativity at " + C.format(c); },
                     show);
    Tensor left = C.eps_at(d, 0), right = C.eps_at(d, 1);
    left.shape = right.shape = "C";
    v.expect<Tensor>(left, one, [&] { return "left counit at " + C.format(c); }, show);
    v.expect<Tensor>(right, one, [&] { return "right counit at " + C.format(c); }, show);
  }
  const CIdx& e = C.e();
  v.expect<Tensor>(C.delta(e), Tensor("CC", {e, e}), [&] { return "group-like " + C.format(e); }, show);
  ++v.checked;
  if (!C.eps(e).is_one()) v.fail("counit of " + C.format(e), C.eps(e).str(), "1");
  return v;
}

ConvMap::ConvMap(std::string shape, std::function<Tensor(const CIdx&)> f) : state_(std::make_shared<State>()) {
  state_->shape = std::move(shape);
  state_->f = std::move(f);
}

Tensor ConvMap::operator()(const CIdx& c) const {
  {
    std::lock_guard lock(state_->mu);
    auto it = state_->cache.find(c);
    if (it != state_->cache.end()) return it->second;
  }
  Tensor t = state_->f(c);
  t.shape = state_->shape;
  std::lock_guard lock(state_->mu);
  state_->cache.emplace(c, t);
  return t;
}

Tensor ConvMap::apply_at(const Tensor& t, std::size_t pos) const {
  return map_slots(t, pos, 1, shape(), [&](const TKey& k) { return (*this)(k[0]); });
}

ConvMap convolve(const ConvMap& f, const ConvMap& g, const CoalgebraPtr& C, const PresentationPtr& P) {
  std::string shape = f.shape().substr(0, f.shape().size() - 1) + g.shape();
  return ConvMap(shape, [f, g, C, P, shape](const CIdx& c) {
    Tensor r(shape);
    for (const auto& [k, a] : C->delta(c).terms) r += a * glue(f(k[0]), g(k[1]), *P);
    return r;
  });
}

ConvMap unit_map(const CoalgebraPtr& C, const PresentationPtr& P) {
  return ConvMap("P", [C, P](const CIdx& c) { return Tensor("P", {P->one()}, C->eps(c)); });
}

ConvMap convolution_inverse(const ConvMap& f, const CoalgebraPtr& C, const PresentationPtr& P, int verify_bound) {
  if (f.shape() != "P") throw ConfigInvalid("convolution_inverse needs algebra values");
  const CIdx e = C->e();
  if (!(f(e) == Tensor("P", {P->one()}))) throw NotUnitalAtE("f(" + C->format(e) + ") is not 1");
  auto holder = std::make_shared<ConvMap>();
  std::weak_ptr<ConvMap> self = holder;
  *holder = ConvMap("P", [f, C, P, e, self](const CIdx& c) {
    auto g = self.lock();
    Tensor r("P", {P->one()}, C->eps(c));
    bool lead = false;
    for (const auto& [k, a] : C->delta(c).terms) {
      if (k[0] == c) {
        if (k[1] != e || !a.is_one()) throw NotFiltered("term with left factor " + C->format(c) + " is not c⊗e");
        lead = true;
        continue;
      }
      if (C->filtration(k[0]) >= C->filtration(c))
        throw NotFiltered("left factor " + C->format(k[0]) + " in Δ" + C->format(c));
      r -= a * glue((*g)(k[0]), f(k[1]), *P);
    }
    if (!lead) throw NotFiltered("Δ" + C->format(c) + " has no c⊗e term");
    return r;
  });
  // The recursion closes over a weak reference; keep the holder alive with
  // a capturing wrapper that forwards to the memoized map.
  ConvMap out("P", [holder](const CIdx& c) { return (*holder)(c); });
  ConvMap left = convolve(out, f, C, P), right = convolve(f, out, C, P);
  ConvMap unit = unit_map(C, P);
  for (const auto& c : C->indices(verify_bound)) {
    if (!(left(c) == unit(c)) || !(right(c) == unit(c)))
      throw NotFiltered("triangular inverse fails to verify at " + C->format(c));
  }
  return out;
}

}  // namespace psb
