#include "psibundle/tensor.hpp"

namespace psb {

Tensor::Tensor(std::string s, const TKey& k, const Scalar& c) : shape(std::move(s)) { add(k, c); }

void Tensor::add(const TKey& k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

Scalar Tensor::coeff(const TKey& k) const {
  auto it = terms.find(k);
  return it == terms.end() ? Scalar() : it->second;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (shape.empty()) shape = o.shape;
  for (const auto& [k, c] : o.terms) add(k, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (shape.empty()) shape = o.shape;
  for (const auto& [k, c] : o.terms) add(k, -c);
  return *this;
}

Tensor operator*(const Scalar& c, const Tensor& t) {
  Tensor r(t.shape);
  if (c.is_zero()) return r;
  for (const auto& [k, x] : t.terms) r.terms.emplace(k, c * x);
  return r;
}

Tensor map_slots(const Tensor& t, std::size_t pos, std::size_t width, const std::string& out,
                 const std::function<Tensor(const TKey&)>& f) {
  Tensor r(t.shape.substr(0, pos) + out + t.shape.substr(pos + width));
  std::map<TKey, Tensor> memo;
  for (const auto& [k, c] : t.terms) {
    TKey sub(k.begin() + static_cast<long>(pos), k.begin() + static_cast<long>(pos + width));
    auto it = memo.find(sub);
    if (it == memo.end()) it = memo.emplace(sub, f(sub)).first;
    for (const auto& [fk, fc] : it->second.terms) {
      TKey nk(k.begin(), k.begin() + static_cast<long>(pos));
      nk.insert(nk.end(), fk.begin(), fk.end());
      nk.insert(nk.end(), k.begin() + static_cast<long>(pos + width), k.end());
      r.add(nk, c * fc);
    }
  }
  return r;
}

Tensor outer(const Tensor& a, const Tensor& b) {
  Tensor r(a.shape + b.shape);
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      TKey k = ka;
      k.insert(k.end(), kb.begin(), kb.end());
      r.add(k, ca * cb);
    }
  return r;
}

Tensor glue(const Tensor& a, const Tensor& b, const Presentation& p) {
  Tensor r(a.shape.substr(0, a.shape.size() - 1) + b.shape);
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      Element prod = p.multiply(ka.back(), kb.front());
      for (const auto& [m, c] : prod.terms()) {
        TKey k(ka.begin(), ka.end() - 1);
        k.push_back(m);
        k.insert(k.end(), kb.begin() + 1, kb.end());
        r.add(k, ca * cb * c);
      }
    }
  return r;
}

Tensor multiply_slots(const Tensor& t, std::size_t pos, const Presentation& p) {
  return map_slots(t, pos, 2, "P", [&](const TKey& k) { return from_element(p.multiply(k[0], k[1])); });
}

Tensor from_element(const Element& e) {
  Tensor r("P");
  for (const auto& [m, c] : e.terms()) r.add({m}, c);
  return r;
}

Element to_element(const Tensor& t) {
  Element r;
  for (const auto& [k, c] : t.terms) r.add(k.at(0), c);
  return r;
}

std::string str(const Tensor& t, const Formatter& f) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : t.terms) {
    std::string slots;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) slots += "⊗";
      std::string s = (i < t.shape.size() && t.shape[i] == 'C') ? f.c(k[i]) : f.p(k[i]);
      slots += s.find('*') != std::string::npos ? "(" + s + ")" : s;
    }
    const bool neg = c.str()[0] == '-';
    const std::string body = neg ? (-c).str() : c.str();
    std::string term;
    if (body == "1") term = slots;
    else if (body.find_first_of("+-/") == std::string::npos) term = body + "*" + slots;
    else term = "(" + body + ")*" + slots;
    if (out.empty()) out = neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
  }
  return out;
}

void Verdict::fail(std::string at, std::string lhs, std::string rhs) {
  ok = false;
  if (failures.size() < kMaxFailures) failures.push_back({std::move(at), std::move(lhs), std::move(rhs)});
}

void Verdict::merge(const Verdict& o) {
  ok = ok && o.ok;
  checked += o.checked;
  for (const auto& f : o.failures)
    if (failures.size() < kMaxFailures) failures.push_back(f);
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

}  // namespace psb
