#include "psibundle/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace psb {

// ---------------------------------------------------------------------------
// Variable registry

namespace {

struct Registry {
  std::mutex mu;
  std::unordered_map<std::string, VarId> ids;
  std::vector<std::string> names;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

VarId var(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.ids.find(std::string(name));
  if (it != r.ids.end()) return it->second;
  auto id = static_cast<VarId>(r.names.size());
  r.names.emplace_back(name);
  r.ids.emplace(std::string(name), id);
  return id;
}

const std::string& var_name(VarId id) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.names.at(id);
}

// ---------------------------------------------------------------------------
// PMono

int PMono::degree() const {
  int d = 0;
  for (const auto& [v, e] : f) d += e;
  return d;
}

int PMono::exponent(VarId v) const {
  for (const auto& [w, e] : f)
    if (w == v) return e;
  return 0;
}

PMono operator*(const PMono& a, const PMono& b) {
  PMono r;
  r.f.reserve(a.f.size() + b.f.size());
  std::size_t i = 0, j = 0;
  while (i < a.f.size() || j < b.f.size()) {
    if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
      r.f.push_back(a.f[i++]);
    } else if (i == a.f.size() || b.f[j].first < a.f[i].first) {
      r.f.push_back(b.f[j++]);
    } else {
      r.f.emplace_back(a.f[i].first, a.f[i].second + b.f[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

int compare(const PMono& a, const PMono& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // Lex with smaller variable id more significant: larger exponent wins.
  std::size_t i = 0, j = 0;
  while (i < a.f.size() || j < b.f.size()) {
    if (j == b.f.size()) return 1;
    if (i == a.f.size()) return -1;
    if (a.f[i].first != b.f[j].first) return a.f[i].first < b.f[j].first ? 1 : -1;
    if (a.f[i].second != b.f[j].second) return a.f[i].second < b.f[j].second ? -1 : 1;
    ++i;
    ++j;
  }
  return 0;
}

namespace {

bool divides(const PMono& d, const PMono& m) {
  for (const auto& [v, e] : d.f)
    if (m.exponent(v) < e) return false;
  return true;
}

PMono quotient(const PMono& m, const PMono& d) {
  PMono r;
  for (const auto& [v, e] : m.f) {
    int k = e - d.exponent(v);
    if (k > 0) r.f.emplace_back(v, k);
  }
  return r;
}

PMono mono_gcd(const PMono& a, const PMono& b) {
  PMono r;
  for (const auto& [v, e] : a.f) {
    int k = std::min(e, b.exponent(v));
    if (k > 0) r.f.emplace_back(v, k);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const mpz_class& c) {
  if (c != 0) t_.push_back({PMono{}, c});
}

Poly Poly::variable(VarId v, int exp) {
  Poly p;
  p.t_.push_back({PMono{{{v, exp}}}, mpz_class(1)});
  if (exp == 0) p.t_[0].m.f.clear();
  return p;
}

Poly Poly::from_terms(std::vector<PTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PTerm& x, const PTerm& y) { return compare(x.m, y.m) > 0; });
  Poly p;
  for (auto& term : terms) {
    if (!p.t_.empty() && p.t_.back().m == term.m) {
      p.t_.back().c += term.c;
      if (p.t_.back().c == 0) p.t_.pop_back();
    } else if (term.c != 0) {
      p.t_.push_back(std::move(term));
    }
  }
  return p;
}

bool Poly::is_one() const { return t_.size() == 1 && t_[0].m.is_one() && t_[0].c == 1; }

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (const auto& term : t_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), term.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::vector<VarId> Poly::variables() const {
  std::set<VarId> s;
  for (const auto& term : t_)
    for (const auto& [v, e] : term.m.f) s.insert(v);
  return {s.begin(), s.end()};
}

int Poly::degree_in(VarId v) const {
  int d = 0;
  for (const auto& term : t_) d = std::max(d, term.m.exponent(v));
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& term : r.t_) term.c = -term.c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  std::size_t i = 0, j = 0;
  while (i < a.t_.size() || j < b.t_.size()) {
    int c = i == a.t_.size()   ? -1
            : j == b.t_.size() ? 1
                               : compare(a.t_[i].m, b.t_[j].m);
    if (c > 0) {
      r.t_.push_back(a.t_[i++]);
    } else if (c < 0) {
      r.t_.push_back(b.t_[j++]);
    } else {
      mpz_class s = a.t_[i].c + b.t_[j].c;
      if (s != 0) r.t_.push_back({a.t_[i].m, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.t_[0].c);
  if (b.is_constant()) return a.scaled(b.t_[0].c);
  std::vector<PTerm> terms;
  terms.reserve(a.t_.size() * b.t_.size());
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) terms.push_back({x.m * y.m, x.c * y.c});
  return Poly::from_terms(std::move(terms));
}

Poly Poly::scaled(const mpz_class& c) const {
  if (c == 0) return {};
  Poly r = *this;
  for (auto& term : r.t_) term.c *= c;
  return r;
}

Poly Poly::times(const PMono& m) const {
  Poly r = *this;
  for (auto& term : r.t_) term.m = term.m * m;
  return r;
}

Poly Poly::divexact(const mpz_class& c) const {
  Poly r = *this;
  for (auto& term : r.t_) mpz_divexact(term.c.get_mpz_t(), term.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

Poly Poly::divexact(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division");
  if (d.is_constant()) return divexact(d.t_[0].c);
  Poly rem = *this;
  std::vector<PTerm> quot;
  const PTerm& ld = d.lead();
  while (!rem.is_zero()) {
    const PTerm& lr = rem.lead();
    if (!divides(ld.m, lr.m) || !mpz_divisible_p(lr.c.get_mpz_t(), ld.c.get_mpz_t()))
      throw std::logic_error("Poly::divexact: inexact division");
    PTerm t{quotient(lr.m, ld.m), lr.c / ld.c};
    Poly step;
    step.t_.push_back(t);
    rem = rem - step * d;
    quot.push_back(std::move(t));
  }
  return from_terms(std::move(quot));
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (std::size_t i = 0; i < t_.size(); ++i)
    if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
  return true;
}

mpq_class Poly::evaluate(const std::map<VarId, mpq_class>& at) const {
  mpq_class s = 0;
  for (const auto& term : t_) {
    mpq_class v = term.c;
    for (const auto& [x, e] : term.m.f) {
      auto it = at.find(x);
      if (it == at.end()) throw UnassignedIndeterminate(var_name(x));
      mpq_class p = 1;
      for (int k = 0; k < e; ++k) p *= it->second;
      v *= p;
    }
    s += v;
  }
  return s;
}

namespace {

std::string mono_str(const PMono& m) {
  std::vector<std::pair<std::string, int>> f;
  for (const auto& [v, e] : m.f) f.emplace_back(var_name(v), e);
  std::sort(f.begin(), f.end());
  std::string s;
  for (const auto& [n, e] : f) {
    if (!s.empty()) s += '*';
    s += n;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

// Display order: ascending total degree, then by printed monomial.
std::vector<std::pair<std::string, const PTerm*>> display_terms(const std::vector<PTerm>& ts) {
  std::vector<std::tuple<int, std::string, const PTerm*>> v;
  for (const auto& t : ts) v.emplace_back(t.m.degree(), mono_str(t.m), &t);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  std::vector<std::pair<std::string, const PTerm*>> r;
  for (auto& [d, s, p] : v) r.emplace_back(s, p);
  return r;
}

}  // namespace

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [ms, t] : display_terms(t_)) {
    mpz_class c = t->c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (!s.empty()) s += neg ? "-" : "+";
    else if (neg) s += "-";
    if (ms.empty()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += ms;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// gcd

namespace {

using Uni = std::map<int, Poly>;  // exponent of main variable -> coefficient

Uni to_uni(const Poly& p, VarId v) {
  std::map<int, std::vector<PTerm>> parts;
  for (const auto& t : p.terms()) {
    PMono rest;
    int e = 0;
    for (const auto& [w, k] : t.m.f) {
      if (w == v) e = k;
      else rest.f.emplace_back(w, k);
    }
    parts[e].push_back({std::move(rest), t.c});
  }
  Uni u;
  for (auto& [e, ts] : parts) u[e] = Poly::from_terms(std::move(ts));
  return u;
}

Poly from_uni(const Uni& u, VarId v) {
  Poly r;
  for (const auto& [e, c] : u) r = r + c * Poly::variable(v, e);
  return r;
}

int uni_deg(const Uni& u) { return u.empty() ? -1 : u.rbegin()->first; }

Poly normalize_sign(Poly p) {
  if (!p.is_zero() && p.lead().c < 0) return -p;
  return p;
}

Poly uni_content(const Uni& u) {
  Poly g;
  for (const auto& [e, c] : u) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Uni uni_divexact(const Uni& u, const Poly& c) {
  Uni r;
  for (const auto& [e, x] : u) r[e] = x.divexact(c);
  return r;
}

Uni uni_prem(Uni a, const Uni& b) {
  int db = uni_deg(b);
  const Poly& lb = b.rbegin()->second;
  while (!a.empty() && uni_deg(a) >= db) {
    int shift = uni_deg(a) - db;
    Poly la = a.rbegin()->second;
    Uni next;
    for (const auto& [e, x] : a) next[e] = x * lb;
    for (const auto& [e, x] : b) {
      auto& slot = next[e + shift];
      slot = slot - x * la;
    }
    a.clear();
    for (auto& [e, x] : next)
      if (!x.is_zero()) a.emplace(e, std::move(x));
  }
  return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  if (a.is_constant() || b.is_constant()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    return Poly(g);
  }
  if (a.is_monomial() || b.is_monomial()) {
    const Poly& m = a.is_monomial() ? a : b;
    const Poly& p = a.is_monomial() ? b : a;
    PMono g = m.lead().m;
    for (const auto& t : p.terms()) {
      g = mono_gcd(g, t.m);
      if (g.is_one()) break;
    }
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), m.content().get_mpz_t(), p.content().get_mpz_t());
    return Poly(c).times(g);
  }
  auto va = a.variables(), vb = b.variables();
  for (VarId v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(uni_content(to_uni(a, v)), b);
  for (VarId v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, uni_content(to_uni(b, v)));
  VarId v = va.front();
  Uni ua = to_uni(a, v), ub = to_uni(b, v);
  Poly ca = uni_content(ua), cb = uni_content(ub);
  Poly c = gcd(ca, cb);
  Uni pa = uni_divexact(ua, ca), pb = uni_divexact(ub, cb);
  if (uni_deg(pa) < uni_deg(pb)) std::swap(pa, pb);
  while (true) {
    Uni r = uni_prem(pa, pb);
    if (r.empty()) break;
    if (uni_deg(r) == 0) return normalize_sign(c);
    r = uni_divexact(r, uni_content(r));
    pa = std::move(pb);
    pb = std::move(r);
  }
  Poly g = from_uni(uni_divexact(pb, uni_content(pb)), v);
  return normalize_sign(c * g);
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const mpq_class& v) : num_(v.get_num()), den_(v.get_den()) {}

Scalar::Scalar(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero("zero denominator");
  if (num.is_zero()) {
    den_ = Poly(mpz_class(1));
    return;
  }
  if (!den.is_one()) {
    Poly g = gcd(num, den);
    if (!g.is_one()) {
      num = num.divexact(g);
      den = den.divexact(g);
    }
    if (den.lead().c < 0) {
      num = -num;
      den = -den;
    }
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

Scalar Scalar::variable(std::string_view name) {
  return Scalar(Poly::variable(var(name)), Poly(mpz_class(1)), Raw{});
}

mpq_class Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("Scalar::constant_value on " + str());
  mpq_class n = num_.is_zero() ? mpq_class(0) : mpq_class(num_.lead().c);
  mpq_class r = n / mpq_class(den_.lead().c);
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, Raw{}); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ + b.num_, a.den_, Scalar::Raw{});
  if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
  return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.is_one() && b.den_.is_one()) return Scalar(a.num_ * b.num_, a.den_, Scalar::Raw{});
  // Cross-cancel first to keep the operands small.
  Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  Poly n = a.num_.divexact(g1) * b.num_.divexact(g2);
  Poly d = a.den_.divexact(g2) * b.den_.divexact(g1);
  if (d.lead().c < 0) {
    n = -n;
    d = -d;
  }
  return Scalar(std::move(n), std::move(d), Scalar::Raw{});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DivisionByZero(a.str() + " / 0");
  return a * Scalar(b.den_, b.num_);
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar r(1), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

mpq_class Scalar::specialize(const Assignment& at) const {
  std::map<VarId, mpq_class> ids;
  for (const auto& [n, v] : at) ids.emplace(var(n), v);
  mpq_class d = den_.evaluate(ids);
  if (d == 0) throw DenominatorVanishes(str());
  mpq_class r = num_.evaluate(ids) / d;
  r.canonicalize();
  return r;
}

Scalar Scalar::substitute(std::string_view name, const Scalar& value) const {
  VarId v = var(name);
  auto subst = [&](const Poly& p) {
    Scalar acc;
    for (const auto& t : p.terms()) {
      PMono rest;
      int e = 0;
      for (const auto& [w, k] : t.m.f) {
        if (w == v) e = k;
        else rest.f.emplace_back(w, k);
      }
      Poly mono;
      mono = Poly(t.c).times(rest);
      acc += Scalar(mono, Poly(mpz_class(1))) * value.pow(e);
    }
    return acc;
  };
  return subst(num_) / subst(den_);
}

std::vector<std::string> Scalar::indeterminates() const {
  std::set<std::string> s;
  for (VarId v : num_.variables()) s.insert(var_name(v));
  for (VarId v : den_.variables()) s.insert(var_name(v));
  return {s.begin(), s.end()};
}

std::string Scalar::str() const {
  if (den_.is_one()) return num_.str();
  auto wrap = [](const Poly& p) {
    std::string s = p.str();
    return p.terms().size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

std::size_t Scalar::complexity() const {
  std::size_t c = num_.terms().size() + den_.terms().size();
  for (const auto& t : den_.terms()) c += static_cast<std::size_t>(t.m.degree());
  return c;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  static bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
  static bool ident_char(unsigned char c) { return ident_start(c) || std::isdigit(c); }

  Scalar expr() {
    Scalar r;
    bool first = true;
    while (true) {
      skip();
      bool neg = false;
      if (eat('+')) {
      } else if (eat('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      Scalar t = term();
      r = neg ? r - t : r + t;
      first = false;
    }
    return r;
  }

  Scalar term() {
    Scalar r = power();
    while (true) {
      if (eat('*')) r = r * power();
      else if (eat('/')) r = r / power();
      else break;
    }
    return r;
  }

  Scalar power() {
    Scalar b = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return b.pow(neg ? -e : e);
    }
    return b;
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (c == '(') {
      ++pos_;
      Scalar r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar::variable(s_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// q-combinatorics

namespace {
thread_local std::optional<Scalar> q_value;
}  // namespace

const Scalar& q() {
  static const Scalar v = Scalar::variable("q");
  return q_value ? *q_value : v;
}

QSpecialization::QSpecialization(const mpq_class& value) : previous_(q_value) {
  if (value == 0) throw DivisionByZero("q specialized to 0");
  q_value = Scalar(value);
}

QSpecialization::~QSpecialization() { q_value = previous_; }

Scalar qpow(long e) {
  if (q_value) return q_value->pow(e);
  if (e >= 0) return Scalar(Poly::variable(var("q"), static_cast<int>(e)), Poly(mpz_class(1)));
  return Scalar(Poly(mpz_class(1)), Poly::variable(var("q"), static_cast<int>(-e)));
}

Scalar q_int(int n) {
  Scalar r;
  for (int i = 0; i < n; ++i) r += qpow(i);
  return r;
}

Scalar q_factorial(int n) {
  Scalar r(1);
  for (int k = 1; k <= n; ++k) r *= q_int(k);
  return r;
}

Scalar q_binom(int n, int k, const Scalar& base) {
  if (n < 0 || k < 0 || k > n) return {};
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::string>, Scalar> cache;
  auto key = std::make_tuple(n, k, base.str());
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  // q-Pascal: [n k] = [n-1 k-1] + b^k [n-1 k].
  Scalar r = (k == 0 || k == n) ? Scalar(1)
                                : q_binom(n - 1, k - 1, base) + base.pow(k) * q_binom(n - 1, k, base);
  std::lock_guard lock(mu);
  cache.emplace(key, r);
  return r;
}

}  // namespace psb
