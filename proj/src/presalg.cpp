#include "psibundle/presalg.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace psb {

// ---------------------------------------------------------------------------
// Monomials and elements

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
  int la = 0, lb = 0;
  for (int e : a) la += std::abs(e);
  for (int e : b) lb += std::abs(e);
  if (la != lb) return la < lb;
  return a < b;
}

Element::Element(const Mono& m, Scalar c) {
  if (!c.is_zero()) t_.emplace(m, std::move(c));
}

void Element::add(const Mono& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

Scalar Element::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Scalar() : it->second;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

Element operator*(const Scalar& c, const Element& e) {
  Element r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : e.t_) r.t_.emplace(m, c * x);
  return r;
}

bool DegreeWindow::contains(const std::vector<int>& degree, const Mono& m) const {
  for (std::size_t i = 0; i < bounds.size() && i < degree.size(); ++i)
    if (degree[i] < bounds[i].first || degree[i] > bounds[i].second) return false;
  if (max_length) {
    int len = 0;
    for (int e : m) len += std::abs(e);
    if (len > *max_length) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(std::vector<std::string> axes, std::vector<Generator> gens)
    : axes_(std::move(axes)), gens_(std::move(gens)) {
  for (const auto& g : gens_)
    if (g.degree.size() != axes_.size()) throw ConfigInvalid("generator " + g.name + " has wrong degree arity");
  for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
    if (!gens_[g].invertible) continue;
    add_rule({{g, 1}, {g, -1}}, Element(one()));
    add_rule({{g, -1}, {g, 1}}, Element(one()));
  }
}

void Presentation::add_rule(const Word& lhs, const Element& rhs) {
  if (lhs.size() < 2 || lhs.size() > 3) throw ConfigInvalid("rule lhs must have length 2 or 3");
  auto d = degree(lhs);
  for (const auto& [m, c] : rhs.terms())
    if (degree(m) != d) throw ConfigInvalid("rule " + str(lhs) + " is not degree-homogeneous");
  rules_.push_back({lhs, rhs});
  rule_index_.try_emplace(lhs, rules_.size() - 1);
  max_lhs_ = std::max(max_lhs_, lhs.size());
  std::lock_guard lock(mu_);
  letter_cache_.clear();
}

int Presentation::gen_index(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

Mono Presentation::gen_mono(int g, int e) const {
  Mono m = one();
  m.at(g) = e;
  return m;
}

Mono Presentation::mono(std::initializer_list<std::pair<std::string_view, int>> exps) const {
  Mono m = one();
  for (const auto& [n, e] : exps) {
    int g = gen_index(n);
    if (g < 0) throw ConfigInvalid("unknown generator " + std::string(n));
    m[g] += e;
  }
  return m;
}

Word Presentation::word(const Mono& m) const {
  Word w;
  for (int g = 0; g < static_cast<int>(m.size()); ++g)
    for (int k = 0; k < std::abs(m[g]); ++k) w.push_back({g, m[g] > 0 ? 1 : -1});
  return w;
}

std::vector<int> Presentation::degree(const Mono& m) const {
  std::vector<int> d(axes_.size(), 0);
  for (std::size_t g = 0; g < m.size(); ++g)
    for (std::size_t a = 0; a < d.size(); ++a) d[a] += m[g] * gens_[g].degree[a];
  return d;
}

std::vector<int> Presentation::degree(const Word& w) const {
  std::vector<int> d(axes_.size(), 0);
  for (const auto& l : w)
    for (std::size_t a = 0; a < d.size(); ++a) d[a] += l.sign * gens_[l.gen].degree[a];
  return d;
}

bool Presentation::is_normal(const Mono& m) const {
  Word w = word(m);
  for (std::size_t len = 2; len <= max_lhs_; ++len)
    for (std::size_t i = 0; i + len <= w.size(); ++i)
      if (rule_index_.count(Word(w.begin() + i, w.begin() + i + len))) return false;
  return true;
}

std::optional<Mono> Presentation::sorted_mono(const Word& w) const {
  Mono m = one();
  int last = -1;
  for (const auto& l : w) {
    if (l.gen < last) return std::nullopt;
    if (m[l.gen] * l.sign < 0) return std::nullopt;
    m[l.gen] += l.sign;
    last = l.gen;
  }
  return m;
}

Element Presentation::times_letter(const Mono& m, Letter l, std::size_t& steps) const {
  {
    std::lock_guard lock(mu_);
    auto it = letter_cache_.find({m, l});
    if (it != letter_cache_.end()) return it->second;
  }
  if (++steps > budget) throw RewriteBudgetExceeded("after " + std::to_string(budget) + " steps at " + str(m));
  Word w = word(m);
  w.push_back(l);
  Element result;
  bool reduced = false;
  // A normal word times a letter can only have a redex as a suffix; the
  // longest one starts leftmost.
  for (std::size_t len = std::min(max_lhs_, w.size()); len >= 2 && !reduced; --len) {
    Word suffix(w.end() - static_cast<long>(len), w.end());
    auto it = rule_index_.find(suffix);
    if (it == rule_index_.end()) continue;
    Word prefix(w.begin(), w.end() - static_cast<long>(len));
    auto pm = sorted_mono(prefix);
    if (!pm) throw ConfigInvalid("prefix of a normal word is not ordered: " + str(prefix));
    for (const auto& [rm, c] : rules_[it->second].rhs.terms()) result += c * times_mono(*pm, rm, steps);
    reduced = true;
  }
  if (!reduced) {
    auto sm = sorted_mono(w);
    if (!sm) throw ConfigInvalid("rule set incomplete: irreducible word " + str(w) + " is not normal-ordered");
    result = Element(*sm);
  }
  std::lock_guard lock(mu_);
  letter_cache_.emplace(std::make_pair(m, l), result);
  return result;
}

Element Presentation::times_mono(const Mono& m, const Mono& b, std::size_t& steps) const {
  Element acc(m);
  for (const auto& l : word(b)) {
    Element next;
    for (const auto& [x, c] : acc.terms()) next += c * times_letter(x, l, steps);
    acc = std::move(next);
  }
  return acc;
}

Element Presentation::reduce_word(const Word& w, std::size_t& steps) const {
  Element acc(one());
  for (const auto& l : w) {
    Element next;
    for (const auto& [x, c] : acc.terms()) next += c * times_letter(x, l, steps);
    acc = std::move(next);
  }
  return acc;
}

Element Presentation::normal_form(const Word& w) const {
  std::size_t steps = 0;
  return reduce_word(w, steps);
}

Element Presentation::multiply(const Mono& a, const Mono& b) const {
  std::size_t steps = 0;
  return times_mono(a, b, steps);
}

Element Presentation::multiply(const Element& a, const Element& b) const {
  Element r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r += (ca * cb) * multiply(ma, mb);
  return r;
}

Element Presentation::multiply(const Element& a, const Element& b, const DegreeWindow& w) const {
  auto check = [&](const Element& e, const char* what) {
    for (const auto& [m, c] : e.terms())
      if (!w.contains(degree(m), m)) throw DegreeOverflow(std::string(what) + " term " + str(m) + " leaves window");
  };
  check(a, "left factor");
  check(b, "right factor");
  Element r = multiply(a, b);
  check(r, "product");
  return r;
}

std::vector<Mono> Presentation::enumerate(const DegreeWindow& w) const {
  std::vector<int> bound(gens_.size(), -1);
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (w.max_length) bound[g] = *w.max_length;
    for (std::size_t a = 0; a < axes_.size() && a < w.bounds.size(); ++a) {
      int d = gens_[g].degree[a];
      if (d == 0) continue;
      bool alone = true;
      for (std::size_t h = 0; h < gens_.size(); ++h)
        if (h != g && gens_[h].degree[a] != 0) alone = false;
      if (!alone) continue;
      int b = std::max(std::abs(w.bounds[a].first), std::abs(w.bounds[a].second)) / std::abs(d);
      bound[g] = bound[g] < 0 ? b : std::min(bound[g], b);
    }
    if (bound[g] < 0) throw ConfigInvalid("window does not bound generator " + gens_[g].name);
  }
  std::vector<Mono> out;
  Mono m = one();
  auto rec = [&](auto&& self, std::size_t g) -> void {
    if (g == gens_.size()) {
      if (w.contains(degree(m), m) && is_normal(m)) out.push_back(m);
      return;
    }
    int lo = gens_[g].invertible ? -bound[g] : 0;
    for (int e = lo; e <= bound[g]; ++e) {
      m[g] = e;
      self(self, g + 1);
    }
    m[g] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), MonoLess{});
  return out;
}

std::vector<Element> Presentation::one_step(const Word& w) const {
  std::vector<Element> out;
  for (const auto& rule : rules_) {
    const auto& lhs = rule.lhs;
    for (std::size_t i = 0; i + lhs.size() <= w.size(); ++i) {
      if (!std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(i))) continue;
      Word pre(w.begin(), w.begin() + static_cast<long>(i));
      Word post(w.begin() + static_cast<long>(i + lhs.size()), w.end());
      Element r;
      for (const auto& [m, c] : rule.rhs.terms()) {
        Word mid = pre;
        auto wm = word(m);
        mid.insert(mid.end(), wm.begin(), wm.end());
        mid.insert(mid.end(), post.begin(), post.end());
        r += c * normal_form(mid);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Ambiguity> Presentation::check_local_confluence(int max_overlap) const {
  std::set<Word> words;
  for (const auto& r1 : rules_) {
    words.insert(r1.lhs);
    for (const auto& r2 : rules_) {
      const auto &a = r1.lhs, &b = r2.lhs;
      for (std::size_t k = 1; k < a.size() && k < b.size(); ++k) {
        if (!std::equal(a.end() - static_cast<long>(k), a.end(), b.begin())) continue;
        Word w = a;
        w.insert(w.end(), b.begin() + static_cast<long>(k), b.end());
        if (static_cast<int>(w.size()) <= max_overlap) words.insert(w);
      }
    }
  }
  std::vector<Ambiguity> out;
  for (const auto& w : words) {
    auto reds = one_step(w);
    for (std::size_t i = 1; i < reds.size(); ++i)
      if (!(reds[i] == reds[0])) {
        out.push_back({w, reds[0], reds[i]});
        break;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing and parsing

std::string Presentation::str(const Mono& m) const {
  std::string s;
  for (std::size_t g = 0; g < m.size(); ++g) {
    if (m[g] == 0) continue;
    if (!s.empty()) s += '*';
    s += gens_[g].name;
    if (m[g] != 1) s += '^' + std::to_string(m[g]);
  }
  return s.empty() ? "1" : s;
}

std::string Presentation::str(const Word& w) const {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += gens_[l.gen].name;
    if (l.sign < 0) s += "^-1";
  }
  return s.empty() ? "1" : s;
}

namespace {

// Coefficient text that can be juxtaposed with `*` without ambiguity.
std::string coef_factor(const Scalar& c) {
  std::string s = c.str();
  std::string body = s[0] == '-' ? s.substr(1) : s;
  bool simple = body.find_first_of("+-/") == std::string::npos;
  return simple ? s : "(" + s + ")";
}

}  // namespace

std::string Presentation::str(const Element& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : e.terms()) {
    std::string ms = str(m);
    std::string t;
    if (ms == "1") {
      t = coef_factor(c);
    } else if (c.is_one()) {
      t = ms;
    } else if ((-c).is_one()) {
      t = "-" + ms;
    } else {
      t = coef_factor(c) + "*" + ms;
    }
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

namespace {

class ElementParser {
 public:
  ElementParser(const Presentation& p, std::string_view s) : p_(p), s_(s) {}

  Element parse() {
    Element r = expr();
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

  Element constant(const Scalar& c) { return Element(p_.one(), c); }

  static std::optional<Scalar> as_scalar(const Element& e, const Mono& one) {
    if (e.is_zero()) return Scalar();
    if (e.terms().size() == 1 && e.terms().begin()->first == one) return e.terms().begin()->second;
    return std::nullopt;
  }

  Element expr() {
    Element r;
    bool first = true;
    while (true) {
      bool neg = false;
      if (eat('+')) {
      } else if (eat('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      Element t = term();
      if (neg) r -= t;
      else r += t;
      first = false;
    }
    return r;
  }

  Element term() {
    Element r = power();
    while (true) {
      if (eat('*')) {
        r = p_.multiply(r, power());
      } else if (eat('/')) {
        auto d = as_scalar(power(), p_.one());
        if (!d) fail("division by a non-scalar");
        r = (Scalar(1) / *d) * r;
      } else {
        break;
      }
    }
    return r;
  }

  Element power() {
    Element b = atom();
    if (!eat('^')) return b;
    skip();
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (neg) {
      if (auto c = as_scalar(b, p_.one())) return constant(c->pow(-e));
      if (b.terms().size() != 1) fail("negative power of a sum");
      const auto& [m, c] = *b.terms().begin();
      Word w = p_.word(m);
      for (const auto& l : w)
        if (!p_.gens()[l.gen].invertible) fail("negative power of a non-invertible generator");
      Word inv;
      for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->gen, -it->sign});
      b = (Scalar(1) / c) * p_.normal_form(inv);
    }
    Element r = constant(Scalar(1));
    for (int k = 0; k < e; ++k) r = p_.multiply(r, b);
    return r;
  }

  Element atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (c == '(') {
      ++pos_;
      Element r = expr();
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
      return constant(Scalar(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto name = s_.substr(start, pos_ - start);
      int g = p_.gen_index(name);
      if (g >= 0) return Element(p_.gen_mono(g));
      return constant(Scalar::variable(name));
    }
    fail("unexpected character");
  }

  const Presentation& p_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

Element Presentation::parse(std::string_view text) const { return ElementParser(*this, text).parse(); }

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  for (const auto& tok : split_ws(text)) {
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    int g = gen_index(name);
    if (g < 0) throw ParseError("unknown generator '" + name + "'");
    if (e < 0 && !gens_[g].invertible) throw ParseError("generator '" + name + "' is not invertible");
    for (int k = 0; k < std::abs(e); ++k) w.push_back({g, e > 0 ? 1 : -1});
  }
  return w;
}

std::shared_ptr<Presentation> parse_presentation(std::string_view text) {
  std::vector<std::string> axes;
  std::vector<Generator> gens;
  std::vector<std::pair<std::string, std::string>> rules;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "axes") {
      axes.assign(toks.begin() + 1, toks.end());
    } else if (toks[0] == "gen") {
      if (toks.size() < 3 || toks[2] != "deg") throw ParseError("expected: gen <name> deg <d...> [invertible]");
      Generator g{toks[1], {}, false};
      for (std::size_t i = 3; i < toks.size(); ++i) {
        if (toks[i] == "invertible") g.invertible = true;
        else g.degree.push_back(std::stoi(toks[i]));
      }
      gens.push_back(std::move(g));
    } else if (toks[0] == "rule") {
      auto arrow = line.find("->");
      if (arrow == std::string::npos) throw ParseError("rule without '->'");
      auto lhs_start = line.find("rule") + 4;
      rules.emplace_back(line.substr(lhs_start, arrow - lhs_start), line.substr(arrow + 2));
    } else {
      throw ParseError("unknown directive '" + toks[0] + "'");
    }
  }
  auto p = std::make_shared<Presentation>(axes, gens);
  for (const auto& [l, r] : rules) p->add_rule(p->parse_word(l), p->parse(r));
  return p;
}

// ---------------------------------------------------------------------------
// Characters

namespace {

std::optional<Scalar> eval_word(const Character& kappa, const Word& w) {
  Scalar r(1);
  for (const auto& l : w) {
    auto it = kappa.find(l);
    if (it == kappa.end()) return std::nullopt;
    r *= it->second;
  }
  return r;
}

}  // namespace

Scalar apply_character(const Character& kappa, const Presentation& p, const Element& e) {
  Scalar r;
  for (const auto& [m, c] : e.terms()) {
    auto v = eval_word(kappa, p.word(m));
    if (!v) throw ConfigInvalid("character undefined on " + p.str(m));
    r += c * *v;
  }
  return r;
}

CharacterVerdict check_character(const Character& kappa, const Presentation& p) {
  CharacterVerdict v;
  for (const auto& rule : p.rules()) {
    auto lhs = eval_word(kappa, rule.lhs);
    if (!lhs) {
      v.ok = false;
      v.failures.push_back("undefined on " + p.str(rule.lhs));
      continue;
    }
    Scalar rhs;
    bool defined = true;
    for (const auto& [m, c] : rule.rhs.terms()) {
      auto x = eval_word(kappa, p.word(m));
      if (!x) {
        defined = false;
        break;
      }
      rhs += c * *x;
    }
    if (!defined) {
      v.ok = false;
      v.failures.push_back("undefined on rhs of " + p.str(rule.lhs));
    } else if (!(*lhs == rhs)) {
      v.ok = false;
      v.failures.push_back(p.str(rule.lhs) + ": " + lhs->str() + " != " + rhs.str());
    }
  }
  return v;
}

}  // namespace psb
