#pragma once

// Presented noncommutative algebras: generators with gradings, rewrite rules,
// normal-ordered monomials, degree windows and algebra characters.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psibundle/scalar.hpp"

namespace psb {

/// Normal monomial: exponent vector aligned with the generator order.
using Mono = std::vector<int>;

/// Degree-lexicographic order: total |exponent| first, then lexicographic.
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

/// Finite Scalar-weighted sum of normal monomials, zero terms absent.
class Element {
 public:
  using Map = std::map<Mono, Scalar, MonoLess>;

  Element() = default;
  explicit Element(const Mono& m, Scalar c = Scalar(1));

  void add(const Mono& m, const Scalar& c);
  bool is_zero() const { return t_.empty(); }
  const Map& terms() const { return t_; }
  Scalar coeff(const Mono& m) const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& c, const Element& e);
  bool operator==(const Element& o) const { return t_ == o.t_; }

 private:
  Map t_;
};

struct Generator {
  std::string name;
  std::vector<int> degree;  // one entry per grading axis
  bool invertible = false;
};

/// A generator or the inverse of an invertible generator.
struct Letter {
  int gen = 0;
  int sign = 1;
  auto operator<=>(const Letter&) const = default;
};
using Word = std::vector<Letter>;

struct Rule {
  Word lhs;
  Element rhs;
};

/// Per-axis degree bounds plus an optional bound on the total length Σ|e|.
struct DegreeWindow {
  std::vector<std::pair<int, int>> bounds;  // [lo, hi] per axis
  std::optional<int> max_length;

  bool contains(const std::vector<int>& degree, const Mono& m) const;
};

/// Two different normal forms reachable from one word.
struct Ambiguity {
  Word word;
  Element first;
  Element second;
};

class Presentation {
 public:
  Presentation(std::vector<std::string> axes, std::vector<Generator> gens);

  /// Adds lhs → rhs. The inverse rules g g⁻¹ → 1, g⁻¹ g → 1 are built in.
  /// Throws ConfigInvalid when the rule is not degree-homogeneous.
  void add_rule(const Word& lhs, const Element& rhs);

  const std::vector<std::string>& axes() const { return axes_; }
  const std::vector<Generator>& gens() const { return gens_; }
  const std::vector<Rule>& rules() const { return rules_; }
  int gen_index(std::string_view name) const;  // -1 when absent
  std::size_t ngens() const { return gens_.size(); }

  Mono one() const { return Mono(gens_.size(), 0); }
  Mono gen_mono(int g, int e = 1) const;
  Mono mono(std::initializer_list<std::pair<std::string_view, int>> exps) const;
  Word word(const Mono& m) const;
  std::vector<int> degree(const Mono& m) const;
  std::vector<int> degree(const Word& w) const;
  bool is_normal(const Mono& m) const;

  /// Fixed point of rewriting. Throws RewriteBudgetExceeded.
  Element normal_form(const Word& w) const;
  Element normal_form(const Element& e) const { return e; }
  Element multiply(const Mono& a, const Mono& b) const;
  Element multiply(const Element& a, const Element& b) const;
  /// As multiply, throwing DegreeOverflow when an input or output leaves w.
  Element multiply(const Element& a, const Element& b, const DegreeWindow& w) const;

  /// All normal monomials inside the window, in MonoLess order.
  std::vector<Mono> enumerate(const DegreeWindow& w) const;

  /// Overlap and inclusion words of the rules up to the given length whose
  /// one-step reductions do not all reach the same normal form.
  std::vector<Ambiguity> check_local_confluence(int max_overlap) const;

  std::string str(const Mono& m) const;
  std::string str(const Element& e) const;
  std::string str(const Word& w) const;
  /// Parses `coef*gen^e*...` sums; unknown identifiers are scalar indeterminates.
  Element parse(std::string_view text) const;
  /// Parses a generator word such as `y x^-1`.
  Word parse_word(std::string_view text) const;

  std::size_t budget = 200000;

 private:
  Element times_letter(const Mono& m, Letter l, std::size_t& steps) const;
  Element times_mono(const Mono& m, const Mono& b, std::size_t& steps) const;
  Element reduce_word(const Word& w, std::size_t& steps) const;
  std::optional<Mono> sorted_mono(const Word& w) const;
  std::vector<Element> one_step(const Word& w) const;

  std::vector<std::string> axes_;
  std::vector<Generator> gens_;
  std::vector<Rule> rules_;
  std::map<Word, std::size_t> rule_index_;  // first rule per lhs
  std::size_t max_lhs_ = 2;

  mutable std::mutex mu_;
  mutable std::map<std::pair<Mono, Letter>, Element> letter_cache_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

/// Values of an algebra map P → k on letters.
using Character = std::map<Letter, Scalar>;

struct CharacterVerdict {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Evaluates κ multiplicatively on both sides of every rule, including the
/// built-in inverse rules.
CharacterVerdict check_character(const Character& kappa, const Presentation& p);
/// κ on an element; throws ConfigInvalid for letters without a value.
Scalar apply_character(const Character& kappa, const Presentation& p, const Element& e);

/// Builds a presentation from the textual grammar:
///   axes a b
///   gen x deg 1 0 invertible
///   rule y x -> q*x*y
std::shared_ptr<Presentation> parse_presentation(std::string_view text);

}  // namespace psb
