#pragma once

// Exact coefficient field Q(q, s, alpha, G...): reduced multivariate rational
// functions with integer-coefficient numerator and denominator.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psibundle/errors.hpp"

namespace psb {

using VarId = std::uint32_t;

/// Interns an indeterminate name. Thread-safe.
VarId var(std::string_view name);
const std::string& var_name(VarId id);

/// Commutative monomial: (variable, exponent > 0) pairs sorted by variable id.
struct PMono {
  std::vector<std::pair<VarId, int>> f;

  int degree() const;
  int exponent(VarId v) const;
  bool is_one() const { return f.empty(); }
  bool operator==(const PMono& o) const = default;
};

PMono operator*(const PMono& a, const PMono& b);

/// Graded lexicographic comparison (-1, 0, 1); a valid monomial order.
int compare(const PMono& a, const PMono& b);

struct PTerm {
  PMono m;
  mpz_class c;
};

/// Sparse polynomial over Z, terms sorted by descending monomial order.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpz_class& c);
  static Poly variable(VarId v, int exp = 1);
  static Poly from_terms(std::vector<PTerm> terms);  // combines and sorts

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_one() const;
  bool is_monomial() const { return t_.size() == 1; }
  const std::vector<PTerm>& terms() const { return t_; }
  const PTerm& lead() const { return t_.front(); }
  mpz_class content() const;
  std::vector<VarId> variables() const;
  int degree_in(VarId v) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpz_class& c) const;
  Poly times(const PMono& m) const;
  /// Exact division; throws std::logic_error when the division is not exact.
  Poly divexact(const Poly& d) const;
  Poly divexact(const mpz_class& c) const;
  bool operator==(const Poly& o) const;

  mpq_class evaluate(const std::map<VarId, mpq_class>& at) const;
  std::string str() const;

 private:
  std::vector<PTerm> t_;
};

/// gcd in Z[vars], normalised to a positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

/// Assignment of exact rationals to indeterminate names.
using Assignment = std::map<std::string, mpq_class>;

/// Element of the coefficient field in canonical form: gcd(num, den) = 1 over
/// Z[vars] and the leading coefficient of den is positive.
class Scalar {
 public:
  Scalar() : num_(), den_(mpz_class(1)) {}
  Scalar(long v) : num_(mpz_class(v)), den_(mpz_class(1)) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpz_class& v) : num_(v), den_(mpz_class(1)) {}
  explicit Scalar(const mpq_class& v);
  Scalar(Poly num, Poly den);  // canonicalises; throws DivisionByZero

  static Scalar variable(std::string_view name);
  static Scalar parse(std::string_view text);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant scalar; throws std::logic_error otherwise.
  mpq_class constant_value() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  Scalar pow(int e) const;

  /// Exact evaluation; throws UnassignedIndeterminate or DenominatorVanishes.
  mpq_class specialize(const Assignment& at) const;
  /// Replaces an indeterminate by a scalar.
  Scalar substitute(std::string_view name, const Scalar& value) const;
  std::vector<std::string> indeterminates() const;

  /// Canonical text: integer coefficients, `*`, `^`, single top-level `/`.
  std::string str() const;
  /// Number of terms plus total degree; used to pick cheap pivots.
  std::size_t complexity() const;

 private:
  struct Raw {};
  Scalar(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

/// The distinguished indeterminate q, or its specialized value while a
/// QSpecialization is alive on the calling thread.
const Scalar& q();

/// Replaces q by a rational constant in q() and qpow() on this thread for
/// the lifetime of the object. Used by the numeric pre-pass.
class QSpecialization {
 public:
  explicit QSpecialization(const mpq_class& value);
  ~QSpecialization();
  QSpecialization(const QSpecialization&) = delete;
  QSpecialization& operator=(const QSpecialization&) = delete;

 private:
  std::optional<Scalar> previous_;
};
/// q^e for any integer e.
Scalar qpow(long e);

/// [n]_q = 1 + q + ... + q^{n-1}.
Scalar q_int(int n);
/// [n]_q! with [0]_q! = 1.
Scalar q_factorial(int n);
/// q-binomial [n k] evaluated at `base`; zero when k < 0 or k > n.
Scalar q_binom(int n, int k, const Scalar& base);
inline Scalar q_binom(int n, int k) { return q_binom(n, k, q()); }

}  // namespace psb
