#pragma once

// Mixed tensors over P-monomials and C-indices, plus check verdicts.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "psibundle/presalg.hpp"
#include "psibundle/scalar.hpp"

namespace psb {

/// One slot value: a P exponent vector or a C index.
using Key = std::vector<int>;
using TKey = std::vector<Key>;
using CIdx = Key;

/// Finite Scalar-weighted sum of key tuples. `shape` names each slot kind,
/// e.g. "PC" for P⊗C or "PPC" for P⊗P⊗C.
struct Tensor {
  std::string shape;
  std::map<TKey, Scalar> terms;

  Tensor() = default;
  explicit Tensor(std::string s) : shape(std::move(s)) {}
  Tensor(std::string s, const TKey& k, const Scalar& c = Scalar(1));

  void add(const TKey& k, const Scalar& c);
  bool is_zero() const { return terms.empty(); }
  Scalar coeff(const TKey& k) const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Scalar& c, const Tensor& t);
  bool operator==(const Tensor& o) const { return terms == o.terms; }
};

/// Applies f to the sub-tuple at slots [pos, pos+width) of every term; f
/// returns a tensor of shape `out`. Results are memoized per call.
Tensor map_slots(const Tensor& t, std::size_t pos, std::size_t width, const std::string& out,
                 const std::function<Tensor(const TKey&)>& f);

/// Concatenates every term pair (a ⊗ b).
Tensor outer(const Tensor& a, const Tensor& b);
/// Concatenates term pairs multiplying the last slot of a with the first
/// slot of b in P (both must be P slots).
Tensor glue(const Tensor& a, const Tensor& b, const Presentation& p);
/// Multiplies adjacent P slots pos and pos+1.
Tensor multiply_slots(const Tensor& t, std::size_t pos, const Presentation& p);

Tensor from_element(const Element& e);
Element to_element(const Tensor& t);

/// Slot printers used for serialization.
struct Formatter {
  std::function<std::string(const Key&)> p;
  std::function<std::string(const Key&)> c;
};
std::string str(const Tensor& t, const Formatter& f);

/// A failing instance of a checked identity.
struct Counterexample {
  std::string at;
  std::string lhs;
  std::string rhs;
};

struct Verdict {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<Counterexample> failures;
  std::vector<std::string> notes;

  static constexpr std::size_t kMaxFailures = 16;

  void fail(std::string at, std::string lhs, std::string rhs);
  /// Counts one comparison; records a failure when a != b.
  template <class T>
  bool expect(const T& a, const T& b, const std::function<std::string()>& at,
              const std::function<std::string(const T&)>& show) {
    ++checked;
    if (a == b) return true;
    fail(at(), show(a), show(b));
    return false;
  }
  void merge(const Verdict& o);
};

}  // namespace psb
