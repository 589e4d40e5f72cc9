#pragma once

// Exact linear algebra over the Scalar field: dense elimination and an
// incremental sparse span keyed by arbitrary ordered keys.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "psibundle/scalar.hpp"

namespace psb {

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;

struct Rref {
  Matrix rows;              // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column of each row
};

Rref rref(Matrix m);
std::size_t rank(const Matrix& m);
Scalar determinant(Matrix m);

struct LinearSolution {
  Vec solution;             // free variables set to zero
  std::vector<Vec> kernel;  // one vector per free column, from the RREF
  std::size_t rank = 0;
};

/// Solves rows · x = rhs. Throws Inconsistent when there is no solution.
LinearSolution solve_linear(const Matrix& rows, const Vec& rhs);
/// Kernel basis of the matrix (columns as unknowns).
std::vector<Vec> kernel(const Matrix& rows);

/// Fully reduced echelon basis of a span of sparse vectors. Every pivot key
/// appears in exactly one basis vector.
template <class Map>
class Span {
 public:
  using Key = typename Map::key_type;

  Span() = default;
  /// Pivot ties (equal coefficient complexity) go to the lowest priority.
  explicit Span(std::function<std::size_t(const Key&)> priority) : priority_(std::move(priority)) {}

  /// Reduces v modulo the span; returns the remainder.
  Map reduce(Map v) const {
    for (const auto& [p, row] : rows_) {
      auto it = v.find(p);
      if (it == v.end()) continue;
      Scalar c = it->second;
      for (const auto& [k, x] : row) add(v, k, -(c * x));
    }
    return v;
  }

  /// Adds v; returns false when v was already in the span.
  bool add(const Map& v) {
    Map r = reduce(v);
    if (r.empty()) return false;
    const Key* best = nullptr;
    std::pair<std::size_t, std::size_t> best_cost{0, 0};
    for (const auto& [k, x] : r) {
      std::pair<std::size_t, std::size_t> cost{x.complexity(), priority_ ? priority_(k) : 0};
      if (!best || cost < best_cost) {
        best = &k;
        best_cost = cost;
      }
    }
    Key p = *best;
    Scalar inv = Scalar(1) / r.at(p);
    for (auto& [k, x] : r) x = x * inv;
    for (auto& [q, row] : rows_) {
      auto it = row.find(p);
      if (it == row.end()) continue;
      Scalar c = it->second;
      for (const auto& [k, x] : r) add(row, k, -(c * x));
    }
    rows_.emplace(p, std::move(r));
    return true;
  }

  bool contains(const Map& v) const { return reduce(v).empty(); }
  std::size_t dim() const { return rows_.size(); }
  const std::map<Key, Map, typename Map::key_compare>& rows() const { return rows_; }
  bool is_pivot(const Key& k) const { return rows_.count(k) > 0; }

 private:
  static void add(Map& v, const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }

  std::function<std::size_t(const Key&)> priority_;
  std::map<Key, Map, typename Map::key_compare> rows_;
};

}  // namespace psb
