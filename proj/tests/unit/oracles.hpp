#pragma once

// Independent reference values for the unit tests. Nothing here calls the
// library routine it is compared against.

#include <map>

#include "psibundle/scalar.hpp"

namespace oracle {

using psb::Scalar;

inline Scalar power(const Scalar& base, int e) {
  Scalar r(1);
  const Scalar b = e < 0 ? Scalar(1) / base : base;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r = r * b;
  return r;
}

/// Gaussian binomial by the Pascal rule [n k] = [n−1 k−1] + b^k [n−1 k].
inline Scalar binom(int n, int k, const Scalar& b) {
  if (k < 0 || k > n) return Scalar(0);
  std::map<std::pair<int, int>, Scalar> t;
  for (int m = 0; m <= n; ++m)
    for (int j = 0; j <= m; ++j)
      t[{m, j}] = (j == 0 || j == m) ? Scalar(1) : t[{m - 1, j - 1}] + power(b, j) * t[{m - 1, j}];
  return t[{n, k}];
}

inline Scalar qv() { return Scalar::variable("q"); }
inline Scalar binom(int n, int k) { return binom(n, k, qv()); }

}  // namespace oracle
