#include "psibundle/linalg.hpp"

namespace psb {

namespace {

// Row with the cheapest nonzero entry in column c among rows [from, end).
std::optional<std::size_t> pick_pivot(const Matrix& m, std::size_t from, std::size_t c) {
  std::optional<std::size_t> best;
  std::size_t best_cost = 0;
  for (std::size_t i = from; i < m.size(); ++i) {
    if (m[i][c].is_zero()) continue;
    std::size_t cost = m[i][c].complexity();
    if (!best || cost < best_cost) {
      best = i;
      best_cost = cost;
    }
  }
  return best;
}

}  // namespace

Rref rref(Matrix m) {
  Rref out;
  if (m.empty()) return out;
  std::size_t ncols = m[0].size(), row = 0;
  for (std::size_t c = 0; c < ncols && row < m.size(); ++c) {
    auto p = pick_pivot(m, row, c);
    if (!p) continue;
    std::swap(m[row], m[*p]);
    Scalar inv = Scalar(1) / m[row][c];
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!m[row][j].is_zero()) m[i][j] -= f * m[row][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Scalar determinant(Matrix m) {
  std::size_t n = m.size();
  for (const auto& r : m)
    if (r.size() != n) throw ConfigInvalid("determinant of a non-square matrix");
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    auto p = pick_pivot(m, c, c);
    if (!p) return Scalar();
    if (*p != c) {
      std::swap(m[c], m[*p]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = Scalar(1) / m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m[c][j].is_zero()) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

LinearSolution solve_linear(const Matrix& rows, const Vec& rhs) {
  if (rows.size() != rhs.size()) throw ConfigInvalid("solve_linear: dimension mismatch");
  std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  Matrix aug = rows;
  for (std::size_t i = 0; i < aug.size(); ++i) {
    if (aug[i].size() != ncols) throw ConfigInvalid("solve_linear: ragged matrix");
    aug[i].push_back(rhs[i]);
  }
  Rref r = rref(std::move(aug));
  LinearSolution out;
  out.solution.assign(ncols, Scalar());
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    auto c = static_cast<std::size_t>(r.pivots[i]);
    if (c == ncols) throw Inconsistent("system has no solution");
    is_pivot[c] = true;
    out.solution[c] = r.rows[i][ncols];
  }
  out.rank = r.pivots.size();
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec k(ncols, Scalar());
    k[f] = Scalar(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) k[static_cast<std::size_t>(r.pivots[i])] = -r.rows[i][f];
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::vector<Vec> kernel(const Matrix& rows) {
  return solve_linear(rows, Vec(rows.size(), Scalar())).kernel;
}

}  // namespace psb
