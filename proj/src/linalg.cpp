#include "polyasym/linalg.hpp"

#include <cassert>
#include <cstddef>

namespace polyasym {

namespace {

// Row-reduce in place. Returns the pivot column of each pivot row, in order.
std::vector<std::size_t> row_echelon(QMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(QMatrix a) { return static_cast<int>(row_echelon(a).size()); }

std::optional<QVector> solve_linear(QMatrix a, QVector b) {
  const std::size_t rows = a.size();
  assert(rows == b.size());
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  // Augment with b, reduce, then read the solution off the pivots.
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  const std::vector<std::size_t> pivots = row_echelon(a);
  for (std::size_t k = 0; k < pivots.size(); ++k)
    if (pivots[k] == cols) return std::nullopt;  // pivot in the b column
  QVector x(cols, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = a[k][cols];
  return x;
}

std::vector<QVector> nullspace(QMatrix a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  const std::vector<std::size_t> pivots = row_echelon(a);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

int affine_rank(const std::vector<QVector>& points) {
  if (points.empty()) return -1;
  QMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    QVector d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

}  // namespace polyasym
