#include "vgit/linalg.hpp"

#include <utility>

#include "vgit/errors.hpp"

namespace vgit {

RowEchelon row_reduce(QMatrix m, std::size_t cols) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[row][j];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m, std::size_t cols) { return row_reduce(m, cols).pivots.size(); }

std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols) {
  const RowEchelon e = row_reduce(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v = zeros(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols) {
  QMatrix aug = a;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  const RowEchelon e = row_reduce(std::move(aug), cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
  QVector x = zeros(cols);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced[r][cols];
  return x;
}

QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.size();
  QMatrix aug = m;
  for (std::size_t r = 0; r < n; ++r) {
    aug[r].resize(2 * n, Rational(0));
    aug[r][n + r] = 1;
  }
  const RowEchelon e = row_reduce(std::move(aug), 2 * n);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw InputError("singular matrix");
  QMatrix inv(n, QVector(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv[r][c] = e.reduced[r][n + c];
  }
  return inv;
}

Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

QVector multiply(const QMatrix& m, const QVector& v) {
  QVector out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r) out[r] = dot(m[r], v);
  return out;
}

std::size_t affine_rank(const std::vector<QVector>& points) {
  if (points.empty()) throw InputError("affine rank of an empty point set");
  QMatrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return rank(diffs, points[0].size());
}

}  // namespace vgit
