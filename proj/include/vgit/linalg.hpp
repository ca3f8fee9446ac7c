#pragma once

#include <optional>
#include <vector>

#include "vgit/rational.hpp"

namespace vgit {

/// Dense row-major rational matrix. Rows may be empty only when the matrix
/// has no columns.
using QMatrix = std::vector<QVector>;

struct RowEchelon {
  QMatrix reduced;                     // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;     // pivot column of each kept row
};

RowEchelon row_reduce(QMatrix m, std::size_t cols);

std::size_t rank(const QMatrix& m, std::size_t cols);

/// Basis of {x : m x = 0}. `cols` fixes the ambient dimension when m has no rows.
std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols);

/// Some solution of a x = b, or nullopt when the system is inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t cols);

/// Inverse of a square matrix; throws InputError when singular.
QMatrix inverse(const QMatrix& m);

Rational determinant(QMatrix m);

QVector multiply(const QMatrix& m, const QVector& v);

/// Rank of {p - p0 : p in points}; points must be nonempty.
std::size_t affine_rank(const std::vector<QVector>& points);

}  // namespace vgit
