#include "vgit/lp.hpp"

#include <optional>

#include "vgit/errors.hpp"

namespace vgit::lp {

namespace {

// Tableau rows 0..m-1 are constraints, row m is the reduced-cost row
// z_j = c_B B^-1 A_j - c_j. The last column is the right-hand side.
struct Tableau {
  QMatrix t;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;  // structural + artificial columns, excluding rhs

  std::size_t rows() const { return basis.size(); }
  Rational& rhs(std::size_t r) { return t[r][cols]; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = 1 / t[row][col];
    for (auto& x : t[row]) x *= inv;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r == row || t[r][col] == 0) continue;
      const Rational f = t[r][col];
      for (std::size_t j = 0; j <= cols; ++j) t[r][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Runs Bland's rule over columns [0, usable). Returns false when unbounded.
  bool optimize(std::size_t usable) {
    const std::size_t zrow = rows();
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < usable; ++j) {
        if (t[zrow][j] < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (t[r][*entering] <= 0) continue;
        Rational ratio = t[r][cols] / t[r][*entering];
        if (!leaving || ratio < best || (ratio == best && basis[r] < basis[*leaving])) {
          leaving = r;
          best = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }
};

}  // namespace

Result maximize(const QMatrix& a, const QVector& b, const QVector& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw InputError("lp: rhs length mismatch");

  Tableau tab;
  tab.cols = n + m;
  tab.t.assign(m + 1, zeros(n + m + 1));
  tab.basis.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (a[r].size() != n) throw InputError("lp: row length mismatch");
    const bool flip = b[r] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[r][j] = flip ? Rational(-a[r][j]) : a[r][j];
    tab.t[r][n + r] = 1;
    tab.rhs(r) = flip ? Rational(-b[r]) : b[r];
    tab.basis[r] = n + r;
  }
  // Phase 1: maximize -sum(artificials).
  for (std::size_t j = 0; j <= tab.cols; ++j) {
    if (j >= n && j < n + m) continue;
    Rational s = 0;
    for (std::size_t r = 0; r < m; ++r) s -= tab.t[r][j];
    tab.t[m][j] = s;
  }
  tab.optimize(tab.cols);
  if (tab.t[m][tab.cols] != 0) return Result{Status::Infeasible, 0, {}};

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basis[r] < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n; ++j) {
      if (tab.t[r][j] != 0) {
        col = j;
        break;
      }
    }
    if (col) {
      tab.pivot(r, *col);
      ++r;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(r));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  // Phase 2 reduced costs for the real objective.
  const std::size_t zrow = tab.rows();
  for (std::size_t j = 0; j <= tab.cols; ++j) {
    Rational s = j < n ? Rational(-c[j]) : Rational(0);
    for (std::size_t r = 0; r < zrow; ++r) {
      if (tab.basis[r] < n && tab.t[r][j] != 0) s += c[tab.basis[r]] * tab.t[r][j];
    }
    tab.t[zrow][j] = s;
  }
  if (!tab.optimize(n)) return Result{Status::Unbounded, 0, {}};

  Result res;
  res.status = Status::Optimal;
  res.x = zeros(n);
  for (std::size_t r = 0; r < zrow; ++r) res.x[tab.basis[r]] = tab.t[r][tab.cols];
  res.value = dot(c, res.x);
  return res;
}

}  // namespace vgit::lp
