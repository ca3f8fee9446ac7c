#pragma once

#include "vgit/linalg.hpp"

namespace vgit::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;  // objective at the optimum
  QVector x;       // an optimal vertex
};

/// Exact two-phase simplex with Bland's rule:
///   maximize c.x  subject to  a x = b,  x >= 0.
/// Terminates on every input; all arithmetic is exact.
Result maximize(const QMatrix& a, const QVector& b, const QVector& c);

}  // namespace vgit::lp
