#include "vgit/exactgeom.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "vgit/combinatorics.hpp"
#include "vgit/errors.hpp"
#include "vgit/lp.hpp"

namespace vgit::geom {

// ---------------------------------------------------------------------------
// GramForm

GramForm::GramForm(QMatrix matrix) : matrix_(std::move(matrix)) {
  const std::size_t n = matrix_.size();
  if (n == 0) throw InputError("gram form must have positive dimension");
  identity_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i].size() != n) throw InputError("gram form must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix_[i][j] != matrix_[j][i]) throw InputError("gram form must be symmetric");
      if (matrix_[i][j] != (i == j ? 1 : 0)) identity_ = false;
    }
  }
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix lead(k, QVector(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = matrix_[i][j];
    }
    if (determinant(std::move(lead)) <= 0) throw InputError("gram form must be positive definite");
  }
  inverse_ = vgit::inverse(matrix_);
}

GramForm GramForm::identity(std::size_t dim) {
  QMatrix m(dim, zeros(dim));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1;
  return GramForm(std::move(m));
}

Rational GramForm::inner(const QVector& a, const QVector& b) const {
  if (identity_) return dot(a, b);
  return dot(a, multiply(matrix_, b));
}

Rational GramForm::dual_norm2(const QVector& covector) const {
  if (identity_) return dot(covector, covector);
  return dot(covector, multiply(inverse_, covector));
}

QVector GramForm::lower(const QVector& v) const {
  if (identity_) return v;
  return multiply(matrix_, v);
}

// ---------------------------------------------------------------------------
// QHyperplane

QHyperplane QHyperplane::from_equation(const QVector& normal, const Rational& offset) {
  if (is_zero(normal)) throw InputError("hyperplane normal must be nonzero");
  // Scale so the normal becomes primitive integral, then fix the sign.
  const QVector prim = primitive_direction(normal);
  std::size_t lead = 0;
  while (prim[lead] == 0) ++lead;
  const Rational factor = prim[lead] / normal[lead];
  QHyperplane h{prim, offset * factor};
  if (h.normal[lead] < 0) {
    for (auto& x : h.normal) x = -x;
    h.offset = -h.offset;
  }
  return h;
}

// ---------------------------------------------------------------------------
// QPolytope

QPolytope::QPolytope(std::vector<QVector> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw InputError("polytope needs at least one generator");
  const std::size_t d = generators_.front().size();
  if (d == 0) throw InputError("polytope generators must have positive dimension");
  for (const auto& g : generators_) {
    if (g.size() != d) throw InputError("polytope generators have mixed dimensions");
  }
  affine_dim_ = affine_rank(generators_);
}

QPolytope QPolytope::translated(const QVector& shift) const {
  std::vector<QVector> g;
  g.reserve(generators_.size());
  for (const auto& v : generators_) g.push_back(add(v, shift));
  return QPolytope(std::move(g));
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

std::strong_ordering operator<=>(const SignedDistance& a, const SignedDistance& b) {
  if (a.sign != b.sign) return a.sign <=> b.sign;
  if (a.sign == 0 || a.squared == b.squared) return std::strong_ordering::equal;
  const bool a_larger_magnitude = a.squared > b.squared;
  if (a.sign > 0) return a_larger_magnitude ? std::strong_ordering::greater : std::strong_ordering::less;
  return a_larger_magnitude ? std::strong_ordering::less : std::strong_ordering::greater;
}

namespace {

std::vector<QVector> unique_points(const std::vector<QVector>& pts) {
  std::vector<QVector> out = pts;
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Membership hull_membership(const QVector& p, const QPolytope& poly) {
  if (p.size() != poly.dim()) throw InputError("hull_membership: dimension mismatch");
  const std::vector<QVector> gens = unique_points(poly.generators());
  const std::size_t k = gens.size();
  const std::size_t d = p.size();
  // Variables: lambda_0..lambda_{k-1}, t, s_0..s_{k-1}; maximize t.
  const std::size_t nvars = 2 * k + 1;
  QMatrix a;
  QVector b;
  for (std::size_t row = 0; row < d; ++row) {
    QVector r = zeros(nvars);
    for (std::size_t i = 0; i < k; ++i) r[i] = gens[i][row];
    a.push_back(std::move(r));
    b.push_back(p[row]);
  }
  {
    QVector r = zeros(nvars);
    for (std::size_t i = 0; i < k; ++i) r[i] = 1;
    a.push_back(std::move(r));
    b.emplace_back(1);
  }
  for (std::size_t i = 0; i < k; ++i) {
    QVector r = zeros(nvars);
    r[i] = 1;
    r[k] = -1;
    r[k + 1 + i] = -1;
    a.push_back(std::move(r));
    b.emplace_back(0);
  }
  QVector c = zeros(nvars);
  c[k] = 1;
  const lp::Result res = lp::maximize(a, b, c);
  if (res.status == lp::Status::Infeasible) return Membership::Outside;
  if (res.status != lp::Status::Optimal) throw std::logic_error("hull_membership: unbounded LP");
  if (res.value > 0 && poly.full_dimensional()) return Membership::Interior;
  return Membership::Boundary;
}

std::size_t affine_dim(const std::vector<QVector>& points) {
  if (points.empty()) throw InputError("affine_dim of an empty point set");
  for (const auto& p : points) {
    if (p.size() != points.front().size()) throw InputError("affine_dim: mixed dimensions");
  }
  return affine_rank(points);
}

// ---------------------------------------------------------------------------
// Closest point (Wolfe's minimum-norm-point iteration, exact).

namespace {

// Affine minimizer of the norm over aff(S): weights alpha with sum 1.
std::vector<Rational> affine_minimizer(const std::vector<QVector>& pts, const std::vector<std::size_t>& s,
                                       const GramForm& gram) {
  const std::size_t k = s.size();
  QMatrix a(k + 1, zeros(k + 1));
  QVector rhs = zeros(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      a[i][j] = gram.inner(pts[s[i]], pts[s[j]]);
      a[j][i] = a[i][j];
    }
    a[i][k] = 1;
    a[k][i] = 1;
  }
  rhs[k] = 1;
  auto sol = solve(a, rhs, k + 1);
  if (!sol) throw std::logic_error("closest_point: affinely dependent corral");
  sol->resize(k);
  return *sol;
}

QVector combine(const std::vector<QVector>& pts, const std::vector<std::size_t>& s, const std::vector<Rational>& w) {
  QVector x = zeros(pts.front().size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (w[i] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += w[i] * pts[s[i]][j];
  }
  return x;
}

}  // namespace

ClosestPoint closest_point_certified(const QPolytope& poly, const GramForm& gram) {
  if (gram.dim() != poly.dim()) throw InputError("closest_point: gram dimension mismatch");
  const auto& pts = poly.generators();

  std::size_t start = 0;
  std::vector<Rational> norms(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    norms[i] = gram.norm2(pts[i]);
    if (norms[i] < norms[start]) start = i;
  }
  std::vector<std::size_t> corral{start};
  std::vector<Rational> lambda{Rational(1)};
  QVector x = pts[start];

  for (;;) {
    if (is_zero(x)) break;
    const Rational xx = gram.norm2(x);
    const QVector gx = gram.lower(x);
    std::size_t best = pts.size();
    Rational best_val;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Rational v = dot(gx, pts[i]);
      if (best == pts.size() || v < best_val) {
        best = i;
        best_val = std::move(v);
      }
    }
    if (best_val >= xx) break;
    corral.push_back(best);
    lambda.emplace_back(0);

    for (;;) {
      const std::vector<Rational> alpha = affine_minimizer(pts, corral, gram);
      bool all_positive = true;
      for (const auto& a : alpha) all_positive = all_positive && a > 0;
      if (all_positive) {
        lambda = alpha;
        x = combine(pts, corral, lambda);
        break;
      }
      Rational theta = 1;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] <= 0) {
          Rational t = lambda[i] / (lambda[i] - alpha[i]);
          if (t < theta) theta = t;
        }
      }
      std::vector<std::size_t> next_corral;
      std::vector<Rational> next_lambda;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        Rational l = theta * alpha[i] + (1 - theta) * lambda[i];
        if (l > 0) {
          next_corral.push_back(corral[i]);
          next_lambda.push_back(std::move(l));
        }
      }
      corral = std::move(next_corral);
      lambda = std::move(next_lambda);
      x = combine(pts, corral, lambda);
    }
  }

  ClosestPoint out;
  out.point = x;
  out.weights.assign(pts.size(), Rational(0));
  for (std::size_t i = 0; i < corral.size(); ++i) out.weights[corral[i]] += lambda[i];
  if (!verify_closest_point(poly, gram, out)) throw std::logic_error("closest_point: optimality certificate failed");
  return out;
}

QVector closest_point(const QPolytope& poly, const GramForm& gram) { return closest_point_certified(poly, gram).point; }

bool verify_closest_point(const QPolytope& poly, const GramForm& gram, const ClosestPoint& cp) {
  const auto& pts = poly.generators();
  if (cp.weights.size() != pts.size() || cp.point.size() != poly.dim()) return false;
  Rational total = 0;
  QVector recombined = zeros(poly.dim());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (cp.weights[i] < 0) return false;
    total += cp.weights[i];
    for (std::size_t j = 0; j < recombined.size(); ++j) recombined[j] += cp.weights[i] * pts[i][j];
  }
  if (total != 1 || recombined != cp.point) return false;
  const Rational bb = gram.norm2(cp.point);
  const QVector gb = gram.lower(cp.point);
  for (const auto& v : pts) {
    if (dot(gb, v) < bb) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Facets and signed distance

std::vector<Halfspace> facets(const std::vector<QVector>& points) {
  const std::vector<QVector> pts = unique_points(points);
  const std::size_t d = pts.front().size();
  if (affine_rank(pts) != d) throw InputError("facets: point set is not full-dimensional");
  std::set<std::pair<QVector, Rational>> found;
  for_each_combination(pts.size(), d, [&](const std::vector<std::size_t>& idx) {
    QMatrix diffs;
    for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(sub(pts[idx[i]], pts[idx[0]]));
    const auto ns = nullspace(diffs, d);
    if (ns.size() != 1) return true;
    QVector a = primitive_direction(ns[0]);
    Rational b = dot(a, pts[idx[0]]);
    bool any_pos = false;
    bool any_neg = false;
    for (const auto& p : pts) {
      const int s = sign(dot(a, p) - b);
      any_pos = any_pos || s > 0;
      any_neg = any_neg || s < 0;
      if (any_pos && any_neg) return true;
    }
    if (any_pos) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    found.emplace(std::move(a), std::move(b));
    return true;
  });
  std::vector<Halfspace> out;
  out.reserve(found.size());
  for (const auto& [a, b] : found) out.push_back(Halfspace{a, b});
  return out;
}

Rational squared_distance_to_plane(const QVector& p, const QVector& a, const Rational& b, const GramForm& gram) {
  const Rational r = dot(a, p) - b;
  return r * r / gram.dual_norm2(a);
}

SignedDistance signed_distance(const QVector& p, const QPolytope& poly, const GramForm& gram) {
  if (p.size() != poly.dim() || gram.dim() != poly.dim()) throw InputError("signed_distance: dimension mismatch");
  switch (hull_membership(p, poly)) {
    case Membership::Boundary:
      return {0, 0};
    case Membership::Outside: {
      const QVector beta = closest_point(poly.translated(scaled(p, -1)), gram);
      return {1, gram.norm2(beta)};
    }
    case Membership::Interior: {
      std::optional<Rational> best;
      for (const auto& f : facets(poly.generators())) {
        Rational d2 = squared_distance_to_plane(p, f.a, f.b, gram);
        if (!best || d2 < *best) best = std::move(d2);
      }
      return {-1, *best};
    }
  }
  throw std::logic_error("signed_distance: unreachable");
}

}  // namespace vgit::geom
