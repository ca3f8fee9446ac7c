#pragma once

// Exact rational convex geometry: hull membership, affine dimension,
// closest points under a positive-definite form, signed distances, and
// region enumeration for hyperplane arrangements inside a polytope.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "vgit/linalg.hpp"
#include "vgit/rational.hpp"

namespace vgit::geom {

/// Symmetric positive-definite form on Q^n. Positive definiteness is checked
/// through the leading principal minors.
class GramForm {
 public:
  explicit GramForm(QMatrix matrix);
  static GramForm identity(std::size_t dim);

  std::size_t dim() const { return matrix_.size(); }
  const QMatrix& matrix() const { return matrix_; }
  const QMatrix& inverse() const { return inverse_; }
  bool is_identity() const { return identity_; }

  Rational inner(const QVector& a, const QVector& b) const;
  Rational norm2(const QVector& v) const { return inner(v, v); }
  /// Squared norm of a covector under the dual form (matrix inverse).
  Rational dual_norm2(const QVector& covector) const;
  /// g * v, the covector pairing like v under this form.
  QVector lower(const QVector& v) const;

 private:
  QMatrix matrix_;
  QMatrix inverse_;
  bool identity_ = false;
};

/// Affine hyperplane {x : normal . x = offset}, canonicalized so the normal
/// is a primitive integer vector whose first nonzero entry is positive.
struct QHyperplane {
  QVector normal;
  Rational offset;

  /// Canonical hyperplane through the given equation. Throws on a zero normal.
  static QHyperplane from_equation(const QVector& normal, const Rational& offset);

  Rational eval(const QVector& x) const { return dot(normal, x) - offset; }
  int side(const QVector& x) const { return sign(eval(x)); }

  friend bool operator==(const QHyperplane&, const QHyperplane&) = default;
  friend bool operator<(const QHyperplane& a, const QHyperplane& b) {
    if (a.normal != b.normal) return lex_less(a.normal, b.normal);
    return a.offset < b.offset;
  }
};

/// Closed halfspace {x : a . x <= b}.
struct Halfspace {
  QVector a;
  Rational b;
  bool contains(const QVector& x) const { return dot(a, x) <= b; }
  Rational slack(const QVector& x) const { return b - dot(a, x); }
};

/// V-represented polytope. Generators need not be extreme points.
class QPolytope {
 public:
  explicit QPolytope(std::vector<QVector> generators);

  std::size_t dim() const { return generators_.front().size(); }
  const std::vector<QVector>& generators() const { return generators_; }
  std::size_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim(); }

  QPolytope translated(const QVector& shift) const;

 private:
  std::vector<QVector> generators_;
  std::size_t affine_dim_ = 0;
};

enum class Membership { Interior, Boundary, Outside };
const char* to_string(Membership m);

/// Exact signed distance kept as (sign, squared magnitude).
struct SignedDistance {
  int sign = 0;
  Rational squared;

  friend bool operator==(const SignedDistance&, const SignedDistance&) = default;
  /// Total order of the underlying real value sign * sqrt(squared).
  friend std::strong_ordering operator<=>(const SignedDistance& a, const SignedDistance& b);
};

/// Decided by an exact LP: p lies in the relative interior of P iff some
/// strictly positive convex combination of the generators equals p.
Membership hull_membership(const QVector& p, const QPolytope& poly);

std::size_t affine_dim(const std::vector<QVector>& points);

struct ClosestPoint {
  QVector point;
  /// Convex weights over the polytope's generators reproducing `point`.
  std::vector<Rational> weights;
};

/// Minimum-norm point of the polytope under `gram` (exact Wolfe iteration).
/// The result is checked against the optimality conditions
/// <beta, v - beta>_g >= 0 for every generator v before returning.
ClosestPoint closest_point_certified(const QPolytope& poly, const GramForm& gram);
QVector closest_point(const QPolytope& poly, const GramForm& gram);

/// True iff `cp` is a convex combination of the generators satisfying the
/// first-order optimality conditions.
bool verify_closest_point(const QPolytope& poly, const GramForm& gram, const ClosestPoint& cp);

/// Facet inequalities a.x <= b of a full-dimensional point set, with
/// primitive integer outward normals, sorted canonically.
std::vector<Halfspace> facets(const std::vector<QVector>& points);

/// Sign -1 inside (distance to the boundary), 0 on the boundary, +1 outside
/// (distance to the polytope). Distances use `gram`.
SignedDistance signed_distance(const QVector& p, const QPolytope& poly, const GramForm& gram);

/// Squared gram-distance from p to the hyperplane a.x = b.
Rational squared_distance_to_plane(const QVector& p, const QVector& a, const Rational& b, const GramForm& gram);

// ---------------------------------------------------------------------------
// Hyperplane arrangements inside a full-dimensional polytope.

/// A convex polytope cell kept as vertices with incidence: `tight[v]` lists
/// the constraint ids active at vertex v. Constraint ids below the number of
/// bound facets refer to the bound; the rest are arrangement hyperplanes
/// offset by that count.
struct PolytopeCell {
  std::vector<QVector> vertices;
  std::vector<std::vector<std::uint32_t>> tight;
};

struct RegionComplex {
  struct Region {
    std::vector<int> signs;  // side of each hyperplane, never zero
    QVector witness;         // barycenter of the region's vertices
    PolytopeCell cell;
  };
  struct Adjacency {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t hyperplane = 0;
    QVector facet_witness;   // relative-interior point of the shared facet
  };

  std::vector<QHyperplane> hyperplanes;
  std::vector<Halfspace> bound_facets;
  std::vector<Region> regions;        // sorted by witness
  std::vector<Adjacency> adjacency;   // a < b, sorted

  /// Region whose sign vector matches the point, if the point is off every
  /// hyperplane and inside the bound.
  std::optional<std::size_t> locate(const QVector& x) const;
};

/// Open regions of bound minus the union of hyperplanes, each with an exact
/// interior witness, plus facet adjacency. Throws InputError when the bound
/// is not full-dimensional or dimensions disagree.
RegionComplex enumerate_regions(const std::vector<QHyperplane>& hyperplanes, const QPolytope& bound);

/// Closed faces of all regions, deduplicated across regions. Each face is
/// the closure of one relatively open cell of the arrangement restricted to
/// the bound (including cells on the bound's boundary).
struct FaceComplex {
  struct Face {
    std::vector<std::size_t> vertex_ids;  // sorted global vertex ids
    std::size_t dim = 0;
    QVector witness;                       // relative-interior point
  };
  std::vector<QVector> vertices;
  std::vector<Face> faces;
  /// Pairs (f, g) with face f contained in face g, f != g.
  std::vector<std::pair<std::size_t, std::size_t>> incidences;
  /// region index -> face index of the region itself
  std::vector<std::size_t> region_face;
};

FaceComplex enumerate_faces(const RegionComplex& complex);

}  // namespace vgit::geom
