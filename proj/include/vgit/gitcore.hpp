#pragma once

// Torus GIT on projective space P(V), V = sum of weight spaces. A
// linearization (p, d) is semistable for a state set S exactly when the
// normalized point p/d lies in conv(weights of S); everything here is
// combinatorics of those hulls.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vgit/exactgeom.hpp"

namespace vgit::git {

using geom::GramForm;
using geom::QHyperplane;
using geom::SignedDistance;

/// Largest supported number of weights (state sets are 64-bit masks).
inline constexpr std::size_t kMaxWeights = 62;

/// Nonempty set of weight indices.
class StateSet {
 public:
  StateSet() = default;
  static StateSet from_mask(std::uint64_t mask);
  static StateSet from_indices(const std::vector<std::size_t>& indices);

  std::uint64_t mask() const { return mask_; }
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  bool subset_of(const StateSet& other) const { return (mask_ & ~other.mask_) == 0; }
  std::vector<std::size_t> indices() const;

  friend bool operator==(const StateSet&, const StateSet&) = default;
  /// Lexicographic order of the sorted index lists.
  friend std::strong_ordering operator<=>(const StateSet& a, const StateSet& b);

 private:
  explicit StateSet(std::uint64_t mask) : mask_(mask) {}
  std::uint64_t mask_ = 0;
};

using StateFamily = std::vector<StateSet>;  // sorted, duplicate-free

struct HullCache;

class WeightConfiguration {
 public:
  WeightConfiguration(std::size_t dim, std::vector<QVector> weights, std::vector<std::string> labels = {},
                      std::optional<GramForm> gram = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  const QVector& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<QVector>& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const GramForm& gram() const { return gram_; }

  /// Affine dimension of all weights.
  std::size_t span_dim() const { return span_dim_; }
  bool spanning() const { return span_dim_ == dim_; }
  StateSet all() const;

  std::vector<QVector> points(const StateSet& s) const;
  geom::QPolytope polytope(const StateSet& s) const;

  // Cached per-state-set hull data; safe for concurrent use.
  std::size_t affine_dim(const StateSet& s) const;
  /// Facet inequalities of conv(S); only for full-dimensional S.
  const std::vector<geom::Halfspace>& facets(const StateSet& s) const;
  /// point in conv(S), decided through cached Caratheodory simplices.
  bool hull_contains(const QVector& point, const StateSet& s) const;
  /// Bit i is set iff point lies in the hull of the i-th affinely independent
  /// subset of at most span_dim()+1 weights. Equal keys mean equal
  /// semistable families.
  std::vector<bool> simplex_signature(const QVector& point) const;
  StateFamily semistable_states(const QVector& point) const;
  StateFamily stable_states(const QVector& point) const;

 private:
  std::size_t dim_;
  std::vector<QVector> weights_;
  std::vector<std::string> labels_;
  GramForm gram_;
  std::size_t span_dim_ = 0;
  std::shared_ptr<HullCache> cache_;
};

/// A point of P(V): nonzero coordinates keyed by weight index.
struct ProjPoint {
  std::map<std::size_t, Rational> entries;
};

/// Linearization class in character coordinates p and degree d > 0.
class LinearizationClass {
 public:
  LinearizationClass(QVector p, Rational d);
  /// The level-one representative (p/d, 1).
  static LinearizationClass at_level_one(const QVector& point) { return {point, Rational(1)}; }

  const QVector& p() const { return p_; }
  const Rational& d() const { return d_; }
  QVector normalized() const { return scaled(p_, 1 / d_); }

 private:
  QVector p_;
  Rational d_;
};

/// Primitive nonzero integer cocharacter.
class OneParamSubgroup {
 public:
  explicit OneParamSubgroup(QVector lambda);
  /// Primitive integer vector in the direction of a nonzero rational vector.
  static OneParamSubgroup along(const QVector& direction);

  const QVector& lambda() const { return lambda_; }
  Rational pairing(const QVector& chi) const { return dot(lambda_, chi); }
  OneParamSubgroup inverse() const { return OneParamSubgroup(scaled(lambda_, -1)); }

  friend bool operator==(const OneParamSubgroup&, const OneParamSubgroup&) = default;

 private:
  QVector lambda_;
};

enum class Stability { Stable, StrictlySemistable, Unstable };
const char* to_string(Stability s);

// --- state sets, mu, M, classification -------------------------------------

StateSet state_set(const ProjPoint& x, const WeightConfiguration& w);

/// min over chi in S of <lambda, d*chi - p>.
Rational mu(const StateSet& s, const OneParamSubgroup& lambda, const LinearizationClass& l,
            const WeightConfiguration& w);

/// Hilbert-Mumford function: d times the signed gram-distance from p/d to
/// the boundary of conv(S); reported as (sign, d^2 * distance^2).
SignedDistance bigM(const StateSet& s, const LinearizationClass& l, const WeightConfiguration& w);

Stability classify(const StateSet& s, const LinearizationClass& l, const WeightConfiguration& w);
Stability classify(const ProjPoint& x, const LinearizationClass& l, const WeightConfiguration& w);

/// Dimension of the stabilizer of a generic point with support S.
std::size_t stabilizer_dim(const StateSet& s, const WeightConfiguration& w);

// --- the G-ample cone -------------------------------------------------------

struct AmpleCone {
  std::vector<QVector> slice_vertices;    // extreme weights, sorted
  std::vector<QVector> cone_generators;   // slice vertices homogenized at level 1
  geom::QPolytope slice;
};

AmpleCone g_ample_cone(const WeightConfiguration& w);
bool is_effective(const LinearizationClass& l, const WeightConfiguration& w);

// --- families ---------------------------------------------------------------

/// All S with p in conv(S), sorted.
StateFamily semistable_family(const QVector& point, const WeightConfiguration& w);
/// All S with p in the ambient interior of conv(S), sorted.
StateFamily stable_family(const QVector& point, const WeightConfiguration& w);

/// The GIT class of l: its semistable family, or nullopt when l is not
/// G-effective.
std::optional<StateFamily> git_class(const LinearizationClass& l, const WeightConfiguration& w);

// --- walls, chambers, cells -------------------------------------------------

struct WallDesc {
  QHyperplane hyperplane;    // in the level-one slice
  StateFamily pieces;        // maximal degenerate state sets on the hyperplane
  bool is_boundary = false;  // hyperplane supports the slice polytope
};

/// Walls relative to the effective quotient torus: hyperplanes of the
/// weights' affine span spanned by weights.
std::vector<WallDesc> walls(const WeightConfiguration& w);

enum class CellKind { Chamber, WallCell };
const char* to_string(CellKind k);

struct CellDesc {
  CellKind kind = CellKind::Chamber;
  std::size_t dim = 0;
  LinearizationClass witness{QVector{Rational(0)}, Rational(1)};
  StateFamily signature;               // semistable family at the witness
  std::vector<std::size_t> walls;      // indices of walls whose pieces contain the cell
  std::vector<std::size_t> faces;      // arrangement faces forming the cell
};
using ChamberDesc = CellDesc;

/// Walls, arrangement, chambers and cells of a spanning configuration.
struct ChamberComplex {
  std::vector<WallDesc> walls;
  std::vector<std::size_t> interior_walls;   // indices into walls
  geom::RegionComplex regions;                // arrangement of interior wall hyperplanes
  geom::FaceComplex faces;
  std::vector<CellDesc> chambers;
  std::vector<std::size_t> region_chamber;    // region index -> chamber index
  std::vector<CellDesc> cells;                // chambers first, then lower cells
  std::vector<std::size_t> face_cell;         // face index -> cell index

  /// Index into `cells` of the cell containing a slice point, if any.
  std::optional<std::size_t> locate_cell(const QVector& point, const WeightConfiguration& w) const;
};

/// Throws DomainError("ImproperWall") when the configuration is not spanning.
ChamberComplex chamber_complex(const WeightConfiguration& w);
std::vector<ChamberDesc> chambers(const WeightConfiguration& w);
std::vector<CellDesc> cells(const WeightConfiguration& w);

// --- adapted subgroups, strata, limits --------------------------------------

struct Adapted {
  QVector beta;                 // closest point of conv(S) - p/d, level one
  OneParamSubgroup lambda;      // primitive direction of gram * beta
  SignedDistance M;
};

/// Throws DomainError("AdaptedUndefined") for semistable points.
Adapted adapted(const StateSet& s, const LinearizationClass& l, const WeightConfiguration& w);
Adapted adapted(const ProjPoint& x, const LinearizationClass& l, const WeightConfiguration& w);

struct Stratum {
  QVector beta;
  Rational d_squared;   // <beta, beta>_g at level one
  StateFamily member_states;
};

struct Stratification {
  std::vector<Stratum> strata;   // sorted by (d_squared, beta); beta = 0 first
  std::size_t assign(const StateSet& s) const;
  std::size_t assign(const ProjPoint& x, const WeightConfiguration& w) const;

  std::map<std::uint64_t, std::size_t> index;  // state-set mask -> stratum
};

Stratification stratify(const WeightConfiguration& w, const LinearizationClass& l);

/// Closest point of conv(S) - point under the configuration's gram form.
QVector stratum_vector(const StateSet& s, const QVector& point, const WeightConfiguration& w);

/// lim_{t->0} lambda(t) x: keeps the coordinates of minimal pairing.
ProjPoint limit_point(const ProjPoint& x, const OneParamSubgroup& lambda, const WeightConfiguration& w);

struct FixedComponent {
  Rational pairing;
  std::vector<std::size_t> indices;
};

/// Weight indices grouped by <lambda, chi>, ascending.
std::vector<FixedComponent> fixed_components(const OneParamSubgroup& lambda, const WeightConfiguration& w);

}  // namespace vgit::git
