#pragma once

// Per-configuration precomputation shared by every query on a
// WeightConfiguration. Hull membership of a point in conv(S) reduces to
// membership in one of the affinely independent subsets of S with at most
// span_dim+1 elements, so families are built by bitmask closure over those.

#include <mutex>
#include <unordered_map>

#include "vgit/errors.hpp"
#include "vgit/gitcore.hpp"

namespace vgit::git {

struct HullCache {
  // Affinely independent subset as a polyhedron: equations a.x = b for its
  // affine hull, then one inequality a.x <= b per barycentric coordinate.
  // Integer copy of a row a.x <= b scaled to clear denominators; only kept
  // when every entry is small enough for 128-bit accumulation.
  struct SmallRow {
    std::vector<std::int64_t> a;
    std::int64_t b = 0;
  };

  struct Simplex {
    std::uint64_t mask = 0;
    std::vector<geom::Halfspace> equations;
    std::vector<geom::Halfspace> inequalities;
    bool small = false;
    std::vector<SmallRow> small_equations;
    std::vector<SmallRow> small_inequalities;
  };

  // A query point; x / den when small.
  struct Point {
    const QVector* exact = nullptr;
    bool small = false;
    std::vector<std::int64_t> x;
    std::int64_t den = 1;
  };
  static Point prepare(const QVector& point);

  explicit HullCache(const WeightConfiguration& w);

  std::size_t affine_dim(const StateSet& s);
  const std::vector<geom::Halfspace>& facets(const StateSet& s);

  bool in_simplex(const Point& point, const Simplex& sx) const;
  bool contains(const QVector& point, std::uint64_t mask) const;
  std::vector<bool> signature(const QVector& point) const;
  StateFamily family(const QVector& point, bool stable_only);

  std::size_t dim;
  std::size_t span;
  std::vector<QVector> weights;
  std::vector<Simplex> simplices;
  std::vector<std::uint64_t> full_simplices;  // masks of (dim+1)-simplices

  // Hyperplanes spanned by weights, with the weights strictly on each side.
  struct SpannedPlane {
    QVector normal;
    Rational level;
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
  };
  std::vector<SpannedPlane> planes;
  std::vector<std::uint8_t> full_table;  // upward closure of full_simplices

  std::mutex mutex;
  std::unordered_map<std::uint64_t, std::size_t> dims;
  std::unordered_map<std::uint64_t, std::vector<geom::Halfspace>> facet_cache;
};

}  // namespace vgit::git
