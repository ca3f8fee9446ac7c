#pragma once

// Weighted configurations of m points on P^n, their stability criterion,
// the hypersimplex wall system, and the Gelfand-MacPherson comparison with
// the torus engine on Pluecker weights.

#include <vector>

#include "vgit/gitcore.hpp"

namespace vgit::pconf {

using geom::QHyperplane;
using git::Stability;
using git::WeightConfiguration;

struct PointConfig {
  std::size_t n = 0;
  std::vector<QVector> points;   // homogeneous coordinates, length n+1, nonzero

  PointConfig(std::size_t n, std::vector<QVector> points);
  std::size_t size() const { return points.size(); }
};

/// Positive integer weights, one per point.
using KVector = std::vector<Integer>;

Stability is_semistable(const PointConfig& p, const KVector& k);

/// (n+1) * max k <= sum k.
bool nonempty_ss(const KVector& k, std::size_t n);

struct HypersimplexModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<QVector> vertices;         // indicator vectors of (n+1)-subsets, lexicographic
  std::vector<QHyperplane> walls;        // config_walls(n, m)
};

HypersimplexModel hypersimplex(std::size_t n, std::size_t m);

/// Hyperplanes (n+1) sum_I x = (d+1) sum x through the origin of Q^m that
/// meet the relative interior of the hypersimplex, canonical and sorted.
std::vector<QHyperplane> config_walls(std::size_t n, std::size_t m);

/// Pluecker weights: indicator vectors of (n+1)-subsets in lexicographic order.
WeightConfiguration gm_weights(std::size_t n, std::size_t m);

// The diagonal of (C*)^m acts trivially on the Grassmannian, so the
// Pluecker weights sit in the hyperplane sum x = n+1. Dropping the last
// coordinate identifies that hyperplane with Q^(m-1) unimodularly.
QVector to_chart(const QVector& x);
WeightConfiguration chart(const WeightConfiguration& w);
/// Image in the chart of the homogeneous hyperplane a.x = 0 restricted to sum x = n+1.
QHyperplane chart_hyperplane(const QHyperplane& h, std::size_t n);

/// The linearization (p = k, d = sum k / (n+1)).
git::LinearizationClass config_linearization(const KVector& k, std::size_t n);

/// Maximal minors of the point matrix, keyed by the gm_weights index.
/// Throws DomainError("NotSpanning").
git::ProjPoint map_config_to_pluecker(const PointConfig& p);

/// Stability of the Pluecker point under the torus engine, in the chart.
Stability classify_via_pluecker(const PointConfig& p, const KVector& k);
/// Same, reusing chart(gm_weights(n, m)).
Stability classify_via_pluecker(const PointConfig& p, const KVector& k, const WeightConfiguration& charted);

struct RegionMatch {
  QVector witness;              // chart coordinates
  std::size_t gm_region = 0;
  bool signature_match = false;
  std::size_t configs_checked = 0;
  std::size_t configs_agreeing = 0;
};

struct GmReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<QHyperplane> gm_walls;       // interior walls, chart coordinates
  std::vector<QHyperplane> config_walls;   // mapped config walls, chart coordinates
  std::size_t gm_regions = 0;
  std::size_t config_regions = 0;
  std::size_t gm_chambers = 0;
  std::vector<RegionMatch> regions;
  bool walls_match = false;
  bool match = false;
};

/// Compares the two routes; `max_subsets` caps C(m, n+1).
GmReport gm_crosscheck(std::size_t n, std::size_t m, std::uint64_t max_subsets = 3003);

/// Configurations used by the cross-check: points from a fixed generic
/// family, glued along every set partition with at least n+1 blocks.
std::vector<PointConfig> coincidence_configs(std::size_t n, std::size_t m);

}  // namespace vgit::pconf
