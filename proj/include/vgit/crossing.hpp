#pragma once

// Crossing a codimension-one wall of the chamber complex: the chamber pair on
// either side, a straight witness segment through the wall cell, and the
// flip data read off from the weights on and off the wall's level set.

#include <array>
#include <vector>

#include "vgit/gitcore.hpp"

namespace vgit::crossing {

using git::CellDesc;
using git::ChamberComplex;
using git::OneParamSubgroup;
using git::StateFamily;
using git::WeightConfiguration;

struct RelevantPair {
  std::size_t cell = 0;
  std::size_t wall = 0;                 // index into ChamberComplex::walls
  std::size_t plus = 0;                 // chamber on the side of the wall's canonical normal
  std::size_t minus = 0;
  std::array<QVector, 3> segment;       // minus witness, cell witness, plus witness
};

/// Throws DomainError with code IsChamber, NotCodimOne or BoundaryCell.
RelevantPair relevant_chambers(const ChamberComplex& cc, std::size_t cell, const WeightConfiguration& w);

/// The same pair seen from the other side.
RelevantPair swapped(const RelevantPair& pair);

struct FlipComponent {
  OneParamSubgroup lambda{QVector{Rational(1)}};   // from the minus chamber toward the plus chamber
  Rational level;
  std::vector<std::size_t> level_indices;
  StateFamily pivotal_states;        // S on the level set whose hull holds the cell witness
  std::vector<std::size_t> plus_indices;
  std::vector<std::size_t> minus_indices;
  std::vector<Rational> plus_weights;    // <lambda, chi> - level, ascending
  std::vector<Rational> minus_weights;   // level - <lambda, chi>, ascending
  int d_plus = 0;
  int d_minus = 0;
  int codim = 0;                         // from state-set dimension counting
};

struct InclusionReport {
  bool semistable_inclusion = false;     // signature(C) within signature(F)
  bool stable_inclusion = false;         // stable(F) within stable(C)
  StateFamily semistable_difference;     // signature(F) minus signature(C)
  StateFamily stable_difference;         // stable(C) minus stable(F)
};

struct WallCrossing {
  RelevantPair pair;
  std::vector<FlipComponent> components;
  InclusionReport plus_report;
  InclusionReport minus_report;
  bool stable_intersection = false;      // stable(F) = stable(C+) and stable(C-) intersected
  bool stable_union = false;             // stable(C+) and stable(C-) inside signature(F)
};

/// Throws DomainError("NotTrulyFaithful") if a pivotal state set has a
/// stabilizer of dimension other than one, and std::logic_error if the flip
/// identity fails.
WallCrossing cross_wall(const ChamberComplex& cc, const RelevantPair& pair, const WeightConfiguration& w);
WallCrossing cross_wall(const ChamberComplex& cc, std::size_t cell, const WeightConfiguration& w);

/// Dimension of the quotient of the stable locus of l minus that of the
/// pivotal locus, counted over state sets. Independent of the flip data.
int counted_codim(const QVector& wall_point, const std::vector<std::size_t>& level_indices,
                  const WeightConfiguration& w);

/// Family-level inclusions between a cell and a chamber whose closure holds
/// it. Throws DomainError("NotInClosure") otherwise.
InclusionReport ss_inclusions(const ChamberComplex& cc, std::size_t cell, std::size_t chamber_cell,
                              const WeightConfiguration& w);

}  // namespace vgit::crossing
