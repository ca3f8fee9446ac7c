#include "vgit/crossing.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "vgit/errors.hpp"

namespace vgit::crossing {

using git::CellKind;
using git::StateSet;
using geom::QHyperplane;

namespace {

bool includes(const StateFamily& big, const StateFamily& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

StateFamily difference(const StateFamily& a, const StateFamily& b) {
  StateFamily out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

StateFamily intersection(const StateFamily& a, const StateFamily& b) {
  StateFamily out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace

RelevantPair relevant_chambers(const ChamberComplex& cc, std::size_t cell, const WeightConfiguration& w) {
  if (cell >= cc.cells.size()) throw InputError("cell index out of range");
  const CellDesc& f = cc.cells[cell];
  if (f.kind == CellKind::Chamber) throw DomainError("IsChamber", "cell is a chamber; there is no wall to cross");
  for (auto i : f.walls) {
    if (cc.walls[i].is_boundary) throw DomainError("BoundaryCell", "cell lies on the boundary of the ample cone");
  }
  if (f.dim + 1 != w.dim() || f.walls.size() != 1) {
    throw DomainError("NotCodimOne", "cell does not lie on a single codimension-one wall");
  }

  RelevantPair out;
  out.cell = cell;
  out.wall = f.walls.front();
  const QHyperplane& h = cc.walls[out.wall].hyperplane;
  const QVector& x = f.witness.normalized();

  // Step a quarter of the way to the nearest other constraint along the normal.
  std::optional<Rational> room;
  auto consider = [&](const QVector& a, const Rational& value) {
    const Rational rate = abs(dot(a, h.normal));
    if (rate == 0 || value == 0) return;
    const Rational t = abs(value) / rate;
    if (!room || t < *room) room = t;
  };
  for (const auto& other : cc.regions.hyperplanes) {
    if (!(other == h)) consider(other.normal, other.eval(x));
  }
  for (const auto& facet : cc.regions.bound_facets) consider(facet.a, facet.slack(x));
  const Rational step = room ? *room / 4 : Rational(1);

  const QVector up = add(x, scaled(h.normal, step));
  const QVector down = sub(x, scaled(h.normal, step));
  const auto up_region = cc.regions.locate(up);
  const auto down_region = cc.regions.locate(down);
  if (!up_region || !down_region) throw std::logic_error("crossing segment leaves the arrangement");
  out.plus = cc.region_chamber[*up_region];
  out.minus = cc.region_chamber[*down_region];
  if (out.plus == out.minus) throw std::logic_error("wall cell separates a chamber from itself");
  out.segment = {down, x, up};
  return out;
}

RelevantPair swapped(const RelevantPair& pair) {
  RelevantPair out = pair;
  std::swap(out.plus, out.minus);
  std::swap(out.segment[0], out.segment[2]);
  return out;
}

int counted_codim(const QVector& wall_point, const std::vector<std::size_t>& level_indices,
                  const WeightConfiguration& w) {
  // A generic point with support S sweeps an orbit stratum whose quotient
  // has dimension (|S| - 1) - affine_dim(S).
  auto quotient_dim = [&](const StateSet& s) {
    return static_cast<int>(s.size()) - 1 - static_cast<int>(w.affine_dim(s));
  };
  std::optional<int> top;
  for (const auto& s : git::stable_family(wall_point, w)) top = std::max(top.value_or(quotient_dim(s)), quotient_dim(s));
  if (!top) throw DomainError("NotCodimOne", "the wall point has no stable locus");
  std::uint64_t level_mask = 0;
  for (auto i : level_indices) level_mask |= std::uint64_t{1} << i;
  std::optional<int> pivotal;
  for (const auto& s : git::semistable_family(wall_point, w)) {
    if ((s.mask() & ~level_mask) != 0) continue;
    pivotal = std::max(pivotal.value_or(quotient_dim(s)), quotient_dim(s));
  }
  if (!pivotal) throw DomainError("NotCodimOne", "the wall point has no pivotal locus");
  return *top - *pivotal;
}

WallCrossing cross_wall(const ChamberComplex& cc, const RelevantPair& pair, const WeightConfiguration& w) {
  if (pair.cell >= cc.cells.size() || pair.plus >= cc.chambers.size() || pair.minus >= cc.chambers.size()) {
    throw InputError("crossing indices out of range");
  }
  const CellDesc& f = cc.cells[pair.cell];
  const QHyperplane& h = cc.walls.at(pair.wall).hyperplane;
  const QVector& x = f.witness.normalized();
  if (h.eval(x) != 0) throw InputError("cell does not lie on the wall");
  const int orient = h.side(pair.segment[2]);
  if (orient == 0 || h.side(pair.segment[0]) != -orient) throw InputError("segment does not cross the wall");

  WallCrossing out;
  out.pair = pair;

  FlipComponent comp;
  comp.lambda = OneParamSubgroup(scaled(h.normal, orient));
  comp.level = h.offset * orient;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational off = comp.lambda.pairing(w.weight(i)) - comp.level;
    if (off == 0) {
      comp.level_indices.push_back(i);
    } else if (off > 0) {
      comp.plus_indices.push_back(i);
      comp.plus_weights.push_back(off);
    } else {
      comp.minus_indices.push_back(i);
      comp.minus_weights.push_back(-off);
    }
  }
  std::sort(comp.plus_weights.begin(), comp.plus_weights.end());
  std::sort(comp.minus_weights.begin(), comp.minus_weights.end());
  if (comp.level_indices.empty() || comp.plus_indices.empty() || comp.minus_indices.empty()) {
    throw DomainError("NotCodimOne", "wall level set does not separate the weights");
  }

  std::uint64_t level_mask = 0;
  for (auto i : comp.level_indices) level_mask |= std::uint64_t{1} << i;
  for (const auto& s : f.signature) {
    if ((s.mask() & ~level_mask) != 0) continue;
    if (git::stabilizer_dim(s, w) != 1) {
      throw DomainError("NotTrulyFaithful", "pivotal state set has a stabilizer of dimension other than one");
    }
    comp.pivotal_states.push_back(s);
  }

  // The fiber over the wall on the plus side is the weighted projective
  // space on the plus-side weights, and symmetrically.
  comp.d_plus = static_cast<int>(comp.plus_indices.size()) - 1;
  comp.d_minus = static_cast<int>(comp.minus_indices.size()) - 1;
  comp.codim = counted_codim(x, comp.level_indices, w);
  if (comp.d_plus + comp.d_minus + 1 != comp.codim) throw std::logic_error("flip dimension identity fails");
  out.components.push_back(std::move(comp));

  out.plus_report = ss_inclusions(cc, pair.cell, pair.plus, w);
  out.minus_report = ss_inclusions(cc, pair.cell, pair.minus, w);
  const StateFamily stable_f = git::stable_family(x, w);
  const StateFamily stable_p = git::stable_family(cc.chambers[pair.plus].witness.normalized(), w);
  const StateFamily stable_m = git::stable_family(cc.chambers[pair.minus].witness.normalized(), w);
  out.stable_intersection = stable_f == intersection(stable_p, stable_m);
  out.stable_union = includes(f.signature, stable_p) && includes(f.signature, stable_m);
  return out;
}

WallCrossing cross_wall(const ChamberComplex& cc, std::size_t cell, const WeightConfiguration& w) {
  return cross_wall(cc, relevant_chambers(cc, cell, w), w);
}

InclusionReport ss_inclusions(const ChamberComplex& cc, std::size_t cell, std::size_t chamber_cell,
                              const WeightConfiguration& w) {
  if (cell >= cc.cells.size() || chamber_cell >= cc.cells.size()) throw InputError("cell index out of range");
  const CellDesc& f = cc.cells[cell];
  const CellDesc& c = cc.cells[chamber_cell];

  // incidences are sorted, so the faces above a given face form one run
  auto in_c = [&](std::size_t face) { return std::binary_search(c.faces.begin(), c.faces.end(), face); };
  bool touches = false;
  for (auto face : f.faces) {
    if (in_c(face)) touches = true;
    auto it = std::lower_bound(cc.faces.incidences.begin(), cc.faces.incidences.end(), std::pair<std::size_t, std::size_t>{face, 0});
    for (; !touches && it != cc.faces.incidences.end() && it->first == face; ++it) touches = in_c(it->second);
    if (touches) break;
  }
  if (!touches) throw DomainError("NotInClosure", "cell is not in the closure of the chamber");

  InclusionReport out;
  const QVector& fx = f.witness.normalized();
  const QVector& cx = c.witness.normalized();
  const StateFamily stable_f = git::stable_family(fx, w);
  const StateFamily stable_c = git::stable_family(cx, w);
  out.semistable_inclusion = includes(f.signature, c.signature);
  out.stable_inclusion = includes(stable_c, stable_f);
  out.semistable_difference = difference(f.signature, c.signature);
  out.stable_difference = difference(stable_c, stable_f);
  return out;
}

}  // namespace vgit::crossing
