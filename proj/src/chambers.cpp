#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "vgit/combinatorics.hpp"
#include "vgit/errors.hpp"
#include "vgit/gitcore.hpp"

namespace vgit::git {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Smaller root wins so component ids follow the input order.
  void join(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<QVector> distinct_weights(const WeightConfiguration& w) {
  std::vector<QVector> pts = w.weights();
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Key locating a slice point in the face complex: sides of the arrangement
// hyperplanes followed by which bound facets are tight.
std::vector<int> face_key(const QVector& x, const geom::RegionComplex& rc) {
  std::vector<int> key;
  key.reserve(rc.hyperplanes.size() + rc.bound_facets.size());
  for (const auto& h : rc.hyperplanes) key.push_back(h.side(x));
  for (const auto& f : rc.bound_facets) key.push_back(f.slack(x) == 0 ? 1 : 0);
  return key;
}

}  // namespace

std::vector<WallDesc> walls(const WeightConfiguration& w) {
  const std::size_t r = w.span_dim();
  if (r == 0) return {};
  const std::vector<QVector> pts = distinct_weights(w);
  const std::size_t n = w.dim();

  // Direction space of the affine span, as rows.
  QMatrix span_rows;
  for (std::size_t i = 1; i < pts.size(); ++i) span_rows.push_back(sub(pts[i], pts[0]));
  const QMatrix basis = row_reduce(span_rows, n).reduced;

  std::set<QHyperplane> planes;
  for_each_combination(pts.size(), r, [&](const std::vector<std::size_t>& idx) {
    // Normal a = basis^T c with a orthogonal to the subset's differences.
    QMatrix eqs;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      const QVector diff = sub(pts[idx[i]], pts[idx[0]]);
      QVector row(r);
      for (std::size_t k = 0; k < r; ++k) row[k] = dot(basis[k], diff);
      eqs.push_back(std::move(row));
    }
    if (rank(eqs, r) + 1 != r) return true;
    const QVector c = nullspace(eqs, r).front();
    QVector a = zeros(n);
    for (std::size_t k = 0; k < r; ++k) a = add(a, scaled(basis[k], c[k]));
    planes.insert(QHyperplane::from_equation(a, dot(a, pts[idx[0]])));
    return true;
  });

  std::vector<WallDesc> out;
  for (const auto& h : planes) {
    std::vector<std::size_t> on;
    bool pos = false;
    bool neg = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int s = h.side(w.weight(i));
      if (s == 0) on.push_back(i);
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    out.push_back({h, {StateSet::from_indices(on)}, !(pos && neg)});
  }
  return out;
}

ChamberComplex chamber_complex(const WeightConfiguration& w) {
  if (!w.spanning()) {
    throw DomainError("ImproperWall", "weights do not span the character space; the whole cone is an improper wall");
  }
  ChamberComplex cc;
  cc.walls = walls(w);
  std::vector<QHyperplane> interior;
  for (std::size_t i = 0; i < cc.walls.size(); ++i) {
    if (!cc.walls[i].is_boundary) {
      cc.interior_walls.push_back(i);
      interior.push_back(cc.walls[i].hyperplane);
    }
  }
  cc.regions = geom::enumerate_regions(interior, geom::QPolytope(distinct_weights(w)));
  cc.faces = geom::enumerate_faces(cc.regions);

  // Chambers: merge regions across facets that no wall piece covers.
  const std::size_t nregions = cc.regions.regions.size();
  UnionFind regions_uf(nregions);
  for (const auto& adj : cc.regions.adjacency) {
    const auto& wall = cc.walls[cc.interior_walls[adj.hyperplane]];
    bool covered = false;
    for (const auto& piece : wall.pieces) covered = covered || w.hull_contains(adj.facet_witness, piece);
    if (!covered) regions_uf.join(adj.a, adj.b);
  }
  cc.region_chamber.assign(nregions, 0);
  std::vector<std::size_t> root_chamber(nregions, SIZE_MAX);
  for (std::size_t i = 0; i < nregions; ++i) {
    const std::size_t root = regions_uf.find(i);
    if (root_chamber[root] == SIZE_MAX) {
      root_chamber[root] = cc.chambers.size();
      CellDesc c;
      c.kind = CellKind::Chamber;
      c.dim = w.dim();
      c.witness = LinearizationClass::at_level_one(cc.regions.regions[i].witness);
      c.signature = semistable_family(cc.regions.regions[i].witness, w);
      if (c.signature != stable_family(cc.regions.regions[i].witness, w)) {
        throw std::logic_error("chamber witness has a strictly semistable state set");
      }
      cc.chambers.push_back(std::move(c));
    }
    cc.region_chamber[i] = root_chamber[root];
    cc.chambers[root_chamber[root]].faces.push_back(cc.faces.region_face[i]);
  }

  // Cells: connected components of GIT classes, glued along face incidences.
  const std::size_t nfaces = cc.faces.faces.size();
  std::vector<std::vector<bool>> keys(nfaces);
  for (std::size_t f = 0; f < nfaces; ++f) keys[f] = w.simplex_signature(cc.faces.faces[f].witness);
  UnionFind faces_uf(nfaces);
  for (const auto& [f, g] : cc.faces.incidences) {
    if (keys[f] == keys[g]) faces_uf.join(f, g);
  }
  std::vector<std::vector<std::size_t>> groups(nfaces);
  for (std::size_t f = 0; f < nfaces; ++f) groups[faces_uf.find(f)].push_back(f);

  std::vector<std::pair<CellDesc, std::size_t>> cells;  // cell, root
  for (std::size_t root = 0; root < nfaces; ++root) {
    const auto& members = groups[root];
    if (members.empty()) continue;
    std::size_t top = 0;
    for (auto f : members) top = std::max(top, cc.faces.faces[f].dim);
    const QVector* witness = nullptr;
    for (auto f : members) {
      const auto& face = cc.faces.faces[f];
      if (face.dim == top && (witness == nullptr || lex_less(face.witness, *witness))) witness = &face.witness;
    }
    CellDesc c;
    c.dim = top;
    c.kind = top == w.dim() ? CellKind::Chamber : CellKind::WallCell;
    c.witness = LinearizationClass::at_level_one(*witness);
    c.signature = semistable_family(*witness, w);
    for (std::size_t i = 0; i < cc.walls.size(); ++i) {
      for (const auto& piece : cc.walls[i].pieces) {
        if (w.hull_contains(*witness, piece)) {
          c.walls.push_back(i);
          break;
        }
      }
    }
    c.faces = members;
    cells.emplace_back(std::move(c), root);
  }
  std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
    const CellDesc& a = x.first;
    const CellDesc& b = y.first;
    if (a.kind != b.kind) return a.kind == CellKind::Chamber;
    if (a.dim != b.dim) return a.dim > b.dim;
    return lex_less(a.witness.p(), b.witness.p());
  });
  cc.face_cell.assign(nfaces, 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (auto f : cells[i].first.faces) cc.face_cell[f] = i;
    cc.cells.push_back(std::move(cells[i].first));
  }

  std::size_t full_cells = 0;
  for (const auto& c : cc.cells) full_cells += c.kind == CellKind::Chamber ? 1 : 0;
  if (full_cells != cc.chambers.size()) throw std::logic_error("chamber merge and cell gluing disagree");
  // Chamber i is also cell i.
  for (std::size_t i = 0; i < cc.chambers.size(); ++i) {
    if (cc.cells[i].witness.p() != cc.chambers[i].witness.p()) throw std::logic_error("chamber order mismatch");
  }
  return cc;
}

std::vector<ChamberDesc> chambers(const WeightConfiguration& w) {
  auto cc = chamber_complex(w);
  return std::move(cc.chambers);
}

std::vector<CellDesc> cells(const WeightConfiguration& w) {
  auto cc = chamber_complex(w);
  return std::move(cc.cells);
}

std::optional<std::size_t> ChamberComplex::locate_cell(const QVector& point, const WeightConfiguration& w) const {
  if (point.size() != w.dim()) throw InputError("point has wrong dimension");
  for (const auto& f : regions.bound_facets) {
    if (f.slack(point) < 0) return std::nullopt;
  }
  const auto key = face_key(point, regions);
  for (std::size_t f = 0; f < faces.faces.size(); ++f) {
    if (face_key(faces.faces[f].witness, regions) == key) return face_cell[f];
  }
  return std::nullopt;
}

}  // namespace vgit::git
