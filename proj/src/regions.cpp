#include <algorithm>
#include <map>
#include <set>

#include "vgit/errors.hpp"
#include "vgit/exactgeom.hpp"

namespace vgit::geom {

namespace {

using Ids = std::vector<std::uint32_t>;

Ids intersect(const Ids& a, const Ids& b) {
  Ids out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Ids with(Ids ids, std::uint32_t extra) {
  ids.insert(std::upper_bound(ids.begin(), ids.end(), extra), extra);
  return ids;
}

struct Splitter {
  std::size_t dim;
  std::vector<QVector> normals;  // by constraint id

  // Vertices u, w of a polytope are joined by an edge iff their common
  // active constraints have rank dim - 1.
  bool adjacent(const Ids& common) const {
    if (common.size() + 1 < dim) return false;
    QMatrix rows;
    rows.reserve(common.size());
    for (auto id : common) rows.push_back(normals[id]);
    return rank(rows, dim) + 1 == dim;
  }

  // Returns {positive part, negative part}; only called when both exist.
  std::pair<PolytopeCell, PolytopeCell> split(const PolytopeCell& cell, const std::vector<Rational>& values,
                                              std::uint32_t id) const {
    PolytopeCell pos;
    PolytopeCell neg;
    for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
      const int s = sign(values[v]);
      if (s >= 0) {
        pos.vertices.push_back(cell.vertices[v]);
        pos.tight.push_back(s == 0 ? with(cell.tight[v], id) : cell.tight[v]);
      }
      if (s <= 0) {
        neg.vertices.push_back(cell.vertices[v]);
        neg.tight.push_back(s == 0 ? with(cell.tight[v], id) : cell.tight[v]);
      }
    }
    for (std::size_t u = 0; u < cell.vertices.size(); ++u) {
      if (values[u] <= 0) continue;
      for (std::size_t w = 0; w < cell.vertices.size(); ++w) {
        if (values[w] >= 0) continue;
        Ids common = intersect(cell.tight[u], cell.tight[w]);
        if (!adjacent(common)) continue;
        const Rational t = values[u] / (values[u] - values[w]);
        QVector x = add(cell.vertices[u], scaled(sub(cell.vertices[w], cell.vertices[u]), t));
        Ids tight = with(std::move(common), id);
        pos.vertices.push_back(x);
        pos.tight.push_back(tight);
        neg.vertices.push_back(std::move(x));
        neg.tight.push_back(std::move(tight));
      }
    }
    return {std::move(pos), std::move(neg)};
  }
};

std::vector<std::size_t> vertices_on(const PolytopeCell& cell, std::uint32_t id) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
    if (std::binary_search(cell.tight[v].begin(), cell.tight[v].end(), id)) out.push_back(v);
  }
  return out;
}

std::vector<QVector> pick(const PolytopeCell& cell, const std::vector<std::size_t>& idx) {
  std::vector<QVector> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(cell.vertices[i]);
  return out;
}

}  // namespace

std::optional<std::size_t> RegionComplex::locate(const QVector& x) const {
  for (const auto& f : bound_facets) {
    if (f.slack(x) <= 0) return std::nullopt;
  }
  std::vector<int> signs(hyperplanes.size());
  for (std::size_t j = 0; j < hyperplanes.size(); ++j) {
    signs[j] = hyperplanes[j].side(x);
    if (signs[j] == 0) return std::nullopt;
  }
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].signs == signs) return i;
  }
  return std::nullopt;
}

RegionComplex enumerate_regions(const std::vector<QHyperplane>& hyperplanes, const QPolytope& bound) {
  const std::size_t d = bound.dim();
  if (!bound.full_dimensional()) throw InputError("enumerate_regions: bound is not full-dimensional");
  for (const auto& h : hyperplanes) {
    if (h.normal.size() != d) throw InputError("enumerate_regions: hyperplane dimension mismatch");
  }

  RegionComplex out;
  out.hyperplanes = hyperplanes;
  out.bound_facets = facets(bound.generators());
  const auto nfacets = static_cast<std::uint32_t>(out.bound_facets.size());

  Splitter splitter{d, {}};
  for (const auto& f : out.bound_facets) splitter.normals.push_back(f.a);
  for (const auto& h : hyperplanes) splitter.normals.push_back(h.normal);

  // Extreme points of the bound with their active facets.
  PolytopeCell initial;
  {
    std::vector<QVector> gens = bound.generators();
    std::sort(gens.begin(), gens.end(), lex_less);
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (auto& g : gens) {
      Ids tight;
      QMatrix rows;
      for (std::uint32_t f = 0; f < nfacets; ++f) {
        if (out.bound_facets[f].slack(g) == 0) {
          tight.push_back(f);
          rows.push_back(out.bound_facets[f].a);
        }
      }
      if (rank(rows, d) == d) {
        initial.vertices.push_back(std::move(g));
        initial.tight.push_back(std::move(tight));
      }
    }
  }

  std::vector<PolytopeCell> cells{std::move(initial)};
  for (std::size_t j = 0; j < hyperplanes.size(); ++j) {
    const auto id = static_cast<std::uint32_t>(nfacets + j);
    std::vector<PolytopeCell> next;
    next.reserve(cells.size() * 2);
    for (auto& cell : cells) {
      std::vector<Rational> values(cell.vertices.size());
      bool any_pos = false;
      bool any_neg = false;
      for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
        values[v] = hyperplanes[j].eval(cell.vertices[v]);
        any_pos = any_pos || values[v] > 0;
        any_neg = any_neg || values[v] < 0;
      }
      if (any_pos && any_neg) {
        auto [pos, neg] = splitter.split(cell, values, id);
        next.push_back(std::move(pos));
        next.push_back(std::move(neg));
      } else {
        next.push_back(std::move(cell));
      }
    }
    cells = std::move(next);
  }

  for (auto& cell : cells) {
    RegionComplex::Region r;
    r.witness = barycenter(cell.vertices);
    r.signs.resize(hyperplanes.size());
    for (std::size_t j = 0; j < hyperplanes.size(); ++j) r.signs[j] = hyperplanes[j].side(r.witness);
    r.cell = std::move(cell);
    out.regions.push_back(std::move(r));
  }
  std::sort(out.regions.begin(), out.regions.end(),
            [](const auto& a, const auto& b) { return lex_less(a.witness, b.witness); });

  std::map<std::vector<int>, std::size_t> by_signs;
  for (std::size_t i = 0; i < out.regions.size(); ++i) by_signs.emplace(out.regions[i].signs, i);

  for (std::size_t i = 0; i < out.regions.size(); ++i) {
    const auto& cell = out.regions[i].cell;
    std::set<std::uint32_t> ids;
    for (const auto& t : cell.tight) {
      for (auto id : t) {
        if (id >= nfacets) ids.insert(id);
      }
    }
    for (auto id : ids) {
      const auto on = vertices_on(cell, id);
      const auto facet_pts = pick(cell, on);
      if (affine_rank(facet_pts) + 1 != d) continue;
      const std::size_t j = id - nfacets;
      std::vector<int> flipped = out.regions[i].signs;
      flipped[j] = -flipped[j];
      const auto it = by_signs.find(flipped);
      if (it == by_signs.end() || it->second < i) continue;
      out.adjacency.push_back({i, it->second, j, barycenter(facet_pts)});
    }
  }
  std::sort(out.adjacency.begin(), out.adjacency.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b, x.hyperplane) < std::tie(y.a, y.b, y.hyperplane);
  });
  return out;
}

FaceComplex enumerate_faces(const RegionComplex& complex) {
  FaceComplex out;
  std::map<QVector, std::size_t, decltype(&lex_less)> vertex_ids(&lex_less);
  std::map<std::vector<std::size_t>, std::size_t> face_ids;
  std::set<std::pair<std::size_t, std::size_t>> incidences;

  for (const auto& region : complex.regions) {
    const auto& cell = region.cell;
    const std::size_t d = cell.vertices.front().size();
    std::vector<std::size_t> global(cell.vertices.size());
    for (std::size_t v = 0; v < cell.vertices.size(); ++v) {
      auto [it, inserted] = vertex_ids.emplace(cell.vertices[v], out.vertices.size());
      if (inserted) out.vertices.push_back(cell.vertices[v]);
      global[v] = it->second;
    }

    // Facets are constraint vertex sets of affine rank d-1; every face is
    // an intersection of facets.
    std::set<std::uint32_t> ids;
    for (const auto& t : cell.tight) ids.insert(t.begin(), t.end());
    std::vector<std::vector<std::size_t>> facet_sets;
    for (auto id : ids) {
      auto on = vertices_on(cell, id);
      if (affine_rank(pick(cell, on)) + 1 == d) facet_sets.push_back(std::move(on));
    }
    std::sort(facet_sets.begin(), facet_sets.end());
    facet_sets.erase(std::unique(facet_sets.begin(), facet_sets.end()), facet_sets.end());

    std::set<std::vector<std::size_t>> local_faces(facet_sets.begin(), facet_sets.end());
    std::vector<std::vector<std::size_t>> queue(facet_sets.begin(), facet_sets.end());
    while (!queue.empty()) {
      auto f = std::move(queue.back());
      queue.pop_back();
      for (const auto& g : facet_sets) {
        std::vector<std::size_t> h;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(h));
        if (!h.empty() && local_faces.insert(h).second) queue.push_back(std::move(h));
      }
    }
    std::vector<std::size_t> all(cell.vertices.size());
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
    local_faces.insert(all);

    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> indexed;
    for (const auto& lf : local_faces) {
      std::vector<std::size_t> key;
      for (auto v : lf) key.push_back(global[v]);
      std::sort(key.begin(), key.end());
      auto [it, inserted] = face_ids.emplace(key, out.faces.size());
      if (inserted) {
        const auto pts = pick(cell, lf);
        out.faces.push_back({key, affine_rank(pts), barycenter(pts)});
      }
      indexed.emplace_back(lf, it->second);
      if (lf.size() == all.size()) out.region_face.push_back(it->second);
    }
    for (const auto& [f, fi] : indexed) {
      for (const auto& [g, gi] : indexed) {
        if (fi == gi || f.size() >= g.size()) continue;
        if (std::includes(g.begin(), g.end(), f.begin(), f.end())) incidences.emplace(fi, gi);
      }
    }
  }
  out.incidences.assign(incidences.begin(), incidences.end());
  return out;
}

}  // namespace vgit::geom
