#include "vgit/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "vgit/errors.hpp"
#include "vgit/linalg.hpp"

namespace vgit::plot {

namespace {

using P2 = std::array<Rational, 2>;
using Polygon = std::vector<P2>;

constexpr double kSize = 480;
constexpr double kPad = 24;

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};

// Line alpha*s + beta*t = gamma in section coordinates.
struct Line {
  Rational alpha, beta, gamma;
  Rational eval(const P2& p) const { return alpha * p[0] + beta * p[1] - gamma; }
};

Line pull_back(const QVector& a, const Rational& b, const Section& sec) {
  return {dot(a, sec.u), dot(a, sec.v), b - dot(a, sec.origin)};
}

P2 crossing_point(const P2& p, const P2& q, const Line& l) {
  const Rational fp = l.eval(p);
  const Rational fq = l.eval(q);
  const Rational t = fp / (fp - fq);
  return {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
}

// Part of a convex polygon where side * eval <= 0.
Polygon clip(const Polygon& poly, const Line& l, int side) {
  Polygon out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    const int sp = side * sign(l.eval(p));
    const int sq = side * sign(l.eval(q));
    if (sp <= 0) out.push_back(p);
    if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) out.push_back(crossing_point(p, q, l));
  }
  return out;
}

Rational twice_area(const Polygon& poly) {
  Rational a = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return a;
}

P2 centroid(const Polygon& poly) {
  P2 c{Rational(0), Rational(0)};
  for (const auto& p : poly) {
    c[0] += p[0];
    c[1] += p[1];
  }
  c[0] /= poly.size();
  c[1] /= poly.size();
  return c;
}

// Maximal chord of a convex polygon on a line, if it has positive length.
std::optional<std::array<P2, 2>> chord(const Polygon& poly, const Line& l) {
  std::vector<P2> hits;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % poly.size()];
    const int sp = sign(l.eval(p));
    const int sq = sign(l.eval(q));
    if (sp == 0) hits.push_back(p);
    if (sp * sq < 0) hits.push_back(crossing_point(p, q, l));
  }
  if (hits.size() < 2) return std::nullopt;
  auto key = [&](const P2& p) { return -l.beta * p[0] + l.alpha * p[1]; };
  auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(), [&](const P2& a, const P2& b) { return key(a) < key(b); });
  if (key(*lo) == key(*hi)) return std::nullopt;
  return std::array<P2, 2>{*lo, *hi};
}

class Canvas {
 public:
  Canvas(Rational s0, Rational s1, Rational t0, Rational t1)
      : s0_(std::move(s0)), s1_(std::move(s1)), t0_(std::move(t0)), t1_(std::move(t1)) {}

  std::string x(const Rational& s) const { return num(kPad + ((s - s0_) / (s1_ - s0_)).convert_to<double>() * kSize); }
  std::string y(const Rational& t) const { return num(kPad + ((t1_ - t) / (t1_ - t0_)).convert_to<double>() * kSize); }

  std::string points(const Polygon& poly) const {
    std::string out;
    for (const auto& p : poly) {
      if (!out.empty()) out += ' ';
      out += x(p[0]) + "," + y(p[1]);
    }
    return out;
  }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }

 private:
  Rational s0_, s1_, t0_, t1_;
};

std::string header(double height) {
  std::ostringstream os;
  const double w = kSize + 2 * kPad;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << Canvas::num(w) << "\" height=\""
     << Canvas::num(height) << "\" viewBox=\"0 0 " << Canvas::num(w) << " " << Canvas::num(height) << "\">\n";
  return os.str();
}

std::string fill_for(const git::ChamberComplex& cc, std::size_t cell) {
  if (cc.cells[cell].kind != git::CellKind::Chamber) return "#dddddd";
  return kPalette[cell % std::size(kPalette)];
}

std::string strip(const git::ChamberComplex& cc, const git::WeightConfiguration& w, std::optional<std::size_t> highlight) {
  Rational lo = w.weight(0)[0];
  Rational hi = lo;
  for (const auto& x : w.weights()) {
    lo = std::min(lo, x[0]);
    hi = std::max(hi, x[0]);
  }
  const Canvas c(lo, hi, Rational(0), Rational(1));
  const std::string top = c.y(1);
  const std::string bottom = c.y(0);
  std::ostringstream os;
  os << header(kSize + 2 * kPad);
  os << "<g id=\"slice\">\n  <polygon class=\"slice\" points=\"" << c.points({{lo, 0}, {hi, 0}, {hi, 1}, {lo, 1}})
     << "\" fill=\"none\" stroke=\"black\"/>\n</g>\n";
  os << "<g id=\"regions\">\n";
  // Chamber intervals run between consecutive wall points.
  std::vector<Rational> cuts{lo, hi};
  for (const auto& wall : cc.walls) cuts.push_back(wall.hyperplane.offset / wall.hyperplane.normal[0]);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    auto cell = cc.locate_cell({mid}, w);
    if (!cell) continue;
    os << "  <polygon class=\"region chamber\" data-cell=\"" << *cell << "\" points=\""
       << c.points({{cuts[i], 0}, {cuts[i + 1], 0}, {cuts[i + 1], 1}, {cuts[i], 1}}) << "\" fill=\"" << fill_for(cc, *cell)
       << "\"/>\n";
  }
  os << "</g>\n<g id=\"walls\">\n";
  for (std::size_t i = 0; i < cc.walls.size(); ++i) {
    const auto& h = cc.walls[i].hyperplane;
    const std::string x = c.x(h.offset / h.normal[0]);
    os << "  <line class=\"wall " << (cc.walls[i].is_boundary ? "boundary" : "interior") << "\" data-wall=\"" << i
       << "\" x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
  }
  os << "</g>\n<g id=\"markers\">\n";
  for (std::size_t i = 0; i < cc.chambers.size(); ++i) {
    os << "  <circle class=\"marker chamber\" data-cell=\"" << i << "\" cx=\"" << c.x(cc.chambers[i].witness.normalized()[0])
       << "\" cy=\"" << c.y(Rational(1, 2)) << "\" r=\"4\"/>\n";
  }
  os << "</g>\n";
  if (highlight) {
    const auto& cell = cc.cells.at(*highlight);
    const Rational x = cell.witness.normalized()[0];
    os << "<g id=\"highlight\">\n";
    if (cell.kind == git::CellKind::Chamber) {
      auto it = std::upper_bound(cuts.begin(), cuts.end(), x);
      os << "  <polygon class=\"highlight\" data-cell=\"" << *highlight << "\" points=\""
         << c.points({{*(it - 1), 0}, {*it, 0}, {*it, 1}, {*(it - 1), 1}})
         << "\" fill=\"none\" stroke=\"red\" stroke-width=\"3\"/>\n";
    } else {
      os << "  <circle class=\"highlight\" data-cell=\"" << *highlight << "\" cx=\"" << c.x(x) << "\" cy=\""
         << c.y(Rational(1, 2)) << "\" r=\"7\" fill=\"none\" stroke=\"red\" stroke-width=\"3\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

Section default_section(const git::WeightConfiguration& w) {
  if (w.dim() != 2) throw InputError("plot: a section is required in dimension " + std::to_string(w.dim()));
  Section s{{0, 0}, {1, 0}, {0, 1}, w.weight(0)[0], w.weight(0)[0], w.weight(0)[1], w.weight(0)[1]};
  for (const auto& x : w.weights()) {
    s.s0 = std::min(s.s0, x[0]);
    s.s1 = std::max(s.s1, x[0]);
    s.t0 = std::min(s.t0, x[1]);
    s.t1 = std::max(s.t1, x[1]);
  }
  return s;
}

void validate(const Section& s, std::size_t dim) {
  if (s.origin.size() != dim || s.u.size() != dim || s.v.size() != dim) {
    throw InputError("plot: section vectors must have length " + std::to_string(dim));
  }
  if (rank({s.u, s.v}, dim) != 2) throw InputError("plot: section directions must be independent");
  if (!(s.s0 < s.s1) || !(s.t0 < s.t1)) throw InputError("plot: section bounds must be increasing");
}

}  // namespace

std::string svg(const git::ChamberComplex& cc, const git::WeightConfiguration& w, const std::optional<Section>& section,
                std::optional<std::size_t> highlight_cell) {
  if (highlight_cell && *highlight_cell >= cc.cells.size()) throw InputError("plot: no such cell");
  if (w.dim() == 1) {
    if (section) throw InputError("plot: one-dimensional configurations take no section");
    return strip(cc, w, highlight_cell);
  }
  const Section sec = section ? *section : default_section(w);
  validate(sec, w.dim());

  Polygon poly{{sec.s0, sec.t0}, {sec.s1, sec.t0}, {sec.s1, sec.t1}, {sec.s0, sec.t1}};
  for (const auto& f : w.facets(w.all())) {
    const Line l = pull_back(f.a, f.b, sec);
    if (l.alpha == 0 && l.beta == 0) {
      if (l.gamma < 0) poly.clear();
      continue;
    }
    poly = clip(poly, l, 1);
    if (poly.empty()) break;
  }
  if (poly.size() < 3 || twice_area(poly) == 0) throw DomainError("SectionMissesCone", "the section does not cut the slice polytope");

  struct Trace {
    std::size_t wall;
    Line line;
  };
  std::vector<Trace> traces;
  for (std::size_t i = 0; i < cc.walls.size(); ++i) {
    const auto& h = cc.walls[i].hyperplane;
    const Line l = pull_back(h.normal, h.offset, sec);
    if (l.alpha != 0 || l.beta != 0) traces.push_back({i, l});
  }

  std::vector<Polygon> pieces{poly};
  for (const auto& tr : traces) {
    if (cc.walls[tr.wall].is_boundary) continue;
    std::vector<Polygon> next;
    for (const auto& p : pieces) {
      for (int side : {1, -1}) {
        Polygon part = clip(p, tr.line, side);
        if (part.size() >= 3 && twice_area(part) != 0) next.push_back(std::move(part));
      }
    }
    pieces = std::move(next);
  }
  auto lift = [&](const P2& p) { return add(sec.origin, add(scaled(sec.u, p[0]), scaled(sec.v, p[1]))); };

  const Canvas c(sec.s0, sec.s1, sec.t0, sec.t1);
  std::ostringstream os;
  os << header(kSize + 2 * kPad);
  os << "<g id=\"slice\">\n  <polygon class=\"slice\" points=\"" << c.points(poly) << "\" fill=\"none\" stroke=\"black\"/>\n</g>\n";

  std::ostringstream markers;
  std::ostringstream highlight;
  os << "<g id=\"regions\">\n";
  for (const auto& p : pieces) {
    const P2 mid = centroid(p);
    auto cell = cc.locate_cell(lift(mid), w);
    if (!cell) continue;
    const bool chamber = cc.cells[*cell].kind == git::CellKind::Chamber;
    os << "  <polygon class=\"region " << (chamber ? "chamber" : "cell") << "\" data-cell=\"" << *cell << "\" points=\""
       << c.points(p) << "\" fill=\"" << fill_for(cc, *cell) << "\"/>\n";
    markers << "  <circle class=\"marker " << (chamber ? "chamber" : "cell") << "\" data-cell=\"" << *cell << "\" cx=\""
            << c.x(mid[0]) << "\" cy=\"" << c.y(mid[1]) << "\" r=\"4\"/>\n";
    if (highlight_cell == cell) {
      highlight << "  <polygon class=\"highlight\" data-cell=\"" << *cell << "\" points=\"" << c.points(p)
                << "\" fill=\"none\" stroke=\"red\" stroke-width=\"3\"/>\n";
    }
  }
  os << "</g>\n<g id=\"walls\">\n";
  for (const auto& tr : traces) {
    auto seg = chord(poly, tr.line);
    if (!seg) continue;
    const bool boundary = cc.walls[tr.wall].is_boundary;
    os << "  <line class=\"wall " << (boundary ? "boundary" : "interior") << "\" data-wall=\"" << tr.wall << "\" x1=\""
       << c.x((*seg)[0][0]) << "\" y1=\"" << c.y((*seg)[0][1]) << "\" x2=\"" << c.x((*seg)[1][0]) << "\" y2=\""
       << c.y((*seg)[1][1]) << "\" stroke=\"black\"/>\n";
    if (!highlight_cell || boundary) continue;
    // Pieces of the trace between consecutive crossings with other traces.
    std::vector<Rational> params{0, 1};
    const P2 a = (*seg)[0];
    const P2 d{(*seg)[1][0] - a[0], (*seg)[1][1] - a[1]};
    for (const auto& other : traces) {
      const Rational slope = other.line.alpha * d[0] + other.line.beta * d[1];
      if (slope == 0) continue;
      const Rational t = -other.line.eval(a) / slope;
      if (t > 0 && t < 1) params.push_back(t);
    }
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    for (std::size_t i = 0; i + 1 < params.size(); ++i) {
      const Rational tm = (params[i] + params[i + 1]) / 2;
      auto cell = cc.locate_cell(lift({a[0] + tm * d[0], a[1] + tm * d[1]}), w);
      if (cell != highlight_cell) continue;
      const P2 p{a[0] + params[i] * d[0], a[1] + params[i] * d[1]};
      const P2 q{a[0] + params[i + 1] * d[0], a[1] + params[i + 1] * d[1]};
      highlight << "  <line class=\"highlight\" data-cell=\"" << *cell << "\" x1=\"" << c.x(p[0]) << "\" y1=\"" << c.y(p[1])
                << "\" x2=\"" << c.x(q[0]) << "\" y2=\"" << c.y(q[1]) << "\" stroke=\"red\" stroke-width=\"3\"/>\n";
    }
  }
  os << "</g>\n<g id=\"markers\">\n" << markers.str() << "</g>\n";
  if (highlight_cell) os << "<g id=\"highlight\">\n" << highlight.str() << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace vgit::plot
