#include "vgit/pointconfig.hpp"

#include <algorithm>
#include <set>

#include "vgit/combinatorics.hpp"
#include "vgit/errors.hpp"

namespace vgit::pconf {

namespace {

void check_k(const KVector& k, std::size_t m) {
  if (k.size() != m) throw InputError("k vector length does not match the number of points");
  for (const auto& x : k) {
    if (x <= 0) throw InputError("k entries must be positive integers");
  }
}

void check_nm(std::size_t n, std::size_t m) {
  if (n + 1 > m) throw InputError("need n+1 <= m");
}

Integer sum(const KVector& k) {
  Integer s = 0;
  for (const auto& x : k) s += x;
  return s;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t m, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  for_each_combination(m, size, [&](const std::vector<std::size_t>& idx) {
    out.push_back(idx);
    return true;
  });
  return out;
}

}  // namespace

PointConfig::PointConfig(std::size_t n_, std::vector<QVector> pts) : n(n_), points(std::move(pts)) {
  if (points.empty()) throw InputError("point configuration must be nonempty");
  if (points.size() > git::kMaxWeights) throw InputError("too many points");
  for (const auto& p : points) {
    if (p.size() != n + 1) throw InputError("point has wrong number of homogeneous coordinates");
    if (is_zero(p)) throw InputError("points must be nonzero");
  }
}

Stability is_semistable(const PointConfig& p, const KVector& k) {
  const std::size_t m = p.size();
  check_k(k, m);
  const Integer total = sum(k);
  const Integer n1 = p.n + 1;
  // Each proper subspace spanned by points, keyed by the points it holds.
  std::set<std::pair<std::uint64_t, std::size_t>> spans;
  for (std::size_t r = 1; r <= p.n; ++r) {
    for_each_combination(m, r, [&](const std::vector<std::size_t>& idx) {
      QMatrix rows;
      for (auto i : idx) rows.push_back(p.points[i]);
      if (rank(rows, p.n + 1) != r) return true;
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < m; ++j) {
        rows.push_back(p.points[j]);
        if (rank(rows, p.n + 1) == r) mask |= std::uint64_t{1} << j;
        rows.pop_back();
      }
      spans.emplace(mask, r);
      return true;
    });
  }
  bool equality = false;
  for (const auto& [mask, r] : spans) {
    Integer inside = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if ((mask >> j) & 1U) inside += k[j];
    }
    const Integer lhs = n1 * inside;
    const Integer rhs = Integer(r) * total;
    if (lhs > rhs) return Stability::Unstable;
    if (lhs == rhs) equality = true;
  }
  // Points spanning only a proper subspace fail at that subspace.
  QMatrix all(p.points.begin(), p.points.end());
  if (rank(all, p.n + 1) <= p.n) return Stability::Unstable;
  return equality ? Stability::StrictlySemistable : Stability::Stable;
}

bool nonempty_ss(const KVector& k, std::size_t n) {
  if (k.empty()) throw InputError("k vector must be nonempty");
  check_k(k, k.size());
  return Integer(n + 1) * *std::max_element(k.begin(), k.end()) <= sum(k);
}

HypersimplexModel hypersimplex(std::size_t n, std::size_t m) {
  check_nm(n, m);
  HypersimplexModel out;
  out.n = n;
  out.m = m;
  for (const auto& idx : subsets(m, n + 1)) {
    QVector v = zeros(m);
    for (auto i : idx) v[i] = 1;
    out.vertices.push_back(std::move(v));
  }
  out.walls = config_walls(n, m);
  return out;
}

std::vector<QHyperplane> config_walls(std::size_t n, std::size_t m) {
  check_nm(n, m);
  std::set<QHyperplane> planes;
  const long n1 = static_cast<long>(n) + 1;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << m); ++mask) {
    const long size = std::popcount(mask);
    // On the hypersimplex sum_I x ranges over [lo, hi]; the wall sum_I x = d+1
    // meets the relative interior iff d+1 lies strictly between.
    const long lo = std::max(0L, n1 - (static_cast<long>(m) - size));
    const long hi = std::min(size, n1);
    for (long d = 0; d + 1 <= static_cast<long>(n); ++d) {
      if (!(lo < d + 1 && d + 1 < hi)) continue;
      QVector normal(m);
      for (std::size_t i = 0; i < m; ++i) normal[i] = Rational(((mask >> i) & 1U) ? n1 - (d + 1) : -(d + 1));
      planes.insert(QHyperplane::from_equation(normal, 0));
    }
  }
  return {planes.begin(), planes.end()};
}

WeightConfiguration gm_weights(std::size_t n, std::size_t m) {
  const auto model = hypersimplex(n, m);
  std::vector<std::string> labels;
  for (const auto& v : model.vertices) {
    std::string s;
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] != 0) s += (s.empty() ? "" : ",") + std::to_string(i);
    }
    labels.push_back("{" + s + "}");
  }
  return WeightConfiguration(m, model.vertices, labels);
}

QVector to_chart(const QVector& x) {
  if (x.size() < 2) throw InputError("chart needs at least two coordinates");
  return QVector(x.begin(), x.end() - 1);
}

WeightConfiguration chart(const WeightConfiguration& w) {
  std::vector<QVector> pts;
  for (const auto& x : w.weights()) pts.push_back(to_chart(x));
  return WeightConfiguration(w.dim() - 1, pts, w.labels());
}

QHyperplane chart_hyperplane(const QHyperplane& h, std::size_t n) {
  const std::size_t m = h.normal.size();
  const Rational& last = h.normal[m - 1];
  QVector a(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) a[i] = h.normal[i] - last;
  return QHyperplane::from_equation(a, h.offset - last * Rational(n + 1));
}

git::LinearizationClass config_linearization(const KVector& k, std::size_t n) {
  check_k(k, k.size());
  QVector p;
  for (const auto& x : k) p.emplace_back(x);
  return git::LinearizationClass(p, Rational(sum(k)) / Rational(n + 1));
}

git::ProjPoint map_config_to_pluecker(const PointConfig& p) {
  const std::size_t m = p.size();
  QMatrix all(p.points.begin(), p.points.end());
  if (m < p.n + 1 || rank(all, p.n + 1) != p.n + 1) {
    throw DomainError("NotSpanning", "points do not span projective space");
  }
  git::ProjPoint out;
  std::size_t index = 0;
  for (const auto& idx : subsets(m, p.n + 1)) {
    QMatrix minor;
    for (auto i : idx) minor.push_back(p.points[i]);  // transposed; same determinant
    Rational det = determinant(std::move(minor));
    if (det != 0) out.entries.emplace(index, std::move(det));
    ++index;
  }
  return out;
}

Stability classify_via_pluecker(const PointConfig& p, const KVector& k) {
  const std::size_t m = p.size();
  check_k(k, m);
  if (m < 2) throw InputError("the Pluecker chart needs at least two points");
  return classify_via_pluecker(p, k, chart(gm_weights(p.n, m)));
}

Stability classify_via_pluecker(const PointConfig& p, const KVector& k, const WeightConfiguration& charted) {
  check_k(k, p.size());
  if (charted.size() != binomial(p.size(), p.n + 1) || charted.dim() + 1 != p.size()) {
    throw InputError("charted Pluecker weights do not match the configuration");
  }
  const auto x = map_config_to_pluecker(p);
  const auto l = config_linearization(k, p.n);
  return git::classify(x, git::LinearizationClass(to_chart(l.p()), l.d()), charted);
}

std::vector<PointConfig> coincidence_configs(std::size_t n, std::size_t m) {
  constexpr std::size_t kMaxConfigs = 600;
  std::vector<QVector> generic;
  for (std::size_t t = 1; t <= m; ++t) {
    QVector v;
    Rational power = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      v.push_back(power);
      power *= Rational(t);
    }
    generic.push_back(std::move(v));
  }
  std::vector<PointConfig> out;
  // Restricted growth strings enumerate set partitions.
  std::vector<std::size_t> block(m, 0);
  for (;;) {
    const std::size_t blocks = *std::max_element(block.begin(), block.end()) + 1;
    if (blocks >= n + 1) {
      std::vector<QVector> pts;
      for (auto b : block) pts.push_back(generic[b]);
      out.emplace_back(n, std::move(pts));
      if (out.size() >= kMaxConfigs) break;
    }
    if (m < 2) break;
    std::size_t i = m;
    while (i > 1) {
      --i;
      if (block[i] <= *std::max_element(block.begin(), block.begin() + static_cast<long>(i))) break;
      if (i == 1) i = 0;
    }
    if (i == 0) break;
    ++block[i];
    std::fill(block.begin() + static_cast<long>(i) + 1, block.end(), 0);
  }
  return out;
}

GmReport gm_crosscheck(std::size_t n, std::size_t m, std::uint64_t max_subsets) {
  check_nm(n, m);
  if (m < 2 || n + 1 == m) throw InputError("cross-check needs n+1 < m");
  if (binomial(m, n + 1) > max_subsets) throw DomainError("TooLarge", "C(m, n+1) exceeds the subset cap");

  GmReport out;
  out.n = n;
  out.m = m;
  const auto w = chart(gm_weights(n, m));
  const auto cc = git::chamber_complex(w);
  for (auto i : cc.interior_walls) out.gm_walls.push_back(cc.walls[i].hyperplane);
  std::sort(out.gm_walls.begin(), out.gm_walls.end());
  for (const auto& h : config_walls(n, m)) out.config_walls.push_back(chart_hyperplane(h, n));
  std::sort(out.config_walls.begin(), out.config_walls.end());
  out.config_walls.erase(std::unique(out.config_walls.begin(), out.config_walls.end()), out.config_walls.end());
  out.walls_match = out.gm_walls == out.config_walls;

  std::vector<QVector> slice;
  for (const auto& v : hypersimplex(n, m).vertices) slice.push_back(to_chart(v));
  const auto rc = geom::enumerate_regions(out.config_walls, geom::QPolytope(slice));
  out.gm_regions = cc.regions.regions.size();
  out.config_regions = rc.regions.size();
  out.gm_chambers = cc.chambers.size();

  const auto configs = coincidence_configs(n, m);
  bool all = out.walls_match && out.gm_regions == out.config_regions;
  for (const auto& region : rc.regions) {
    RegionMatch rm;
    rm.witness = region.witness;
    const auto located = cc.regions.locate(region.witness);
    if (located) {
      rm.gm_region = *located;
      const auto& chamber = cc.chambers[cc.region_chamber[*located]];
      rm.signature_match = git::semistable_family(region.witness, w) == chamber.signature;
    }
    // k proportional to the full witness; the missing coordinate restores sum = n+1.
    QVector full = region.witness;
    Rational rest = Rational(n + 1);
    for (const auto& x : full) rest -= x;
    full.push_back(rest);
    Integer scale = 1;
    for (const auto& x : full) scale = boost::multiprecision::lcm(scale, denominator(x));
    KVector k;
    for (const auto& x : full) k.push_back(numerator(x * Rational(scale)));
    for (const auto& p : configs) {
      ++rm.configs_checked;
      if (is_semistable(p, k) == classify_via_pluecker(p, k, w)) ++rm.configs_agreeing;
    }
    all = all && located && rm.signature_match && rm.configs_agreeing == rm.configs_checked;
    out.regions.push_back(std::move(rm));
  }
  out.match = all;
  return out;
}

}  // namespace vgit::pconf
