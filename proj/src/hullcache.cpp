#include "hullcache.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "vgit/combinatorics.hpp"

namespace vgit::git {

namespace {

// Families are dense tables over all 2^m subsets.
constexpr std::size_t kMaxFamilyWeights = 24;

void close_upward(std::vector<std::uint8_t>& table, std::size_t m) {
  const std::size_t n = table.size();
  for (std::size_t b = 0; b < m; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t mask = 0; mask < n; ++mask) {
      if ((mask & bit) != 0) table[mask] |= table[mask ^ bit];
    }
  }
}

// Entries below 2^40 keep dot products of short vectors inside __int128.
const Integer kSmallLimit = Integer(1) << 40;

bool small_integer(const Integer& v, std::int64_t& out) {
  if (abs(v) >= kSmallLimit) return false;
  out = v.convert_to<std::int64_t>();
  return true;
}

Integer common_denominator(const QVector& a, const Rational& b) {
  Integer den = denominator(b);
  for (const auto& x : a) den = boost::multiprecision::lcm(den, Integer(denominator(x)));
  return den;
}

std::optional<HullCache::SmallRow> small_row(const geom::Halfspace& h) {
  const Integer den = common_denominator(h.a, h.b);
  HullCache::SmallRow out;
  out.a.resize(h.a.size());
  for (std::size_t i = 0; i < h.a.size(); ++i) {
    if (!small_integer(numerator(h.a[i]) * (den / denominator(h.a[i])), out.a[i])) return std::nullopt;
  }
  if (!small_integer(numerator(h.b) * (den / denominator(h.b)), out.b)) return std::nullopt;
  return out;
}

__int128 small_dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& x) {
  __int128 out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += static_cast<__int128>(a[i]) * x[i];
  return out;
}

}  // namespace

HullCache::Point HullCache::prepare(const QVector& point) {
  Point out;
  out.exact = &point;
  const Integer den = common_denominator(point, Rational(0));
  if (!small_integer(den, out.den)) return out;
  out.x.resize(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!small_integer(numerator(point[i]) * (den / denominator(point[i])), out.x[i])) return out;
  }
  out.small = true;
  return out;
}

HullCache::HullCache(const WeightConfiguration& w) : dim(w.dim()), span(w.span_dim()), weights(w.weights()) {
  const std::size_t m = weights.size();
  for (std::size_t k = 1; k <= span + 1 && k <= m; ++k) {
    for_each_combination(m, k, [&](const std::vector<std::size_t>& idx) {
      Simplex sx;
      for (auto i : idx) sx.mask |= std::uint64_t{1} << i;
      const QVector& base = weights[idx.front()];
      const std::size_t cols = k - 1;
      // Solve for barycentric coordinates on `cols` independent rows.
      QMatrix picked;
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < dim && picked.size() < cols; ++r) {
        QVector row(cols);
        for (std::size_t c = 0; c < cols; ++c) row[c] = weights[idx[c + 1]][r] - base[r];
        picked.push_back(row);
        if (rank(picked, cols) < picked.size()) {
          picked.pop_back();
        } else {
          rows.push_back(r);
        }
      }
      if (picked.size() < cols) return true;  // affinely dependent
      const QMatrix inv = cols > 0 ? inverse(picked) : QMatrix{};

      // lambda_c(x) = coef[c].x - shift[c]
      std::vector<QVector> coef(cols, zeros(dim));
      QVector shift(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t j = 0; j < cols; ++j) {
          coef[c][rows[j]] += inv[c][j];
          shift[c] += inv[c][j] * base[rows[j]];
        }
      }
      for (std::size_t r = 0; r < dim; ++r) {
        if (std::find(rows.begin(), rows.end(), r) != rows.end()) continue;
        // x_r = base_r + sum_c D[r][c] lambda_c(x)
        QVector a = zeros(dim);
        a[r] = 1;
        Rational b = base[r];
        for (std::size_t c = 0; c < cols; ++c) {
          const Rational d = weights[idx[c + 1]][r] - base[r];
          if (d == 0) continue;
          a = sub(a, scaled(coef[c], d));
          b -= d * shift[c];
        }
        sx.equations.push_back({std::move(a), std::move(b)});
      }
      QVector total = zeros(dim);
      Rational total_shift = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        sx.inequalities.push_back({scaled(coef[c], -1), -shift[c]});
        total = add(total, coef[c]);
        total_shift += shift[c];
      }
      if (cols > 0) sx.inequalities.push_back({total, 1 + total_shift});
      sx.small = true;
      for (const auto& e : sx.equations) {
        auto r = small_row(e);
        sx.small = sx.small && r.has_value();
        if (r) sx.small_equations.push_back(std::move(*r));
      }
      for (const auto& h : sx.inequalities) {
        auto r = small_row(h);
        sx.small = sx.small && r.has_value();
        if (r) sx.small_inequalities.push_back(std::move(*r));
      }
      if (k == dim + 1) full_simplices.push_back(sx.mask);
      simplices.push_back(std::move(sx));
      return true;
    });
  }

  if (span < dim || dim == 0) return;
  if (m <= kMaxFamilyWeights) {
    full_table.assign(std::size_t{1} << m, 0);
    for (auto mask : full_simplices) full_table[mask] = 1;
    close_upward(full_table, m);
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for_each_combination(m, dim, [&](const std::vector<std::size_t>& idx) {
    QMatrix diffs;
    for (std::size_t i = 1; i < idx.size(); ++i) diffs.push_back(sub(weights[idx[i]], weights[idx[0]]));
    if (rank(diffs, dim) + 1 != dim) return true;
    SpannedPlane h;
    h.normal = nullspace(diffs, dim).front();
    h.level = dot(h.normal, weights[idx[0]]);
    for (std::size_t i = 0; i < m; ++i) {
      const int s = sign(dot(h.normal, weights[i]) - h.level);
      if (s > 0) h.pos |= std::uint64_t{1} << i;
      if (s < 0) h.neg |= std::uint64_t{1} << i;
    }
    if (seen.emplace(std::min(h.pos, h.neg), std::max(h.pos, h.neg)).second) planes.push_back(std::move(h));
    return true;
  });
}

std::size_t HullCache::affine_dim(const StateSet& s) {
  std::lock_guard lock(mutex);
  auto it = dims.find(s.mask());
  if (it != dims.end()) return it->second;
  std::vector<QVector> pts;
  for (auto i : s.indices()) pts.push_back(weights.at(i));
  return dims.emplace(s.mask(), affine_rank(pts)).first->second;
}

const std::vector<geom::Halfspace>& HullCache::facets(const StateSet& s) {
  std::lock_guard lock(mutex);
  auto it = facet_cache.find(s.mask());
  if (it != facet_cache.end()) return it->second;
  std::vector<QVector> pts;
  for (auto i : s.indices()) pts.push_back(weights.at(i));
  return facet_cache.emplace(s.mask(), geom::facets(pts)).first->second;
}

namespace {

Rational sparse_dot(const QVector& a, const QVector& x) {
  Rational out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) out += a[i] * x[i];
  }
  return out;
}

}  // namespace

bool HullCache::in_simplex(const Point& point, const Simplex& sx) const {
  if (point.small && sx.small) {
    for (const auto& e : sx.small_equations) {
      if (small_dot(e.a, point.x) != static_cast<__int128>(e.b) * point.den) return false;
    }
    for (const auto& h : sx.small_inequalities) {
      if (small_dot(h.a, point.x) > static_cast<__int128>(h.b) * point.den) return false;
    }
    return true;
  }
  for (const auto& e : sx.equations) {
    if (sparse_dot(e.a, *point.exact) != e.b) return false;
  }
  for (const auto& h : sx.inequalities) {
    if (sparse_dot(h.a, *point.exact) > h.b) return false;
  }
  return true;
}

bool HullCache::contains(const QVector& point, std::uint64_t mask) const {
  const Point p = prepare(point);
  for (const auto& sx : simplices) {
    if ((sx.mask & ~mask) == 0 && in_simplex(p, sx)) return true;
  }
  return false;
}

std::vector<bool> HullCache::signature(const QVector& point) const {
  const Point p = prepare(point);
  std::vector<bool> out(simplices.size());
  for (std::size_t i = 0; i < simplices.size(); ++i) out[i] = in_simplex(p, simplices[i]);
  return out;
}

StateFamily HullCache::family(const QVector& point, bool stable_only) {
  const std::size_t m = weights.size();
  if (m > kMaxFamilyWeights) throw DomainError("TooLarge", "too many weights for family enumeration");
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::uint8_t> ss(n, 0);
  const Point p = prepare(point);
  for (const auto& sx : simplices) {
    if (in_simplex(p, sx)) ss[sx.mask] = 1;
  }
  close_upward(ss, m);

  if (stable_only) {
    if (span < dim) return {};
    const auto& full = full_table;
    // A full-dimensional S with point in conv(S) has it on the boundary iff
    // some hyperplane through the point spanned by weights leaves all of S
    // on one closed side.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sides;
    for (const auto& h : planes) {
      if (dot(h.normal, point) == h.level) sides.emplace_back(h.pos, h.neg);
    }
    for (std::size_t mask = 1; mask < n; ++mask) {
      if (!ss[mask] || !full[mask]) {
        ss[mask] = 0;
        continue;
      }
      for (const auto& [a, b] : sides) {
        if ((mask & a) == 0 || (mask & b) == 0) {
          ss[mask] = 0;
          break;
        }
      }
    }
  }

  StateFamily out;
  for (std::size_t mask = 1; mask < n; ++mask) {
    if (ss[mask]) out.push_back(StateSet::from_mask(mask));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vgit::git
