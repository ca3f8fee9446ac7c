#include "vgit/gitcore.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "vgit/combinatorics.hpp"
#include "vgit/errors.hpp"
#include "hullcache.hpp"

namespace vgit::git {

// ---------------------------------------------------------------------------
// StateSet

StateSet StateSet::from_mask(std::uint64_t mask) {
  if (mask == 0) throw InputError("state set must be nonempty");
  return StateSet(mask);
}

StateSet StateSet::from_indices(const std::vector<std::size_t>& indices) {
  std::uint64_t mask = 0;
  for (auto i : indices) {
    if (i >= kMaxWeights) throw InputError("state index out of range");
    mask |= std::uint64_t{1} << i;
  }
  return from_mask(mask);
}

std::size_t StateSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> StateSet::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::strong_ordering operator<=>(const StateSet& a, const StateSet& b) {
  std::uint64_t x = a.mask_;
  std::uint64_t y = b.mask_;
  while (x != 0 && y != 0) {
    const int i = std::countr_zero(x);
    const int j = std::countr_zero(y);
    if (i != j) return i <=> j;
    x &= x - 1;
    y &= y - 1;
  }
  return (x != 0) <=> (y != 0);
}

// ---------------------------------------------------------------------------
// WeightConfiguration

WeightConfiguration::WeightConfiguration(std::size_t dim, std::vector<QVector> weights,
                                         std::vector<std::string> labels, std::optional<GramForm> gram)
    : dim_(dim),
      weights_(std::move(weights)),
      labels_(std::move(labels)),
      gram_(gram ? std::move(*gram) : GramForm::identity(dim == 0 ? 1 : dim)) {
  if (dim_ == 0) throw InputError("torus rank must be positive");
  if (weights_.empty()) throw InputError("weight configuration must be nonempty");
  if (weights_.size() > kMaxWeights) throw InputError("too many weights");
  for (const auto& w : weights_) {
    if (w.size() != dim_) throw InputError("weight has wrong dimension");
    for (const auto& x : w) {
      if (denominator(x) != 1) throw InputError("weights must be integral");
    }
  }
  if (!labels_.empty() && labels_.size() != weights_.size()) throw InputError("label count mismatch");
  if (gram_.dim() != dim_) throw InputError("gram form dimension mismatch");
  span_dim_ = affine_rank(weights_);
  cache_ = std::make_shared<HullCache>(*this);
}

StateSet WeightConfiguration::all() const {
  const std::size_t m = weights_.size();
  return StateSet::from_mask(m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
}

std::vector<QVector> WeightConfiguration::points(const StateSet& s) const {
  std::vector<QVector> out;
  for (auto i : s.indices()) {
    if (i >= weights_.size()) throw InputError("state index out of range");
    out.push_back(weights_[i]);
  }
  if (out.empty()) throw InputError("state set must be nonempty");
  return out;
}

geom::QPolytope WeightConfiguration::polytope(const StateSet& s) const { return geom::QPolytope(points(s)); }

std::size_t WeightConfiguration::affine_dim(const StateSet& s) const { return cache_->affine_dim(s); }

const std::vector<geom::Halfspace>& WeightConfiguration::facets(const StateSet& s) const {
  return cache_->facets(s);
}

bool WeightConfiguration::hull_contains(const QVector& point, const StateSet& s) const {
  return cache_->contains(point, s.mask());
}

std::vector<bool> WeightConfiguration::simplex_signature(const QVector& point) const {
  return cache_->signature(point);
}

StateFamily WeightConfiguration::semistable_states(const QVector& point) const {
  return cache_->family(point, false);
}

StateFamily WeightConfiguration::stable_states(const QVector& point) const { return cache_->family(point, true); }

// ---------------------------------------------------------------------------
// Small value types

LinearizationClass::LinearizationClass(QVector p, Rational d) : p_(std::move(p)), d_(std::move(d)) {
  if (d_ <= 0) throw InputError("linearization degree must be positive");
  if (p_.empty()) throw InputError("linearization point must be nonempty");
}

OneParamSubgroup::OneParamSubgroup(QVector lambda) : lambda_(std::move(lambda)) {
  if (lambda_.empty() || is_zero(lambda_)) throw InputError("one-parameter subgroup must be nonzero");
  for (const auto& x : lambda_) {
    if (denominator(x) != 1) throw InputError("one-parameter subgroup must be integral");
  }
  if (primitive_direction(lambda_) != lambda_) throw InputError("one-parameter subgroup must be primitive");
}

OneParamSubgroup OneParamSubgroup::along(const QVector& direction) {
  if (is_zero(direction)) throw InputError("one-parameter subgroup must be nonzero");
  return OneParamSubgroup(primitive_direction(direction));
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::StrictlySemistable: return "StrictlySemistable";
    case Stability::Unstable: return "Unstable";
  }
  return "?";
}

const char* to_string(CellKind k) { return k == CellKind::Chamber ? "Chamber" : "WallCell"; }

// ---------------------------------------------------------------------------
// mu, M, classification

namespace {

void check_point(const QVector& p, const WeightConfiguration& w) {
  if (p.size() != w.dim()) throw InputError("linearization point has wrong dimension");
}

void check_states(const StateSet& s, const WeightConfiguration& w) {
  if (s.empty()) throw InputError("state set must be nonempty");
  if (s.indices().back() >= w.size()) throw InputError("state index out of range");
}

// Signed distance at level one from `point` to conv(S).
SignedDistance level_one_distance(const StateSet& s, const QVector& point, const WeightConfiguration& w) {
  if (w.affine_dim(s) == w.dim()) {
    const auto& fs = w.facets(s);
    std::optional<Rational> best;
    bool inside = true;
    bool boundary = false;
    for (const auto& f : fs) {
      Rational slack = f.slack(point);
      if (slack < 0) {
        inside = false;
        break;
      }
      if (slack == 0) boundary = true;
      Rational d2 = slack * slack / w.gram().dual_norm2(f.a);
      if (!best || d2 < *best) best = std::move(d2);
    }
    if (inside) return boundary ? SignedDistance{0, 0} : SignedDistance{-1, *best};
  }
  const QVector beta = stratum_vector(s, point, w);
  if (is_zero(beta)) return {0, 0};
  return {1, w.gram().norm2(beta)};
}

}  // namespace

StateSet state_set(const ProjPoint& x, const WeightConfiguration& w) {
  std::vector<std::size_t> idx;
  for (const auto& [i, v] : x.entries) {
    if (i >= w.size()) throw InputError("point coordinate index out of range");
    if (v != 0) idx.push_back(i);
  }
  if (idx.empty()) throw InputError("projective point must have a nonzero coordinate");
  return StateSet::from_indices(idx);
}

Rational mu(const StateSet& s, const OneParamSubgroup& lambda, const LinearizationClass& l,
            const WeightConfiguration& w) {
  check_states(s, w);
  check_point(l.p(), w);
  if (lambda.lambda().size() != w.dim()) throw InputError("one-parameter subgroup has wrong dimension");
  std::optional<Rational> best;
  for (auto i : s.indices()) {
    Rational v = lambda.pairing(sub(scaled(w.weight(i), l.d()), l.p()));
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

SignedDistance bigM(const StateSet& s, const LinearizationClass& l, const WeightConfiguration& w) {
  check_states(s, w);
  check_point(l.p(), w);
  SignedDistance sd = level_one_distance(s, l.normalized(), w);
  sd.squared *= l.d() * l.d();
  return sd;
}

Stability classify(const StateSet& s, const LinearizationClass& l, const WeightConfiguration& w) {
  const int sg = bigM(s, l, w).sign;
  return sg < 0 ? Stability::Stable : sg == 0 ? Stability::StrictlySemistable : Stability::Unstable;
}

Stability classify(const ProjPoint& x, const LinearizationClass& l, const WeightConfiguration& w) {
  return classify(state_set(x, w), l, w);
}

std::size_t stabilizer_dim(const StateSet& s, const WeightConfiguration& w) {
  check_states(s, w);
  return w.dim() - w.affine_dim(s);
}

// ---------------------------------------------------------------------------
// Ample cone and families

AmpleCone g_ample_cone(const WeightConfiguration& w) {
  std::vector<QVector> distinct = w.weights();
  std::sort(distinct.begin(), distinct.end(), lex_less);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  AmpleCone cone{{}, {}, geom::QPolytope(distinct)};
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    std::vector<QVector> others;
    for (std::size_t j = 0; j < distinct.size(); ++j) {
      if (j != i) others.push_back(distinct[j]);
    }
    if (others.empty() || geom::hull_membership(distinct[i], geom::QPolytope(others)) == geom::Membership::Outside) {
      cone.slice_vertices.push_back(distinct[i]);
    }
  }
  for (const auto& v : cone.slice_vertices) {
    QVector g = v;
    g.emplace_back(1);
    cone.cone_generators.push_back(std::move(g));
  }
  return cone;
}

bool is_effective(const LinearizationClass& l, const WeightConfiguration& w) {
  check_point(l.p(), w);
  return w.hull_contains(l.normalized(), w.all());
}

StateFamily semistable_family(const QVector& point, const WeightConfiguration& w) {
  check_point(point, w);
  return w.semistable_states(point);
}

StateFamily stable_family(const QVector& point, const WeightConfiguration& w) {
  check_point(point, w);
  return w.stable_states(point);
}

std::optional<StateFamily> git_class(const LinearizationClass& l, const WeightConfiguration& w) {
  if (!is_effective(l, w)) return std::nullopt;
  return semistable_family(l.normalized(), w);
}

// ---------------------------------------------------------------------------
// Adapted subgroups, strata, limits

QVector stratum_vector(const StateSet& s, const QVector& point, const WeightConfiguration& w) {
  check_states(s, w);
  check_point(point, w);
  return geom::closest_point(w.polytope(s).translated(scaled(point, -1)), w.gram());
}

Adapted adapted(const StateSet& s, const LinearizationClass& l, const WeightConfiguration& w) {
  check_point(l.p(), w);
  QVector beta = stratum_vector(s, l.normalized(), w);
  if (is_zero(beta)) throw DomainError("AdaptedUndefined", "adapted subgroup is undefined for semistable points");
  OneParamSubgroup lambda = OneParamSubgroup::along(w.gram().lower(beta));
  return {std::move(beta), std::move(lambda), bigM(s, l, w)};
}

Adapted adapted(const ProjPoint& x, const LinearizationClass& l, const WeightConfiguration& w) {
  return adapted(state_set(x, w), l, w);
}

std::size_t Stratification::assign(const StateSet& s) const {
  const auto it = index.find(s.mask());
  if (it == index.end()) throw InputError("state set not covered by this stratification");
  return it->second;
}

std::size_t Stratification::assign(const ProjPoint& x, const WeightConfiguration& w) const {
  return assign(state_set(x, w));
}

Stratification stratify(const WeightConfiguration& w, const LinearizationClass& l) {
  check_point(l.p(), w);
  const QVector point = l.normalized();
  const std::uint64_t full = w.all().mask();
  std::map<QVector, StateFamily, decltype(&lex_less)> groups(&lex_less);
  const QVector origin = zeros(w.dim());
  std::set<std::uint64_t> semistable;
  for (const auto& s : w.semistable_states(point)) semistable.insert(s.mask());
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    const StateSet s = StateSet::from_mask(mask);
    if (semistable.contains(mask)) {
      groups[origin].push_back(s);
    } else {
      groups[stratum_vector(s, point, w)].push_back(s);
    }
  }
  Stratification out;
  for (auto& [beta, family] : groups) {
    std::sort(family.begin(), family.end());
    out.strata.push_back({beta, w.gram().norm2(beta), std::move(family)});
  }
  std::sort(out.strata.begin(), out.strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.d_squared != b.d_squared) return a.d_squared < b.d_squared;
    return lex_less(a.beta, b.beta);
  });
  for (std::size_t i = 0; i < out.strata.size(); ++i) {
    for (const auto& s : out.strata[i].member_states) out.index.emplace(s.mask(), i);
  }
  return out;
}

ProjPoint limit_point(const ProjPoint& x, const OneParamSubgroup& lambda, const WeightConfiguration& w) {
  const StateSet s = state_set(x, w);
  if (lambda.lambda().size() != w.dim()) throw InputError("one-parameter subgroup has wrong dimension");
  std::optional<Rational> lowest;
  for (auto i : s.indices()) {
    Rational v = lambda.pairing(w.weight(i));
    if (!lowest || v < *lowest) lowest = std::move(v);
  }
  ProjPoint y;
  for (const auto& [i, v] : x.entries) {
    if (v != 0 && lambda.pairing(w.weight(i)) == *lowest) y.entries.emplace(i, v);
  }
  return y;
}

std::vector<FixedComponent> fixed_components(const OneParamSubgroup& lambda, const WeightConfiguration& w) {
  if (lambda.lambda().size() != w.dim()) throw InputError("one-parameter subgroup has wrong dimension");
  std::map<Rational, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < w.size(); ++i) groups[lambda.pairing(w.weight(i))].push_back(i);
  std::vector<FixedComponent> out;
  for (auto& [value, idx] : groups) out.push_back({value, std::move(idx)});
  return out;
}

}  // namespace vgit::git
