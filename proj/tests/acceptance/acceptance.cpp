// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Limits and sample sizes are fixed below.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "vgit/crossing.hpp"
#include "vgit/errors.hpp"
#include "vgit/io.hpp"
#include "vgit/pointconfig.hpp"

using namespace vgit;
using git::LinearizationClass;
using git::StateSet;
using git::WeightConfiguration;

namespace {

// --- pinned limits ----------------------------------------------------------

constexpr double kLimitExample = 1.0;      // seconds, criteria 1 and 2
constexpr double kLimitGm = 30.0;
constexpr double kLimitProperties = 60.0;
constexpr double kLimitFlips = 60.0;
constexpr int kConfigs = 50;               // random spanning configurations
constexpr int kLinsPerConfig = 20;
constexpr int kPointConfigs = 200;         // random configurations for the GM agreement
constexpr int kDeterminismConfigs = 12;
constexpr unsigned kSeed = 20240917;

// --- reporting --------------------------------------------------------------

struct Tally {
  long checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok && failures.size() == 8) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

bool report(int id, const std::string& name, const Tally& t, double seconds, double limit) {
  const bool in_time = seconds < limit;
  const bool pass = t.ok() && in_time;
  std::printf("criterion %d  %s  %-52s checks=%ld  %.2fs (limit %.0fs)\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              t.checks, seconds, limit);
  for (const auto& f : t.failures) std::printf("    violation: %s\n", f.c_str());
  if (!in_time) std::printf("    over the time limit\n");
  return pass;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- small helpers ----------------------------------------------------------

Rational q(long a, long b = 1) { return Rational(a) / b; }

Rational random_rational(std::mt19937& rng, long lo, long hi, long maxden) {
  std::uniform_int_distribution<long> den(1, maxden);
  const long d = den(rng);
  std::uniform_int_distribution<long> num(lo * d, hi * d);
  return Rational(num(rng)) / d;
}

std::set<std::uint64_t> masks(const git::StateFamily& f) {
  std::set<std::uint64_t> out;
  for (const auto& s : f) out.insert(s.mask());
  return out;
}

std::set<std::uint64_t> oracle_family(const oracle::Hulls& h, const oracle::Hulls::Local& local, bool stable) {
  std::set<std::uint64_t> out;
  for (std::uint64_t s = 1; s <= h.all(); ++s) {
    if (stable ? h.interior(local, s) : oracle::Hulls::in_hull(local, s)) out.insert(s);
  }
  return out;
}

std::set<std::uint64_t> oracle_family(const oracle::Hulls& h, const QVector& p, bool stable) {
  return oracle_family(h, h.at(p), stable);
}

// Sign of sum of s_i * sqrt(q_i) over at most three terms.
int sign_of_root_sum(const std::vector<std::pair<int, Rational>>& terms) {
  std::vector<Rational> pos;
  std::vector<Rational> neg;
  for (const auto& [s, v] : terms) {
    if (s == 0 || v == 0) continue;
    (s > 0 ? pos : neg).push_back(v);
  }
  if (pos.size() + neg.size() > 3) throw std::logic_error("too many terms");
  int flip = 1;
  if (pos.size() < neg.size()) {
    std::swap(pos, neg);
    flip = -1;
  }
  if (pos.empty()) return 0;
  if (neg.empty()) return flip;
  if (pos.size() == 1) {
    const int c = pos[0] < neg[0] ? -1 : pos[0] > neg[0] ? 1 : 0;
    return flip * c;
  }
  // sqrt(a) + sqrt(b) against sqrt(c)
  const Rational& a = pos[0];
  const Rational& b = pos[1];
  const Rational& c = neg[0];
  const Rational gap = a + b - c;
  if (gap >= 0) return flip * ((gap == 0 && a * b == 0) ? 0 : 1);
  const Rational lhs = 4 * a * b;
  const Rational rhs = gap * gap;
  return flip * (lhs > rhs ? 1 : lhs < rhs ? -1 : 0);
}

struct Family {
  std::vector<WeightConfiguration> configs;
  std::vector<oracle::Hulls> hulls;
};

// Random spanning configurations with dim <= 3 and at most 7 weights; about
// one in five has a repeated weight and one in four a non-identity form.
Family random_family(std::mt19937& rng, int count) {
  Family f;
  std::uniform_int_distribution<int> dim_d(1, 3);
  while (static_cast<int>(f.configs.size()) < count) {
    const std::size_t dim = dim_d(rng);
    std::uniform_int_distribution<int> m_d(static_cast<int>(dim) + 1, 7);
    const std::size_t m = m_d(rng);
    const int r = dim == 3 ? 2 : 3;
    std::uniform_int_distribution<int> e(-r, r);
    std::vector<QVector> ws;
    std::set<QVector, decltype(&lex_less)> seen(&lex_less);
    const bool allow_repeat = rng() % 5 == 0;
    while (ws.size() < m) {
      QVector x(dim);
      for (auto& c : x) c = e(rng);
      if (!allow_repeat && seen.contains(x)) continue;
      seen.insert(x);
      ws.push_back(x);
    }
    if (oracle::affine_rank(ws) != dim) continue;
    std::optional<geom::GramForm> gram;
    if (rng() % 4 == 0) {
      std::uniform_int_distribution<int> a_d(-1, 1);
      QMatrix a(dim, QVector(dim));
      for (auto& row : a) {
        for (auto& c : row) c = a_d(rng);
      }
      QMatrix g(dim, QVector(dim));
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
          for (std::size_t k = 0; k < dim; ++k) g[i][j] += a[k][i] * a[k][j];
          if (i == j) g[i][j] += 1;
        }
      }
      gram.emplace(g);
    }
    f.configs.emplace_back(dim, ws, std::vector<std::string>{}, gram);
    f.hulls.emplace_back(ws);
  }
  return f;
}

LinearizationClass random_lin(std::mt19937& rng, std::size_t dim) {
  QVector p(dim);
  for (auto& c : p) c = random_rational(rng, -4, 4, 4);
  std::uniform_int_distribution<int> d(1, 3);
  const Rational deg = d(rng);
  return {scaled(p, deg), deg};
}

// --- criterion 1 --------------------------------------------------------------

bool criterion_running_example() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  const WeightConfiguration w(1, {{0}, {1}, {2}});

  // Interval oracle over the seven state sets.
  const std::vector<Rational> wt{0, 1, 2};
  auto lo = [&](std::uint64_t s) { Rational v = 99; for (auto i : oracle::bits(s)) v = std::min(v, wt[i]); return v; };
  auto hi = [&](std::uint64_t s) { Rational v = -99; for (auto i : oracle::bits(s)) v = std::max(v, wt[i]); return v; };
  std::set<Rational> endpoints;
  for (std::uint64_t s = 1; s < 8; ++s) {
    endpoints.insert(lo(s));
    endpoints.insert(hi(s));
  }
  const Rational left = *endpoints.begin();
  const Rational right = *endpoints.rbegin();

  const auto walls = git::walls(w);
  t.expect(walls.size() == endpoints.size(), "wall count");
  std::size_t boundary = 0;
  for (const auto& wl : walls) {
    const Rational x = wl.hyperplane.offset / wl.hyperplane.normal[0];
    t.expect(endpoints.contains(x), "wall at " + to_string(x));
    t.expect(wl.is_boundary == (x == left || x == right), "boundary flag at " + to_string(x));
    boundary += wl.is_boundary ? 1 : 0;
  }
  t.expect(boundary == 2, "two boundary walls");

  const auto cc = git::chamber_complex(w);
  std::vector<Rational> mids;
  for (auto it = endpoints.begin(); std::next(it) != endpoints.end(); ++it) mids.push_back((*it + *std::next(it)) / 2);
  t.expect(cc.chambers.size() == mids.size(), "chamber count");
  for (std::size_t i = 0; i < std::min(mids.size(), cc.chambers.size()); ++i) {
    t.expect(cc.chambers[i].witness.normalized() == QVector{mids[i]}, "chamber witness");
  }
  t.expect(cc.cells.size() == mids.size() + endpoints.size(), "cell count");

  const LinearizationClass half({q(1, 2)}, Rational(1));
  const Rational p = q(1, 2);
  git::ProjPoint ones{{{0, 1}, {1, 1}, {2, 1}}};
  const bool stable_oracle = lo(7) < p && p < hi(7);
  t.expect(stable_oracle, "oracle: [1:1:1] stable at 1/2");
  t.expect(git::classify(ones, half, w) == git::Stability::Stable, "[1:1:1] Stable");
  git::ProjPoint e2{{{2, 1}}};
  const bool unstable_oracle = p < lo(4) || p > hi(4);
  t.expect(unstable_oracle, "oracle: {2} unstable");
  t.expect(git::classify(e2, half, w) == git::Stability::Unstable, "{2} Unstable");
  const Rational beta_oracle = p < lo(4) ? lo(4) - p : hi(4) - p;
  t.expect(git::adapted(e2, half, w).beta == QVector{beta_oracle}, "beta = 3/2");
  t.expect(beta_oracle == q(3, 2), "oracle beta");

  const auto cell = cc.locate_cell({1}, w);
  t.expect(cell.has_value(), "cell at 1");
  if (cell) {
    const auto x = crossing::cross_wall(cc, *cell, w);
    t.expect(x.components.size() == 1, "one flip component");
    if (!x.components.empty()) {
      const auto& c = x.components[0];
      t.expect(c.d_plus == 0 && c.d_minus == 0, "d+ = d- = 0");
      t.expect(c.codim == 1, "codim 1");
      t.expect(c.plus_weights == std::vector<Rational>{1}, "plus weights {1}");
      t.expect(c.minus_weights == std::vector<Rational>{1}, "minus weights {1}");
      // m - 1 - |weights on the wall|
      t.expect(c.codim == 3 - 1 - 1, "codim oracle");
    }
  }
  return report(1, "running example, weights {0,1,2}", t, since(t0), kLimitExample);
}

// --- criterion 2 --------------------------------------------------------------

// The printed numerical criterion, evaluated over all subsets of points.
git::Stability printed_criterion(const std::vector<QVector>& pts, const std::vector<long>& k, std::size_t n) {
  const long total = std::accumulate(k.begin(), k.end(), 0L);
  bool strict = true;
  const std::uint64_t all = (std::uint64_t{1} << pts.size()) - 1;
  for (std::uint64_t s = 1; s <= all; ++s) {
    oracle::Mat rows;
    for (auto i : oracle::bits(s)) rows.push_back(pts[i]);
    const std::size_t r = oracle::rank(rows, n + 1);
    if (r > n) continue;
    long inside = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto with = rows;
      with.push_back(pts[i]);
      if (oracle::rank(with, n + 1) == r) inside += k[i];
    }
    const long lhs = static_cast<long>(n + 1) * inside;
    const long rhs = static_cast<long>(r) * total;
    if (lhs > rhs) return git::Stability::Unstable;
    if (lhs == rhs) strict = false;
  }
  return strict ? git::Stability::Stable : git::Stability::StrictlySemistable;
}

bool criterion_points_on_line() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  const std::vector<long> k{1, 1, 1, 1};
  const pconf::KVector kk{1, 1, 1, 1};
  auto line = [](std::initializer_list<long> ts) {
    std::vector<QVector> pts;
    for (auto x : ts) pts.push_back({Rational(1), Rational(x)});
    return pts;
  };
  const std::vector<std::pair<std::vector<QVector>, git::Stability>> cases{
      {line({0, 1, 2, 3}), git::Stability::Stable},
      {line({0, 0, 2, 3}), git::Stability::StrictlySemistable},
      {line({0, 0, 0, 3}), git::Stability::Unstable},
  };
  for (const auto& [pts, want] : cases) {
    const auto got = pconf::is_semistable(pconf::PointConfig(1, pts), kk);
    t.expect(printed_criterion(pts, k, 1) == want, std::string("oracle ") + git::to_string(want));
    t.expect(got == want, std::string("engine ") + git::to_string(want));
  }
  auto nonempty_oracle = [](const std::vector<long>& kv, long n) {
    return (n + 1) * *std::max_element(kv.begin(), kv.end()) <= std::accumulate(kv.begin(), kv.end(), 0L);
  };
  t.expect(!nonempty_oracle({3, 1, 1}, 1) && !pconf::nonempty_ss({3, 1, 1}, 1), "nonempty_ss(3,1,1) false");
  t.expect(nonempty_oracle({2, 1, 1}, 1) && pconf::nonempty_ss({2, 1, 1}, 1), "nonempty_ss(2,1,1) true");
  return report(2, "four weighted points on P^1", t, since(t0), kLimitExample);
}

// --- criterion 3 --------------------------------------------------------------

bool criterion_gm() {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{1, 4}, {1, 3}}) {
    const auto r = pconf::gm_crosscheck(n, m);
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ") ";
    t.expect(r.walls_match, tag + "wall sets");
    t.expect(r.gm_regions == r.config_regions, tag + "region counts");
    t.expect(r.match, tag + "region classification");
    for (const auto& reg : r.regions) {
      t.expect(reg.signature_match, tag + "signature at " + to_string(reg.witness));
      t.expect(reg.configs_agreeing == reg.configs_checked, tag + "configs at " + to_string(reg.witness));
    }
  }

  std::mt19937 rng(kSeed + 3);
  std::uniform_int_distribution<int> kd(1, 3);
  const auto chart4 = pconf::chart(pconf::gm_weights(1, 4));
  const auto chart3 = pconf::chart(pconf::gm_weights(1, 3));
  int engineered = 0;
  for (int trial = 0; trial < kPointConfigs; ++trial) {
    const std::size_t m = trial % 2 == 0 ? 4 : 3;
    std::vector<QVector> pts;
    for (std::size_t i = 0; i < m; ++i) pts.push_back({random_rational(rng, -5, 5, 3), random_rational(rng, -5, 5, 3)});
    // Every third configuration has engineered coincidences: rescaled
    // copies of one point (two or three of them).
    if (trial % 3 == 0) {
      pts[1] = scaled(pts[0], q(-2, 3));
      if (trial % 2 == 0 && m == 4) pts[2] = scaled(pts[0], 5);
      ++engineered;
    }
    for (auto& p : pts) {
      if (is_zero(p)) p[0] = 1;
    }
    std::vector<long> k(m);
    pconf::KVector kk;
    for (auto& x : k) {
      x = kd(rng);
      kk.emplace_back(x);
    }
    const auto oracle_class = printed_criterion(pts, k, 1);
    const pconf::PointConfig cfg(1, pts);
    const auto engine = pconf::is_semistable(cfg, kk);
    t.expect(engine == oracle_class, "criterion vs oracle, trial " + std::to_string(trial));
    git::Stability via;
    try {
      via = pconf::classify_via_pluecker(cfg, kk, m == 4 ? chart4 : chart3);
    } catch (const DomainError& e) {
      // Non-spanning configurations are unstable for every k.
      t.expect(e.code() == "NotSpanning" && oracle_class == git::Stability::Unstable, "NotSpanning but not unstable");
      continue;
    }
    t.expect(via == engine, "Pluecker route vs criterion, trial " + std::to_string(trial));
  }
  t.expect(engineered >= kPointConfigs / 4, "engineered coincidences present");
  return report(3, "Gelfand-MacPherson cross-check (1,4), (1,3)", t, since(t0), kLimitGm);
}

// --- criterion 4 --------------------------------------------------------------

bool criterion_properties(const Family& fam, std::mt19937& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::uniform_int_distribution<int> small(-3, 3);
  for (std::size_t ci = 0; ci < fam.configs.size(); ++ci) {
    const auto& w = fam.configs[ci];
    const auto& h = fam.hulls[ci];
    const std::string tag = "config " + std::to_string(ci);
    const std::size_t dim = w.dim();

    std::vector<LinearizationClass> lins;
    for (int i = 0; i < kLinsPerConfig; ++i) lins.push_back(random_lin(rng, dim));
    // Also some linearizations on weights and on wall intersections.
    lins.push_back(LinearizationClass::at_level_one(w.weight(0)));
    lins.push_back(LinearizationClass(scaled(barycenter(w.weights()), 2), Rational(2)));

    for (std::size_t li = 0; li < lins.size(); ++li) {
      const auto& l = lins[li];
      const QVector p = l.normalized();
      const auto local = h.at(p);

      // (a) sign of M against hull membership
      std::vector<git::SignedDistance> ms(h.all() + 1);
      for (std::uint64_t s = 1; s <= h.all(); ++s) {
        const auto S = StateSet::from_mask(s);
        ms[s] = git::bigM(S, l, w);
        const int want = h.sign(local, s);
        t.expect(ms[s].sign == want, tag + " sign of M");
        const auto cls = git::classify(S, l, w);
        t.expect((cls == git::Stability::Stable) == (want < 0) && (cls == git::Stability::Unstable) == (want > 0),
                 tag + " classification");
      }

      // (b) convexity and homogeneity
      const auto& l2 = lins[(li + 1) % lins.size()];
      const LinearizationClass sum(add(l.p(), l2.p()), l.d() + l2.d());
      const Rational alpha = random_rational(rng, 1, 3, 3);
      const LinearizationClass scaled_l(scaled(l.p(), alpha), l.d() * alpha);
      for (std::uint64_t s = 1; s <= h.all(); ++s) {
        const auto S = StateSet::from_mask(s);
        const auto m2 = git::bigM(S, l2, w);
        const auto m12 = git::bigM(S, sum, w);
        const int slack = sign_of_root_sum({{ms[s].sign, ms[s].squared}, {m2.sign, m2.squared}, {-m12.sign, m12.squared}});
        t.expect(slack >= 0, tag + " subadditivity");
        const auto ma = git::bigM(S, scaled_l, w);
        t.expect(ma.sign == ms[s].sign && ma.squared == alpha * alpha * ms[s].squared, tag + " homogeneity");
      }

      // (c) stratification partitions the lattice; beta = 0 exactly on the semistable sets
      const auto st = git::stratify(w, l);
      std::vector<int> hits(h.all() + 1, 0);
      for (const auto& stratum : st.strata) {
        const bool zero = is_zero(stratum.beta);
        t.expect(stratum.d_squared == w.gram().norm2(stratum.beta), tag + " stratum norm");
        for (const auto& S : stratum.member_states) {
          ++hits[S.mask()];
          t.expect(zero == oracle::Hulls::in_hull(local, S.mask()), tag + " beta = 0 iff semistable");
        }
      }
      for (std::uint64_t s = 1; s <= h.all(); ++s) t.expect(hits[s] == 1, tag + " partition");

      // (d) adapted certificate and (e) limit invariance, on unstable sets
      for (std::uint64_t s = 1; s <= h.all(); ++s) {
        if (ms[s].sign <= 0) continue;
        const auto S = StateSet::from_mask(s);
        const auto a = git::adapted(S, l, w);
        const Rational mu = git::mu(S, a.lambda, l, w);
        t.expect(mu > 0, tag + " adapted mu positive");
        t.expect(mu * mu == ms[s].squared * w.gram().dual_norm2(a.lambda.lambda()), tag + " mu^2 = M^2 |lambda|^2");
        t.expect(a.M == ms[s], tag + " adapted M");
        // No other direction does better, the opposite one in particular.
        std::vector<QVector> others{a.lambda.inverse().lambda()};
        for (int r = 0; r < 2; ++r) {
          QVector v(dim);
          for (auto& c : v) c = small(rng);
          if (!is_zero(v)) others.push_back(v);
        }
        for (const auto& v : others) {
          const auto other = git::OneParamSubgroup::along(v);
          const Rational mo = git::mu(S, other, l, w);
          if (mo > 0) {
            t.expect(mo * mo <= ms[s].squared * w.gram().dual_norm2(other.lambda()), tag + " adapted is optimal");
          }
        }

        git::ProjPoint x;
        for (auto i : S.indices()) x.entries[i] = random_rational(rng, 1, 4, 3);
        const auto x0 = git::limit_point(x, a.lambda, w);
        Rational least = 0;
        bool first = true;
        for (auto i : S.indices()) {
          const Rational v = dot(a.lambda.lambda(), w.weight(i));
          if (first || v < least) least = v;
          first = false;
        }
        std::uint64_t face = 0;
        for (auto i : S.indices()) {
          if (dot(a.lambda.lambda(), w.weight(i)) == least) face |= std::uint64_t{1} << i;
        }
        const auto s0 = git::state_set(x0, w);
        t.expect(s0.mask() == face, tag + " limit support");
        t.expect(git::bigM(s0, l, w) == ms[s], tag + " M invariant under the limit");
      }
    }

    // (f) refinement at every cell in the closure of a chamber
    const auto cc = git::chamber_complex(w);
    std::vector<std::set<std::uint64_t>> cell_ss;
    std::vector<std::set<std::uint64_t>> cell_st;
    for (const auto& c : cc.cells) {
      const auto local = h.at(c.witness.normalized());
      cell_ss.push_back(oracle_family(h, local, false));
      cell_st.push_back(oracle_family(h, local, true));
    }
    for (std::size_t ch = 0; ch < cc.chambers.size(); ++ch) {
      const auto& ss_c = cell_ss[ch];
      const auto& st_c = cell_st[ch];
      for (std::size_t cell = 0; cell < cc.cells.size(); ++cell) {
        crossing::InclusionReport rep;
        try {
          rep = crossing::ss_inclusions(cc, cell, ch, w);
        } catch (const DomainError& e) {
          t.expect(e.code() == "NotInClosure", tag + " unexpected " + e.code());
          continue;
        }
        const auto& ss_f = cell_ss[cell];
        const auto& st_f = cell_st[cell];
        t.expect(std::includes(ss_f.begin(), ss_f.end(), ss_c.begin(), ss_c.end()), tag + " ss(C) in ss(F)");
        t.expect(std::includes(st_c.begin(), st_c.end(), st_f.begin(), st_f.end()), tag + " stable(F) in stable(C)");
        t.expect(rep.semistable_inclusion && rep.stable_inclusion, tag + " inclusion report");
      }
    }

    // (g) boundary points of the slice carry no stable set
    for (int r = 0; r < 4; ++r) {
      QVector c(dim);
      for (auto& x : c) x = small(rng);
      if (is_zero(c)) continue;
      Rational best = dot(c, w.weight(0));
      for (const auto& x : w.weights()) best = std::max(best, dot(c, x));
      std::vector<QVector> face;
      for (const auto& x : w.weights()) {
        if (dot(c, x) == best) face.push_back(x);
      }
      const QVector b = barycenter(face);
      t.expect(oracle_family(h, b, true).empty(), tag + " oracle boundary");
      t.expect(git::stable_family(b, w).empty(), tag + " stable family at the boundary");
      const auto l = LinearizationClass::at_level_one(b);
      for (std::uint64_t s = 1; s <= h.all(); ++s) {
        t.expect(git::classify(StateSet::from_mask(s), l, w) != git::Stability::Stable, tag + " Stable at the boundary");
      }
    }
  }
  return report(4, "property suite on random configurations", t, since(t0), kLimitProperties);
}

// --- criterion 5 --------------------------------------------------------------

int oracle_codim(const oracle::Hulls& h, const WeightConfiguration& w, const QVector& f, const geom::QHyperplane& wall) {
  const auto local = h.at(f);
  std::uint64_t level = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wall.eval(w.weight(i)) == 0) level |= std::uint64_t{1} << i;
  }
  int top = -1;
  int piv = -1;
  for (std::uint64_t s = 1; s <= h.all(); ++s) {
    const int excess = oracle::popcount(s) - 1 - static_cast<int>(h.affrank(s));
    if (h.interior(local, s)) top = std::max(top, excess);
    if ((s & ~level) == 0 && oracle::Hulls::in_relint(local, s)) piv = std::max(piv, excess);
  }
  return top - piv;
}

bool criterion_flips(const Family& fam) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  long crossed = 0;
  for (std::size_t ci = 0; ci < fam.configs.size(); ++ci) {
    const auto& w = fam.configs[ci];
    const auto& h = fam.hulls[ci];
    const std::string tag = "config " + std::to_string(ci);
    const auto cc = git::chamber_complex(w);
    for (std::size_t cell = 0; cell < cc.cells.size(); ++cell) {
      const auto& c = cc.cells[cell];
      if (c.kind != git::CellKind::WallCell || c.dim + 1 != w.dim()) continue;
      crossing::RelevantPair pair;
      try {
        pair = crossing::relevant_chambers(cc, cell, w);
      } catch (const DomainError& e) {
        t.expect(e.code() == "BoundaryCell", tag + " relevant_chambers: " + e.code());
        continue;
      }
      crossing::WallCrossing a;
      crossing::WallCrossing b;
      try {
        a = crossing::cross_wall(cc, pair, w);
        b = crossing::cross_wall(cc, crossing::swapped(pair), w);
      } catch (const std::exception& e) {
        t.expect(false, tag + " cross_wall threw: " + e.what());
        continue;
      }
      ++crossed;
      const QVector f = c.witness.normalized();
      const auto& hyper = cc.walls[pair.wall].hyperplane;
      const int codim = oracle_codim(h, w, f, hyper);
      t.expect(!a.components.empty() && a.components.size() == b.components.size(), tag + " components");
      for (std::size_t k = 0; k < std::min(a.components.size(), b.components.size()); ++k) {
        const auto& x = a.components[k];
        const auto& y = b.components[k];
        t.expect(x.d_plus + x.d_minus + 1 == x.codim, tag + " d+ + d- + 1 = codim");
        t.expect(x.codim == codim, tag + " codim vs counting oracle");
        t.expect(y.lambda == x.lambda.inverse() && y.level == -x.level, tag + " swap negates lambda");
        t.expect(y.d_plus == x.d_minus && y.d_minus == x.d_plus, tag + " swap exchanges d");
        t.expect(y.plus_weights == x.minus_weights && y.minus_weights == x.plus_weights, tag + " swap exchanges weights");

        // Weights off the level set, read directly.
        std::vector<Rational> up;
        std::vector<Rational> down;
        for (const auto& chi : w.weights()) {
          const Rational v = dot(x.lambda.lambda(), chi) - x.level;
          if (v > 0) up.push_back(v);
          if (v < 0) down.push_back(-v);
        }
        std::sort(up.begin(), up.end());
        std::sort(down.begin(), down.end());
        t.expect(up == x.plus_weights && down == x.minus_weights, tag + " flip weights");
        const QVector plus_w = cc.chambers[pair.plus].witness.normalized();
        t.expect(dot(x.lambda.lambda(), plus_w) > x.level, tag + " lambda points to the plus chamber");
      }

      const auto st_f = oracle_family(h, f, true);
      const auto ss_f = oracle_family(h, f, false);
      const QVector cp = cc.chambers[pair.plus].witness.normalized();
      const QVector cm = cc.chambers[pair.minus].witness.normalized();
      const auto st_p = oracle_family(h, cp, true);
      const auto st_m = oracle_family(h, cm, true);
      std::set<std::uint64_t> both;
      std::set_intersection(st_p.begin(), st_p.end(), st_m.begin(), st_m.end(), std::inserter(both, both.end()));
      t.expect(st_f == both, tag + " stable(F) = stable(C+) and stable(C-)");
      for (const auto& side : {oracle_family(h, cp, false), oracle_family(h, cm, false)}) {
        t.expect(std::includes(ss_f.begin(), ss_f.end(), side.begin(), side.end()), tag + " ss(C) in ss(F)");
      }
      for (const auto& side : {st_p, st_m}) {
        t.expect(std::includes(ss_f.begin(), ss_f.end(), side.begin(), side.end()), tag + " stable(C) in ss(F)");
      }
      t.expect(a.stable_intersection && a.stable_union, tag + " engine family identities");
      t.expect(a.plus_report.semistable_inclusion && a.minus_report.semistable_inclusion, tag + " engine inclusions");
    }
  }
  t.expect(crossed > 0, "no interior walls crossed");
  const bool pass = report(5, "flip identity sweep", t, since(t0), kLimitFlips);
  std::printf("    %ld interior wall crossings\n", crossed);
  return pass;
}

// --- criterion 6 --------------------------------------------------------------

std::string canonical(const WeightConfiguration& w, const LinearizationClass& l) {
  const auto cc = git::chamber_complex(w);
  io::json cells = io::json::array();
  for (const auto& c : cc.cells) cells.push_back(io::cell_json(c));
  return io::dump({{"walls", io::walls_json(cc.walls)},
                   {"cells", cells},
                   {"chambers", cc.chambers.size()},
                   {"strata", io::stratification_json(git::stratify(w, l))}});
}

std::set<std::uint64_t> relabel(const git::StateFamily& f, const std::vector<std::size_t>& perm) {
  std::set<std::uint64_t> out;
  for (const auto& s : f) {
    std::uint64_t m = 0;
    for (auto i : s.indices()) m |= std::uint64_t{1} << perm[i];
    out.insert(m);
  }
  return out;
}

bool criterion_determinism(const Family& fam, std::mt19937& rng) {
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (int ci = 0; ci < kDeterminismConfigs && ci < static_cast<int>(fam.configs.size()); ++ci) {
    const auto& w = fam.configs[ci];
    const std::string tag = "config " + std::to_string(ci);
    const auto l = random_lin(rng, w.dim());
    const std::string first = canonical(w, l);
    t.expect(first == canonical(w, l), tag + " repeated run differs");

    // perm[new index] = old index
    std::vector<std::size_t> perm(w.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<QVector> moved;
    for (auto i : perm) moved.push_back(w.weight(i));
    const WeightConfiguration v(w.dim(), moved, {}, w.gram());

    const auto a = git::chamber_complex(w);
    const auto b = git::chamber_complex(v);
    t.expect(a.walls.size() == b.walls.size(), tag + " wall count");
    t.expect(a.chambers.size() == b.chambers.size(), tag + " chamber count");
    t.expect(a.cells.size() == b.cells.size(), tag + " cell count");
    for (std::size_t i = 0; i < std::min(a.walls.size(), b.walls.size()); ++i) {
      t.expect(a.walls[i].hyperplane == b.walls[i].hyperplane, tag + " wall hyperplanes");
      t.expect(masks(a.walls[i].pieces) == relabel(b.walls[i].pieces, perm), tag + " wall pieces");
    }
    for (std::size_t i = 0; i < std::min(a.cells.size(), b.cells.size()); ++i) {
      t.expect(a.cells[i].witness.normalized() == b.cells[i].witness.normalized(), tag + " cell witnesses");
      t.expect(masks(a.cells[i].signature) == relabel(b.cells[i].signature, perm), tag + " cell signatures");
    }
    const auto sa = git::stratify(w, l);
    const auto sb = git::stratify(v, l);
    t.expect(sa.strata.size() == sb.strata.size(), tag + " strata count");
    for (std::size_t i = 0; i < std::min(sa.strata.size(), sb.strata.size()); ++i) {
      t.expect(sa.strata[i].beta == sb.strata[i].beta, tag + " strata vectors");
      t.expect(masks(sa.strata[i].member_states) == relabel(sb.strata[i].member_states, perm), tag + " strata members");
    }
  }
  return report(6, "finiteness and determinism", t, since(t0), kLimitProperties);
}

}  // namespace

int main() {
  std::mt19937 rng(kSeed);
  bool ok = true;
  ok &= criterion_running_example();
  ok &= criterion_points_on_line();
  ok &= criterion_gm();
  const Family fam = random_family(rng, kConfigs);
  ok &= criterion_properties(fam, rng);
  ok &= criterion_flips(fam);
  ok &= criterion_determinism(fam, rng);
  std::printf("%s\n", ok ? "all criteria passed" : "some criteria FAILED");
  return ok ? 0 : 1;
}
