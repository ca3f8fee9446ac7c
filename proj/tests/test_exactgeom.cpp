#include "doctest.h"

#include <random>

#include "vgit/errors.hpp"
#include "vgit/exactgeom.hpp"
#include "vgit/lp.hpp"

using namespace vgit;
using namespace vgit::geom;

namespace {

Rational q(long a, long b = 1) { return Rational(a) / b; }
QVector v(std::initializer_list<Rational> xs) { return QVector(xs); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(to_string(q(-6, 4)) == "-3/2");
  CHECK(to_string(q(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK(primitive_direction(v({q(2, 3), q(-4, 3)})) == v({1, -2}));
}

TEST_CASE("hull membership") {
  QPolytope square({v({0, 0}), v({2, 0}), v({0, 2}), v({2, 2})});
  CHECK(hull_membership(v({1, 1}), square) == Membership::Interior);
  CHECK(hull_membership(v({1, 0}), square) == Membership::Boundary);
  CHECK(hull_membership(v({3, 1}), square) == Membership::Outside);
  QPolytope segment({v({0, 0}), v({2, 2})});
  CHECK(hull_membership(v({1, 1}), segment) == Membership::Boundary);
  CHECK(hull_membership(v({1, 0}), segment) == Membership::Outside);
  QPolytope interval({v({0}), v({2})});
  CHECK(hull_membership(v({q(1, 2)}), interval) == Membership::Interior);
}

TEST_CASE("affine dimension") {
  CHECK(affine_dim({v({1, 1})}) == 0);
  CHECK(affine_dim({v({0, 0}), v({1, 1}), v({2, 2})}) == 1);
  CHECK(affine_dim({v({0, 0}), v({1, 0}), v({0, 1})}) == 2);
}

TEST_CASE("closest point") {
  const auto id = GramForm::identity(2);
  QPolytope edge({v({1, 0}), v({0, 1})});
  CHECK(closest_point(edge, id) == v({q(1, 2), q(1, 2)}));
  QPolytope tri({v({1, 1}), v({3, 1}), v({1, 3})});
  CHECK(closest_point(tri, id) == v({1, 1}));
  QPolytope around({v({-1, -1}), v({1, -1}), v({0, 2})});
  CHECK(closest_point(around, id) == v({0, 0}));

  // Under a skewed form the closest point moves along the edge.
  GramForm g({{2, 0}, {0, 1}});
  const auto cp = closest_point_certified(edge, g);
  CHECK(cp.point == v({q(1, 3), q(2, 3)}));
  CHECK(verify_closest_point(edge, g, cp));
  CHECK_FALSE(verify_closest_point(edge, g, {v({q(1, 2), q(1, 2)}), {q(1, 2), q(1, 2)}}));
}

TEST_CASE("closest point agrees with a brute-force face search") {
  // Oracle: minimize over every affinely independent subset by projecting
  // onto its affine hull and keeping projections inside the simplex.
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-4, 4);
  const auto id = GramForm::identity(2);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<QVector> pts;
    const int count = 1 + trial % 5;
    for (int i = 0; i < count; ++i) pts.push_back(v({coord(rng), coord(rng)}));
    QPolytope poly(pts);
    const QVector got = closest_point(poly, id);
    std::optional<Rational> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Rational d = dot(pts[i], pts[i]);
      if (!best || d < *best) best = d;
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const QVector e = sub(pts[j], pts[i]);
        const Rational ee = dot(e, e);
        if (ee == 0) continue;
        const Rational t = -dot(pts[i], e) / ee;
        if (t < 0 || t > 1) continue;
        const QVector x = add(pts[i], scaled(e, t));
        if (dot(x, x) < *best) best = dot(x, x);
      }
    }
    if (hull_membership(zeros(2), poly) != Membership::Outside) best = 0;
    CHECK(dot(got, got) == *best);
  }
}

TEST_CASE("signed distance") {
  const auto id = GramForm::identity(1);
  QPolytope interval({v({0}), v({1}), v({2})});
  auto sd = signed_distance(v({q(1, 2)}), interval, id);
  CHECK(sd.sign == -1);
  CHECK(sd.squared == q(1, 4));
  sd = signed_distance(v({q(1, 2)}), QPolytope({v({2})}), id);
  CHECK(sd.sign == 1);
  CHECK(sd.squared == q(9, 4));
  sd = signed_distance(v({2}), interval, id);
  CHECK(sd.sign == 0);
  CHECK(SignedDistance{-1, 4} < SignedDistance{-1, 1});
  CHECK(SignedDistance{0, 0} < SignedDistance{1, 1});
}

TEST_CASE("gram form validation") {
  CHECK_THROWS_AS(GramForm({{1, 2}, {2, 1}}), InputError);
  CHECK_THROWS_AS(GramForm({{1, 0}, {1, 1}}), InputError);
  CHECK(GramForm::identity(3).is_identity());
}

TEST_CASE("hyperplane canonical form") {
  auto h = QHyperplane::from_equation(v({-2, 4}), 6);
  CHECK(h.normal == v({1, -2}));
  CHECK(h.offset == -3);
  CHECK_THROWS_AS(QHyperplane::from_equation(v({0, 0}), 1), InputError);
}

TEST_CASE("facets of a square") {
  auto fs = facets({v({0, 0}), v({2, 0}), v({0, 2}), v({2, 2}), v({1, 1})});
  CHECK(fs.size() == 4);
  for (const auto& f : fs) CHECK(f.slack(v({1, 1})) == 1);
}

TEST_CASE("exact LP") {
  // max x0 + x1 with x0 + x1 + s = 4, x0 - x1 = 0
  auto r = lp::maximize({{1, 1, 1}, {1, -1, 0}}, {4, 0}, {1, 1, 0});
  CHECK(r.status == lp::Status::Optimal);
  CHECK(r.value == 4);
  r = lp::maximize({{1, 1}}, {-1}, {1, 0});
  CHECK(r.status == lp::Status::Infeasible);
  r = lp::maximize({{1, -1}}, {0}, {1, 0});
  CHECK(r.status == lp::Status::Unbounded);
}

TEST_CASE("region enumeration") {
  QPolytope square({v({0, 0}), v({2, 0}), v({0, 2}), v({2, 2})});
  std::vector<QHyperplane> hs{QHyperplane::from_equation(v({1, 0}), 1), QHyperplane::from_equation(v({0, 1}), 1),
                              QHyperplane::from_equation(v({1, -1}), 0)};
  auto rc = enumerate_regions(hs, square);
  CHECK(rc.regions.size() == 6);
  for (const auto& r : rc.regions) {
    CHECK(rc.locate(r.witness) == std::optional<std::size_t>(&r - rc.regions.data()));
  }
  // Each of the 6 regions borders 2 others across interior facets.
  CHECK(rc.adjacency.size() == 6);
  auto fc = enumerate_faces(rc);
  std::size_t by_dim[3] = {0, 0, 0};
  for (const auto& f : fc.faces) ++by_dim[f.dim];
  CHECK(by_dim[2] == 6);
  CHECK(by_dim[0] == 9);   // corners, four side midpoints, center
  CHECK(by_dim[0] + by_dim[2] == by_dim[1] + 1);  // Euler characteristic of a disk

  CHECK_THROWS_AS(enumerate_regions(hs, QPolytope({v({0, 0}), v({1, 1})})), InputError);
  auto none = enumerate_regions({}, square);
  CHECK(none.regions.size() == 1);
  CHECK(none.regions[0].witness == v({1, 1}));
}
