#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "qsr/geometry.hpp"
#include "qsr/oracle.hpp"

using namespace qsr;
using qsr::testing::Rng;
using qsr::testing::uniform;

namespace {

bool has_vertex(const ConvexPolygon2D& poly, Vec2 v, double eps = 1e-12) {
  return std::any_of(poly.vertices().begin(), poly.vertices().end(),
                     [&](Vec2 p) { return norm(p - v) <= eps; });
}

// Every point lies on the inner side of every hull edge.
bool encloses(const ConvexPolygon2D& hull, std::span<const Vec2> pts) {
  const auto& v = hull.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    for (const Vec2 p : pts)
      if (cross(b - a, p - a) < -1e-9) return false;
  }
  return true;
}

bool same_corner_set(const OrientedBox& a, const OrientedBox& b, double eps) {
  const auto ca = a.corners(), cb = b.corners();
  return std::all_of(ca.begin(), ca.end(), [&](const Point3& p) {
    return std::any_of(cb.begin(), cb.end(), [&](const Point3& q) { return distance(p, q) <= eps; });
  });
}

}  // namespace

TEST_SUITE("convex hull") {
  TEST_CASE("interior point of the unit square is dropped") {
    const std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const ConvexPolygon2D hull = convex_hull_2d(pts);
    CHECK(hull.size() == 4);
    CHECK_FALSE(has_vertex(hull, {0.5, 0.5}));
    CHECK(hull.area() == doctest::Approx(1.0));
  }

  TEST_CASE("a point just inside the base edge is excluded") {
    const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0.5, 0.01}, {0.5, 1}};
    const ConvexPolygon2D hull = convex_hull_2d(pts);
    CHECK(hull.size() == 3);
    CHECK_FALSE(has_vertex(hull, {0.5, 0.01}));
    CHECK(encloses(hull, pts));
  }

  TEST_CASE("collinear input is degenerate") {
    const std::vector<Vec2> pts{{0, 0}, {1, 1}, {2, 2}};
    CHECK_THROWS_AS(convex_hull_2d(pts), DegenerateInput);
    const std::vector<Vec2> two{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(convex_hull_2d(two), DegenerateInput);
  }

  TEST_CASE("hull is counterclockwise, encloses its input and is idempotent") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto pts = qsr::testing::random_cloud_2d(rng, 5 + trial % 60);
      const ConvexPolygon2D hull = convex_hull_2d(pts);
      REQUIRE(hull.size() >= 3);
      CHECK(hull.area() > 0.0);
      CHECK(encloses(hull, pts));
      for (const Vec2 v : hull.vertices()) CHECK(has_vertex(convex_hull_2d(pts), v));
      const ConvexPolygon2D again = convex_hull_2d(hull.vertices());
      CHECK(again.vertices() == hull.vertices());
    }
  }
}

TEST_SUITE("minimum oriented rectangle") {
  TEST_CASE("axis-aligned unit square") {
    const ConvexPolygon2D sq = convex_hull_2d(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const OrientedRect r = min_oriented_rect(sq);
    CHECK(r.center.x == doctest::Approx(0.5));
    CHECK(r.center.y == doctest::Approx(0.5));
    CHECK(r.half_x == doctest::Approx(0.5));
    CHECK(r.half_y == doctest::Approx(0.5));
    CHECK(r.yaw == doctest::Approx(0.0));
  }

  TEST_CASE("unit square rotated by 30 degrees") {
    std::vector<Vec2> pts;
    for (Vec2 p : {Vec2{-0.5, -0.5}, Vec2{0.5, -0.5}, Vec2{0.5, 0.5}, Vec2{-0.5, 0.5}})
      pts.push_back(rotate(p, kPi / 6) + Vec2{0.5, 0.5});
    const OrientedRect r = min_oriented_rect(convex_hull_2d(pts));
    CHECK(r.half_x == doctest::Approx(0.5));
    CHECK(r.half_y == doctest::Approx(0.5));
    CHECK(r.yaw == doctest::Approx(kPi / 6));
    CHECK(r.center.x == doctest::Approx(0.5));
  }

  TEST_CASE("never worse than a 0.1 degree brute-force sweep") {
    Rng rng(20);
    for (int trial = 0; trial < 50; ++trial) {
      const auto hull = convex_hull_2d(qsr::testing::random_cloud_2d(rng, 20));
      const OrientedRect r = min_oriented_rect(hull);
      const double sweep = qsr::testing::swept_min_rect_area(hull, 0.1 * kPi / 180.0);
      CHECK(r.area() <= sweep * (1.0 + 1e-6));
      CHECK(r.yaw >= 0.0);
      CHECK(r.yaw < kHalfPi);
      // contains every vertex
      for (const Vec2 v : hull.vertices()) {
        const Vec2 l = rotate(v - r.center, -r.yaw);
        CHECK(std::abs(l.x) <= r.half_x + 1e-9);
        CHECK(std::abs(l.y) <= r.half_y + 1e-9);
      }
    }
  }
}

TEST_SUITE("box fitting") {
  TEST_CASE("corners of a yaw-20 box give the box back") {
    const OrientedBox box({1.0, -2.0, 0.7}, {0.8, 0.3, 0.5}, 20.0 * kPi / 180.0);
    const auto corners = box.corners();
    const OrientedBox fit = fit_min_oriented_box(corners);
    CHECK(same_solid(fit, box));
    CHECK(fit.volume() == doctest::Approx(box.volume()));
  }

  TEST_CASE("single point inflates to the minimum extent") {
    const std::vector<Point3> one{{1, 2, 3}};
    const OrientedBox fit = fit_min_oriented_box(one);
    CHECK(fit.half_extents() == HalfExtents{kMinHalfExtent, kMinHalfExtent, kMinHalfExtent});
    CHECK(fit.center() == Point3{1, 2, 3});
  }

  TEST_CASE("segment and flat patch are inflated, not rejected") {
    const std::vector<Point3> seg{{0, 0, 0}, {1, 1, 0}};
    const OrientedBox s = fit_min_oriented_box(seg);
    CHECK(s.half_extents().x == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(s.half_extents().y == doctest::Approx(kMinHalfExtent));
    CHECK(s.half_extents().z == doctest::Approx(kMinHalfExtent));
    const std::vector<Point3> patch{{0, 0, 1}, {2, 0, 1}, {2, 1, 1}, {0, 1, 1}};
    CHECK(fit_min_oriented_box(patch).half_extents().z == doctest::Approx(kMinHalfExtent));
  }

  TEST_CASE("samples of a known box: fit contains them and stays tight") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const OrientedBox known = qsr::testing::random_box(rng, 0.2, 1.0);
      const auto pts = qsr::testing::random_points_in(rng, known, 1000);
      const OrientedBox fit = fit_min_oriented_box(pts);
      for (const Point3& p : pts) CHECK(fit.contains(p));
      CHECK(fit.volume() <= 1.05 * known.volume());
    }
  }

  TEST_CASE("non-finite points are rejected") {
    const std::vector<Point3> bad{{0, 0, 0}, {std::nan(""), 0, 0}};
    CHECK_THROWS(fit_min_oriented_box(bad));
  }
}

TEST_SUITE("box distance") {
  TEST_CASE("unit cubes three meters apart") {
    const OrientedBox a({0, 0, 0}, {0.5, 0.5, 0.5}, 0.0);
    const OrientedBox b({3, 0, 0}, {0.5, 0.5, 0.5}, 0.0);
    CHECK(box_distance(a, b) == doctest::Approx(2.0));
  }

  TEST_CASE("overlapping and face-flush boxes are at distance zero") {
    const OrientedBox a({0, 0, 0}, {0.5, 0.5, 0.5}, 0.0);
    CHECK(box_distance(a, OrientedBox({0.6, 0.2, 0}, {0.5, 0.5, 0.5}, 0.7)) == 0.0);
    CHECK(box_distance(a, OrientedBox({1.0, 0, 0}, {0.5, 0.5, 0.5}, 0.0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("vertical gap combines with the horizontal one") {
    const OrientedBox a({0, 0, 0}, {0.5, 0.5, 0.5}, 0.0);
    const OrientedBox b({4, 0, 4}, {0.5, 0.5, 0.5}, 0.0);
    CHECK(box_distance(a, b) == doctest::Approx(std::hypot(3.0, 3.0)));
  }

  TEST_CASE("rotated pairs: between separating-axis bound and sampled minimum") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      const auto [a, b] = qsr::testing::random_separated_pair(rng, 1.0);
      const double d = box_distance(a, b);
      const double sampled = oracle::sampled_distance(a, b, 100000, 100 + trial);
      CHECK(d <= sampled + 1e-9);
      CHECK(sampled - d <= 1e-3);
      CHECK(d >= qsr::testing::separating_axis_lower_bound(a, b) - 1e-9);
    }
  }

  TEST_CASE("exactly symmetric and triangle-consistent") {
    Rng rng(6);
    for (int trial = 0; trial < 300; ++trial) {
      const OrientedBox a = qsr::testing::random_box(rng);
      const OrientedBox b = qsr::testing::random_box(rng);
      const OrientedBox c = qsr::testing::random_box(rng);
      CHECK(box_distance(a, b) == box_distance(b, a));
      CHECK(box_distance(a, c) <= box_distance(a, b) + b.diameter() + box_distance(b, c) + 1e-9);
    }
  }
}

TEST_SUITE("box intersection") {
  TEST_CASE("overlapping cubes") {
    const auto a = OrientedBox::from_bounds({0, 0, 0}, {2, 2, 2});
    const auto b = OrientedBox::from_bounds({1, 1, 1}, {3, 3, 3});
    CHECK(box_intersection_volume(a, b) == doctest::Approx(1.0));
    const auto c = OrientedBox::from_bounds({5, 5, 5}, {6, 6, 6});
    CHECK(box_intersection_volume(a, c) == 0.0);
  }

  TEST_CASE("yaw-45 unit prism against the aligned one") {
    const OrientedBox a({0, 0, 0}, {0.5, 0.5, 0.5}, 0.0);
    const OrientedBox b({0, 0, 0}, {0.5, 0.5, 0.5}, kPi / 4);
    const double v = box_intersection_volume(a, b);
    // regular octagon left when a unit square loses four corner triangles
    CHECK(v == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-9));
    const double mc = oracle::monte_carlo_intersection_volume(a, b, 1000000, 42);
    CHECK(std::abs(v - mc) <= 0.01 * mc);
  }

  TEST_CASE("self-intersection is the volume; never above the smaller volume") {
    Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
      const OrientedBox a = qsr::testing::random_box(rng);
      const OrientedBox b = qsr::testing::random_box(rng, 0.05, 1.0, 0.8);
      CHECK(box_intersection_volume(a, a) == doctest::Approx(a.volume()).epsilon(1e-9));
      CHECK(box_intersection_volume(a, b) <= std::min(a.volume(), b.volume()) * (1 + 1e-12));
      CHECK(box_intersection_volume(a, b) == doctest::Approx(box_intersection_volume(b, a)));
    }
  }

  TEST_CASE("rigid motions leave distance and volume unchanged") {
    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
      const OrientedBox a = qsr::testing::random_box(rng, 0.05, 1.0, 0.8);
      const OrientedBox b = qsr::testing::random_box(rng, 0.05, 1.0, 0.8);
      const Point3 pivot{uniform(rng, -5, 5), uniform(rng, -5, 5), 0.0};
      const double theta = uniform(rng, -kPi, kPi);
      const Point3 shift{uniform(rng, -10, 10), uniform(rng, -10, 10), 0.0};
      auto move = [&](const OrientedBox& box) {
        const OrientedBox r = rotate_box_about_axis(box, pivot, theta);
        return OrientedBox(r.center() + shift, r.half_extents(), r.yaw());
      };
      CHECK(box_distance(move(a), move(b)) == doctest::Approx(box_distance(a, b)).epsilon(1e-6));
      CHECK(std::abs(box_intersection_volume(move(a), move(b)) - box_intersection_volume(a, b)) <=
            1e-6);
    }
  }
}

TEST_SUITE("rotation about a vertical axis") {
  TEST_CASE("zero and full turns") {
    const OrientedBox b({1, 2, 3}, {0.4, 0.2, 0.3}, 0.3);
    const OrientedBox same = rotate_box_about_axis(b, {5, 5, 0}, 0.0);
    CHECK(same.center() == b.center());
    CHECK(same.yaw() == b.yaw());
    CHECK(same_solid(rotate_box_about_axis(b, {5, 5, 0}, kTwoPi), b));
  }

  TEST_CASE("quarter turn about the own center rotates the corner set") {
    const OrientedBox b({1, 2, 3}, {0.4, 0.2, 0.3}, 0.3);
    const OrientedBox r = rotate_box_about_axis(b, b.center(), kHalfPi);
    CHECK(distance(r.center(), b.center()) < 1e-12);
    CHECK(r.yaw() == doctest::Approx(0.3 + kHalfPi));
    // non-square footprint: the rotated solid differs
    CHECK_FALSE(same_corner_set(r, b, kGeomEps));
    // each corner of b, turned by π/2 about the center, is a corner of r
    OrientedBox expected({1, 2, 3}, {0.2, 0.4, 0.3}, 0.3);
    CHECK(same_corner_set(r, expected, kGeomEps));
    const OrientedBox square({0, 0, 0}, {0.3, 0.3, 0.1}, 0.2);
    CHECK(same_corner_set(rotate_box_about_axis(square, square.center(), kHalfPi), square, kGeomEps));
  }

  TEST_CASE("center moves on a circle around the pivot") {
    const OrientedBox b({2, 0, 1}, {0.1, 0.1, 0.1}, 0.0);
    const OrientedBox r = rotate_box_about_axis(b, {0, 0, 0}, kHalfPi);
    CHECK(r.center().x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.center().y == doctest::Approx(2.0));
    CHECK(r.center().z == 1.0);
  }
}

TEST_CASE("box invariants: positive extents, finite values, yaw range") {
  CHECK_THROWS(OrientedBox({0, 0, 0}, {0.0, 1, 1}, 0.0));
  CHECK_THROWS(OrientedBox({0, 0, std::nan("")}, {1, 1, 1}, 0.0));
  const OrientedBox b({0, 0, 0}, {1, 1, 1}, -kHalfPi);
  CHECK(b.yaw() >= 0.0);
  CHECK(b.yaw() < kTwoPi);
  CHECK(b.yaw() == doctest::Approx(1.5 * kPi));
}
