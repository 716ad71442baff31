#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "qsr/oracle.hpp"
#include "qsr/relations.hpp"
#include "qsr/scene_io.hpp"

using namespace qsr;
using qsr::testing::Rng;
using qsr::testing::uniform;

namespace {

const RelationConfig kCfg{};

OrientedBox cube(Point3 c, double h = 0.5, double yaw = 0.0) { return OrientedBox(c, {h, h, h}, yaw); }

SceneObject object(std::string id, const OrientedBox& box) {
  SceneObject o;
  o.id = std::move(id);
  o.box = box;
  return o;
}

// Oracle verdict for a relation on two boxes, with a robot far to the west.
oracle::OracleAnswer ask(const OrientedBox& fig, const OrientedBox& ref, RelationName r,
                         Strictness st = Strictness::Relaxed) {
  EngineConfig cfg;
  return oracle::oracle_relation(object("f", fig), object("r", ref), {r, st},
                                 RobotPose({-6, 0.1, 0}, 0.0), cfg, 100000, 42);
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(kCfg.validate());
  RelationConfig bad;
  bad.closeness_T = 0.005;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.halfspace_scale_s = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.touch_eps = std::nan("");
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_SUITE("metric") {
  TEST_CASE("distance examples") {
    const SceneObject a = object("a", cube({0, 0, 0}));
    CHECK(object_distance(a, a) == 0.0);
    CHECK(object_distance(a, object("b", cube({3, 0, 0}))) == doctest::Approx(2.0));
  }

  TEST_CASE("distance against the sampled minimum") {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
      const auto [a, b] = qsr::testing::random_separated_pair(rng, 1.5);
      const double d = object_distance(a, b);
      const double s = oracle::sampled_distance(a, b, 100000, i);
      CHECK(d <= s + 1e-9);
      CHECK(s - d <= 1e-2);
    }
  }

  TEST_CASE("closeness boundary is inclusive") {
    const OrientedBox a = cube({0, 0, 0});
    CHECK(is_close(a, cube({1.4, 0, 0}), kCfg));
    CHECK(is_close(a, cube({1.5, 0, 0}), kCfg));
    CHECK_FALSE(is_close(a, cube({1.5 + 1e-6, 0, 0}), kCfg));
  }

  TEST_CASE("touching") {
    const OrientedBox a = cube({0, 0, 0});
    CHECK(touches(a, cube({1.0, 0, 0}), kCfg));
    CHECK(touches(a, cube({0.7, 0.2, 0.1}, 0.5, 0.4), kCfg));
    CHECK_FALSE(touches(a, cube({1.05, 0, 0}), kCfg));
    CHECK(touches(a, cube({1.009, 0, 0}), kCfg));
  }
}

TEST_SUITE("topology") {
  TEST_CASE("intersection examples") {
    const auto a = OrientedBox::from_bounds({0, 0, 0}, {2, 2, 2});
    const auto b = OrientedBox::from_bounds({1, 1, 1}, {3, 3, 3});
    CHECK(intersects(a, b));
    CHECK(intersection_region(a, b).volume() == doctest::Approx(1.0));
    CHECK_FALSE(intersects(a, OrientedBox::from_bounds({4, 4, 4}, {5, 5, 5})));
    // face contact alone carries no volume
    CHECK_FALSE(intersects(a, OrientedBox::from_bounds({2, 0, 0}, {3, 2, 2})));
  }

  TEST_CASE("rotated overlapping prisms match Monte Carlo") {
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
      const auto [a, b] = qsr::testing::random_overlapping_pair(rng, 0.2);
      const double v = intersection_region(a, b).volume();
      const double mc = oracle::monte_carlo_intersection_volume(a, b, 1000000, 100 + i);
      CHECK(std::abs(v - mc) <= 0.01 * mc);
    }
  }

  TEST_CASE("containment examples") {
    const OrientedBox big = cube({0, 0, 0}, 1.0);
    CHECK(completely_contains(big, cube({0.2, 0.1, 0}, 0.3, 0.7), kCfg));
    CHECK(completely_contains(big, big, kCfg));
    CHECK_FALSE(completely_contains(big, cube({1.0, 0, 0}, 1.0), kCfg));
    CHECK_FALSE(completely_contains(cube({0, 0, 0}, 0.3), big, kCfg));
  }

  TEST_CASE("containment agrees with the oracle on decisive cases") {
    Rng rng(3);
    int decisive = 0;
    for (int i = 0; i < 40; ++i) {
      const OrientedBox outer = qsr::testing::random_box(rng, 0.4, 1.0);
      const HalfExtents h = outer.half_extents();
      const OrientedBox inner(outer.center() + Point3{uniform(rng, -h.x, h.x) * 0.5, 0, 0},
                              {h.x * 0.4, h.y * 0.4, h.z * 0.4}, uniform(rng, -kPi, kPi));
      const oracle::OracleAnswer o = ask(inner, outer, RelationName::Inside);
      if (!o.decisive()) continue;
      ++decisive;
      CHECK(o.holds == completely_contains(outer, inner, kCfg));
    }
    CHECK(decisive > 20);
  }
}

TEST_SUITE("intrinsic cardinals") {
  const OrientedBox a = cube({0, 0, 0});
  const FrameOfReference fo = intrinsic_frame(a);

  TEST_CASE("cube 1.5 m east") {
    const OrientedBox b = cube({1.5, 0, 0});
    CHECK(directional_fo(b, a, fo, Cardinal::East, Strictness::Relaxed, kCfg));
    CHECK(directional_fo(b, a, fo, Cardinal::East, Strictness::Strict, kCfg));
    CHECK_FALSE(directional_fo(b, a, fo, Cardinal::West, Strictness::Relaxed, kCfg));
  }

  TEST_CASE("straddling the end of the east region") {
    // the east region spans x in [0.5, 2.5]; this cube spans [2.2, 3.2]
    const OrientedBox b = cube({2.7, 0, 0});
    CHECK(directional_fo(b, a, fo, Cardinal::East, Strictness::Relaxed, kCfg));
    CHECK_FALSE(directional_fo(b, a, fo, Cardinal::East, Strictness::Strict, kCfg));
    const oracle::OracleAnswer relaxed = ask(b, a, RelationName::East, Strictness::Relaxed);
    const oracle::OracleAnswer strict = ask(b, a, RelationName::East, Strictness::Strict);
    CHECK(relaxed.holds);
    CHECK(relaxed.decisive());
    CHECK_FALSE(strict.holds);
    CHECK(strict.decisive());
  }

  TEST_CASE("far west is not west-relaxed beyond the horizon, and not east") {
    const OrientedBox b = cube({-10, 0, 0});
    CHECK_FALSE(directional_fo(b, a, fo, Cardinal::East, Strictness::Relaxed, kCfg));
    CHECK_FALSE(directional_fo(b, a, fo, Cardinal::West, Strictness::Relaxed, kCfg));
    CHECK(directional_fo(cube({-1.5, 0, 0}), a, fo, Cardinal::West, Strictness::Relaxed, kCfg));
    CHECK(directional_fo(cube({0, 1.5, 0}), a, fo, Cardinal::North, Strictness::Strict, kCfg));
    CHECK(directional_fo(cube({0, -1.5, 0}), a, fo, Cardinal::South, Strictness::Strict, kCfg));
    CHECK(directional_fo(cube({0, 0, 1.5}), a, fo, Cardinal::Above, Strictness::Strict, kCfg));
  }

  TEST_CASE("strict implies relaxed") {
    Rng rng(4);
    for (int i = 0; i < 500; ++i) {
      const OrientedBox ref = qsr::testing::random_box(rng, 0.2, 1.0, 1.0);
      const OrientedBox fig = qsr::testing::random_box(rng, 0.05, 0.3, 3.0);
      const FrameOfReference f = intrinsic_frame(ref);
      for (Cardinal c : {Cardinal::East, Cardinal::West, Cardinal::North, Cardinal::South,
                         Cardinal::Above, Cardinal::Below})
        if (directional_fo(fig, ref, f, c, Strictness::Strict, kCfg))
          CHECK(directional_fo(fig, ref, f, c, Strictness::Relaxed, kCfg));
    }
  }
}

TEST_SUITE("viewpoint relations") {
  TEST_CASE("book centered on a desk") {
    const OrientedBox desk({0, 0, 0.375}, {0.6, 0.4, 0.375}, 0.0);
    const OrientedBox book({0, 0, 0.77}, {0.12, 0.09, 0.02}, 0.3);
    const ViewContext ctx = make_view_context(desk, RobotPose({-3, 0.5, 0}, 0.0), kCfg);
    CHECK(directional_fc(book, ctx, ViewRelation::Above));
    for (ViewRelation r : {ViewRelation::Behind, ViewRelation::InFrontOf, ViewRelation::LeftOf,
                           ViewRelation::RightOf, ViewRelation::Below})
      CHECK_FALSE(directional_fc(book, ctx, r));
  }

  TEST_CASE("extinguisher left of the radiator in the reconstructed scene") {
    const Scene scene = load_scene(QSR_FIXTURE_DIR "/wall_scene.scene.json");
    const SceneObject* fe2 = scene.find("fire_extinguisher2");
    const SceneObject* rad = scene.find("radiator");
    REQUIRE(fe2);
    REQUIRE(rad);
    const ViewFrames vf = view_frames(rad->box, scene.robot);
    CHECK(directional_fc(*fe2, *rad, vf.contextualised, ViewRelation::LeftOf, kCfg));
    CHECK_FALSE(directional_fc(*fe2, *rad, vf.contextualised, ViewRelation::RightOf, kCfg));
  }

  TEST_CASE("walking around the reference swaps the lateral answers") {
    Rng rng(5);
    int lateral_true = 0;
    for (int i = 0; i < 300; ++i) {
      const OrientedBox ref = qsr::testing::random_box(rng, 0.2, 0.8, 0.0);
      const OrientedBox fig = qsr::testing::random_box(rng, 0.05, 0.4, 2.0);
      const double phi = uniform(rng, -kPi, kPi), r = uniform(rng, 4.0, 8.0);
      const Point3 c = ref.center();
      const RobotPose p1({c.x + r * std::cos(phi), c.y + r * std::sin(phi), 0}, 0.0);
      const RobotPose p2({c.x - r * std::cos(phi), c.y - r * std::sin(phi), 0}, 1.0);
      const ViewContext a = make_view_context(ref, p1, kCfg), b = make_view_context(ref, p2, kCfg);
      auto ask_fc = [&](const ViewContext& ctx, ViewRelation t) { return directional_fc(fig, ctx, t); };
      CHECK(ask_fc(a, ViewRelation::LeftOf) == ask_fc(b, ViewRelation::RightOf));
      CHECK(ask_fc(a, ViewRelation::RightOf) == ask_fc(b, ViewRelation::LeftOf));
      CHECK(ask_fc(a, ViewRelation::InFrontOf) == ask_fc(b, ViewRelation::Behind));
      CHECK(ask_fc(a, ViewRelation::Above) == ask_fc(b, ViewRelation::Above));
      CHECK(ask_fc(a, ViewRelation::Below) == ask_fc(b, ViewRelation::Below));
      lateral_true += ask_fc(a, ViewRelation::LeftOf) ? 1 : 0;
    }
    CHECK(lateral_true > 10);
  }

  TEST_CASE("engine and oracle agree on decisive viewpoint relations") {
    Rng rng(6);
    for (int i = 0; i < 30; ++i) {
      const OrientedBox ref = qsr::testing::random_box(rng, 0.2, 0.8, 0.0);
      const OrientedBox fig = qsr::testing::random_box(rng, 0.05, 0.4, 1.5);
      const RobotPose pose = qsr::testing::random_pose(rng, 4.0, 8.0);
      for (RelationName r : {RelationName::LeftOf, RelationName::RightOf, RelationName::InFrontOf,
                             RelationName::Behind, RelationName::Above, RelationName::Below}) {
        EngineConfig cfg;
        const SceneObject f = object("f", fig), g = object("r", ref);
        const oracle::OracleAnswer o = oracle::oracle_relation(f, g, {r}, pose, cfg, 20000, i);
        const auto e = oracle::engine_relation(f, g, {r}, pose, cfg);
        REQUIRE(e.has_value());
        if (o.decisive()) CHECK(*e == o.holds);
      }
    }
  }
}
